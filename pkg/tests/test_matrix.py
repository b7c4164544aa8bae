import numpy as np
import pytest

from cayleygroups import (
    DenseMatrix,
    GroupElement,
    Quaternion,
    RingTag,
    complex_image,
    conjtranspose,
    from_complex_image,
    haar_sample,
    inverse,
    is_invertible,
    matexp,
    matmul,
    orthogonality_residual,
    trace_inner,
)
from cayleygroups.algebra import I, J, K
from cayleygroups.errors import (
    DegenerateSample,
    NotOrthogonal,
    RingMismatch,
    ShapeMismatch,
    Singular,
)
from conftest import RINGS, random_matrix


class TestMatmul:
    def test_identity(self, rng):
        for ring in RINGS:
            x = random_matrix(ring, 3, 3, rng)
            ident = DenseMatrix.identity(ring, 3)
            assert matmul(ident, x).isclose(x, 1e-14)

    def test_1x1_quaternionic(self):
        a = DenseMatrix.from_entries(RingTag.H, [[I]])
        b = DenseMatrix.from_entries(RingTag.H, [[J]])
        assert matmul(a, b).entry(0, 0).isclose(K)

    def test_image_homomorphism_oracle(self, rng):
        # quaternionic product must match the product of complex images
        for _ in range(20):
            a = random_matrix(RingTag.H, 3, 3, rng)
            b = random_matrix(RingTag.H, 3, 3, rng)
            lhs = complex_image(matmul(a, b))
            rhs = complex_image(a) @ complex_image(b)
            assert np.linalg.norm(lhs - rhs) < 1e-11 * max(1.0, np.linalg.norm(rhs))

    def test_shape_and_ring_errors(self, rng):
        a = random_matrix(RingTag.C, 2, 3, rng)
        with pytest.raises(ShapeMismatch):
            matmul(a, random_matrix(RingTag.C, 2, 2, rng))
        with pytest.raises(RingMismatch):
            matmul(a, random_matrix(RingTag.R, 3, 2, rng))


class TestConjTranspose:
    def test_identity(self):
        ident = DenseMatrix.identity(RingTag.H, 3)
        assert conjtranspose(ident).isclose(ident)

    def test_entrywise(self):
        a = DenseMatrix.from_entries(RingTag.H, [[I, J], [K, Quaternion(1)]])
        expect = DenseMatrix.from_entries(RingTag.H, [[-I, -K], [-J, Quaternion(1)]])
        assert conjtranspose(a).isclose(expect)

    def test_involution(self, rng):
        for ring in RINGS:
            a = random_matrix(ring, 3, 4, rng)
            assert conjtranspose(conjtranspose(a)).isclose(a)

    def test_antihomomorphism(self, rng):
        a = random_matrix(RingTag.H, 3, 3, rng)
        b = random_matrix(RingTag.H, 3, 3, rng)
        lhs = conjtranspose(matmul(a, b))
        rhs = matmul(conjtranspose(b), conjtranspose(a))
        assert lhs.isclose(rhs, 1e-11)


class TestInverse:
    def test_identity(self):
        ident = DenseMatrix.identity(RingTag.C, 3)
        assert inverse(ident).isclose(ident)

    def test_diagonal_units(self):
        a = DenseMatrix.from_entries(RingTag.H, [[I, Quaternion(0)], [Quaternion(0), J]])
        expect = DenseMatrix.from_entries(
            RingTag.H, [[-I, Quaternion(0)], [Quaternion(0), -J]]
        )
        assert inverse(a).isclose(expect, 1e-14)

    def test_roundtrip_residual(self, rng):
        for _ in range(10):
            a = random_matrix(RingTag.C, 3, 3, rng)
            ident = DenseMatrix.identity(RingTag.C, 3)
            assert (matmul(a, inverse(a)) - ident).norm() < 1e-10
            assert (matmul(inverse(a), a) - ident).norm() < 1e-10

    def test_quaternionic_roundtrip(self, rng):
        a = random_matrix(RingTag.H, 3, 3, rng)
        ident = DenseMatrix.identity(RingTag.H, 3)
        assert (matmul(a, inverse(a)) - ident).norm() < 1e-10

    def test_singular(self):
        with pytest.raises(Singular):
            inverse(DenseMatrix.zeros(RingTag.C, 2, 2))


class TestIsInvertible:
    def test_identity(self):
        assert is_invertible(DenseMatrix.identity(RingTag.R, 3))

    def test_zero(self):
        assert not is_invertible(DenseMatrix.zeros(RingTag.R, 3, 3))

    def test_tiny_singular_value(self):
        a = DenseMatrix(RingTag.R, np.diag([1.0, 1e-15]))
        assert not is_invertible(a, eps=1e-9)

    def test_smallest_singular_value_oracle(self):
        a = DenseMatrix(RingTag.R, np.diag([1.0, 1e-6]))
        s = np.linalg.svd(a.data, compute_uv=False)[-1]
        assert s == pytest.approx(1e-6)
        assert is_invertible(a, eps=1e-9)
        assert not is_invertible(a, eps=1e-3)


class TestTraceInner:
    def test_identity_pairs(self):
        for ring in RINGS:
            for n in (1, 2, 5):
                ident = DenseMatrix.identity(ring, n)
                assert trace_inner(ident, ident) == pytest.approx(n)

    def test_unit_imaginary(self):
        a = DenseMatrix.from_entries(RingTag.H, [[I]])
        assert trace_inner(a, a) == pytest.approx(1.0)

    def test_coordinate_expansion_oracle(self, rng):
        for ring in RINGS:
            a = random_matrix(ring, 3, 2, rng)
            b = random_matrix(ring, 3, 2, rng)
            assert trace_inner(a, b) == pytest.approx(
                float(a.real_coords() @ b.real_coords()), abs=1e-12
            )

    def test_adjoint_property(self, rng):
        for ring in RINGS:
            x = random_matrix(ring, 3, 3, rng)
            a = random_matrix(ring, 3, 3, rng)
            b = random_matrix(ring, 3, 3, rng)
            lhs = trace_inner(matmul(x, a), b)
            rhs = trace_inner(a, matmul(conjtranspose(x), b))
            assert lhs == pytest.approx(rhs, abs=1e-9)


class TestMatexp:
    def test_zero(self):
        for ring in RINGS:
            z = DenseMatrix.zeros(ring, 3, 3)
            assert matexp(z).isclose(DenseMatrix.identity(ring, 3), 1e-15)

    def test_scalar_exponential(self):
        a = DenseMatrix.scalar(RingTag.C, 2, 1j * np.pi)
        expect = DenseMatrix.scalar(RingTag.C, 2, -1.0)
        assert matexp(a).isclose(expect, 1e-12)

    def test_skew_gives_orthogonal(self, rng):
        from cayleygroups import tangent_project, group_identity

        for ring in RINGS:
            base = group_identity(ring, 3)
            s = tangent_project(base, random_matrix(ring, 3, 3, rng)).vec
            assert orthogonality_residual(matexp(s)) < 1e-10

    def test_exp_inverse(self, rng):
        a = random_matrix(RingTag.C, 4, 4, rng)
        a = a.scale(10.0 / a.norm())
        prod = matmul(matexp(a), matexp(a.scale(-1.0)))
        assert (prod - DenseMatrix.identity(RingTag.C, 4)).norm() < 1e-10


class TestHaarSample:
    def test_u1_unit_modulus(self):
        g = haar_sample(RingTag.C, 1, 3)
        assert abs(abs(g.mat.data[0, 0]) - 1.0) < 1e-12

    def test_sp2_orthogonality(self):
        g = haar_sample(RingTag.H, 2, 5)
        assert orthogonality_residual(g.mat) < 1e-10

    def test_determinism_bitwise(self):
        for ring in RINGS:
            a = haar_sample(ring, 3, 123)
            b = haar_sample(ring, 3, 123)
            assert np.array_equal(a.mat.data, b.mat.data)

    def test_distinct_seeds_differ(self):
        a = haar_sample(RingTag.C, 3, 1)
        b = haar_sample(RingTag.C, 3, 2)
        assert not a.mat.isclose(b.mat, 1e-3)

    def test_unit_singular_values(self):
        for ring in RINGS:
            g = haar_sample(ring, 4, 17)
            s = np.linalg.svd(complex_image(g.mat), compute_uv=False)
            assert np.max(np.abs(s - 1.0)) < 1e-8


class TestGroupElement:
    def test_certificate_rejects_non_orthogonal(self, rng):
        m = random_matrix(RingTag.C, 3, 3, rng)
        with pytest.raises(NotOrthogonal):
            GroupElement(m, RingTag.C, tol=1e-9)

    def test_ring_tag_must_match(self):
        with pytest.raises(RingMismatch):
            GroupElement(DenseMatrix.identity(RingTag.C, 2), RingTag.H)


class TestComplexImage:
    def test_roundtrip(self, rng):
        for ring in RINGS:
            a = random_matrix(ring, 3, 2, rng)
            assert from_complex_image(ring, complex_image(a)).isclose(a)

    def test_conjtranspose_commutes(self, rng):
        a = random_matrix(RingTag.H, 3, 2, rng)
        assert np.allclose(complex_image(conjtranspose(a)), complex_image(a).conj().T)
