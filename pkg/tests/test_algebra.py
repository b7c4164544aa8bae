import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleygroups import Quaternion, qinv, qmul, study_embed
from cayleygroups.algebra import I, J, K, ONE
from cayleygroups.errors import ZeroDivisor

finite_reals = st.floats(min_value=-10, max_value=10, allow_nan=False)
quaternions = st.builds(Quaternion, finite_reals, finite_reals, finite_reals, finite_reals)


def table_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Independent product oracle: expand over the basis multiplication table."""
    # rows/cols indexed by (1, i, j, k); entries (sign, target index)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    av, bv = a.as_array(), b.as_array()
    out = np.zeros(4)
    for p in range(4):
        for q in range(4):
            sign, idx = table[(p, q)]
            out[idx] += sign * av[p] * bv[q]
    return Quaternion.from_array(out)


class TestQmul:
    def test_defining_relation(self):
        assert qmul(I, J).isclose(K)

    def test_anticommutation(self):
        assert qmul(J, I).isclose(-K)

    def test_bilinear_expansion(self):
        # (1+i)(1+j) expanded by hand: 1 + j + i + ij = 1 + i + j + k
        got = qmul(Quaternion(1, 1, 0, 0), Quaternion(1, 0, 1, 0))
        assert got.isclose(Quaternion(1, 1, 1, 1))
        assert table_mul(Quaternion(1, 1, 0, 0), Quaternion(1, 0, 1, 0)).isclose(got)

    @given(quaternions, quaternions)
    @settings(max_examples=200)
    def test_matches_table_oracle(self, a, b):
        assert qmul(a, b).isclose(table_mul(a, b), 1e-9)

    @given(quaternions, quaternions)
    @settings(max_examples=200)
    def test_norm_multiplicative(self, a, b):
        assert qmul(a, b).norm() == pytest.approx(a.norm() * b.norm(), abs=1e-8)

    @given(quaternions, quaternions, quaternions)
    @settings(max_examples=200)
    def test_associative(self, a, b, c):
        lhs = qmul(qmul(a, b), c)
        rhs = qmul(a, qmul(b, c))
        assert lhs.isclose(rhs, 1e-7 * max(1.0, lhs.norm()))


class TestQinv:
    def test_unit_imaginary(self):
        assert qinv(I).isclose(-I)

    def test_real_scalar(self):
        assert qinv(Quaternion(2)).isclose(Quaternion(0.5))

    def test_conj_over_norm_formula(self):
        a = Quaternion(0.5, 0.5, 0.5, 0.5)
        inv = qinv(a)
        assert inv.isclose(Quaternion(0.5, -0.5, -0.5, -0.5))
        assert qmul(a, inv).isclose(ONE, 1e-14)
        assert qmul(inv, a).isclose(ONE, 1e-14)

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisor):
            qinv(Quaternion(0, 1e-13, 0, 0))

    def test_involution_on_random_samples(self, rng):
        for _ in range(100):
            a = Quaternion.from_array(rng.standard_normal(4))
            assert qinv(qinv(a)).isclose(a, 1e-12 * max(1.0, a.norm()))


class TestStudyEmbed:
    def test_identity(self):
        assert np.allclose(study_embed(ONE), np.eye(2))

    def test_j(self):
        assert np.allclose(study_embed(J), np.array([[0, -1], [1, 0]]))

    def test_homomorphism_on_k(self):
        got = study_embed(I) @ study_embed(J)
        assert np.allclose(got, study_embed(K))

    @given(quaternions, quaternions)
    @settings(max_examples=200)
    def test_homomorphism(self, a, b):
        lhs = study_embed(qmul(a, b))
        rhs = study_embed(a) @ study_embed(b)
        assert np.allclose(lhs, rhs, atol=1e-8)

    def test_conj_maps_to_conjugate_transpose(self, rng):
        for _ in range(50):
            a = Quaternion.from_array(rng.standard_normal(4))
            assert np.allclose(study_embed(a.conj()), study_embed(a).conj().T)

    def test_unit_determinant(self, rng):
        for _ in range(50):
            a = Quaternion.from_array(rng.standard_normal(4))
            a = a.scale(1.0 / a.norm())
            det = np.linalg.det(study_embed(a))
            assert abs(det) == pytest.approx(1.0, abs=1e-12)
            assert det.imag == pytest.approx(0.0, abs=1e-12)
            assert det.real == pytest.approx(a.norm() ** 2, abs=1e-12)
