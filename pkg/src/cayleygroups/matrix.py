"""Dense matrices over R, C and H and the linear algebra the rest of the
package is built on.

Storage: real matrices are float64 arrays of shape (n, m), complex ones are
complex128 of shape (n, m), quaternionic ones are float64 of shape
(n, m, 4) with components ordered (w, x, y, z).

Every quaternionic invertibility / spectral question is routed through the
complex adjoint image: entrywise a = alpha + j*beta maps the n x m matrix
A = A1 + j*A2 to the 2n x 2m complex block matrix
[[A1, -conj(A2)], [A2, conj(A1)]], which is a homomorphism for products and
conjugate transposes.  This gives one well-conditioned oracle for all three
rings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS_ZERO, Quaternion, RingTag
from .errors import (
    DegenerateSample,
    NotOrthogonal,
    RingMismatch,
    ShapeMismatch,
    Singular,
)

#: Relative threshold on the smallest singular value for invertibility.
EPS_INV = 1e-9

#: Orthogonality certificate tolerance used by haar_sample.
HAAR_TOL = 1e-10


# ---------------------------------------------------------------------------
# quaternion component arrays (..., 4)
# ---------------------------------------------------------------------------

def quat_mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product broadcast over (..., 4) component arrays."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def quat_conj_arrays(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1:] *= -1.0
    return out


def _quat_pair(data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split (n, m, 4) components into the complex pair (A1, A2), A = A1 + j A2."""
    a1 = data[..., 0] + 1j * data[..., 1]
    a2 = data[..., 2] - 1j * data[..., 3]
    return a1, a2


def _from_quat_pair(a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    out = np.empty(a1.shape + (4,), dtype=np.float64)
    out[..., 0] = a1.real
    out[..., 1] = a1.imag
    out[..., 2] = a2.real
    out[..., 3] = -a2.imag
    return out


# ---------------------------------------------------------------------------
# DenseMatrix
# ---------------------------------------------------------------------------

class DenseMatrix:
    """An n x m matrix over a tagged ring."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: RingTag, data: np.ndarray):
        data = np.asarray(data)
        if ring is RingTag.R:
            data = data.astype(np.float64, copy=False)
            if data.ndim != 2:
                raise ShapeMismatch("real matrix data must be 2-d")
        elif ring is RingTag.C:
            data = data.astype(np.complex128, copy=False)
            if data.ndim != 2:
                raise ShapeMismatch("complex matrix data must be 2-d")
        else:
            data = data.astype(np.float64, copy=False)
            if data.ndim != 3 or data.shape[-1] != 4:
                raise ShapeMismatch("quaternion matrix data must have shape (n, m, 4)")
        self.ring = ring
        self.data = data

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, ring: RingTag, rows: int, cols: int) -> "DenseMatrix":
        if ring is RingTag.R:
            return cls(ring, np.zeros((rows, cols)))
        if ring is RingTag.C:
            return cls(ring, np.zeros((rows, cols), dtype=np.complex128))
        return cls(ring, np.zeros((rows, cols, 4)))

    @classmethod
    def identity(cls, ring: RingTag, n: int) -> "DenseMatrix":
        m = cls.zeros(ring, n, n)
        if ring is RingTag.H:
            m.data[np.arange(n), np.arange(n), 0] = 1.0
        else:
            m.data[np.arange(n), np.arange(n)] = 1.0
        return m

    @classmethod
    def scalar(cls, ring: RingTag, n: int, value) -> "DenseMatrix":
        """value * I with value a real, complex or Quaternion scalar."""
        m = cls.zeros(ring, n, n)
        idx = np.arange(n)
        if ring is RingTag.R:
            m.data[idx, idx] = float(value)
        elif ring is RingTag.C:
            m.data[idx, idx] = complex(value)
        else:
            q = value if isinstance(value, Quaternion) else Quaternion(float(value))
            m.data[idx, idx, :] = q.as_array()
        return m

    @classmethod
    def from_entries(cls, ring: RingTag, rows) -> "DenseMatrix":
        """Build from nested lists of scalars (Quaternion entries for ring H)."""
        if ring is RingTag.H:
            arr = np.array(
                [[e.as_array() if isinstance(e, Quaternion) else
                  Quaternion(float(e)).as_array() for e in row] for row in rows]
            )
            return cls(ring, arr)
        dtype = np.float64 if ring is RingTag.R else np.complex128
        return cls(ring, np.array(rows, dtype=dtype))

    # -- basic structure ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def copy(self) -> "DenseMatrix":
        return DenseMatrix(self.ring, self.data.copy())

    def entry(self, i: int, j: int):
        if self.ring is RingTag.H:
            return Quaternion.from_array(self.data[i, j])
        v = self.data[i, j]
        return float(v) if self.ring is RingTag.R else complex(v)

    def set_entry(self, i: int, j: int, value) -> None:
        if self.ring is RingTag.H:
            q = value if isinstance(value, Quaternion) else Quaternion(float(value))
            self.data[i, j, :] = q.as_array()
        elif self.ring is RingTag.C:
            self.data[i, j] = complex(value)
        else:
            self.data[i, j] = float(value)

    def real_coords(self) -> np.ndarray:
        """Flatten into real coordinates (row-major, components last for H)."""
        if self.ring is RingTag.C:
            return np.concatenate([self.data.real.ravel(), self.data.imag.ravel()])
        return self.data.ravel().copy()

    @classmethod
    def from_real_coords(cls, ring: RingTag, rows: int, cols: int,
                         v: np.ndarray) -> "DenseMatrix":
        if ring is RingTag.R:
            return cls(ring, v.reshape(rows, cols))
        if ring is RingTag.C:
            half = rows * cols
            return cls(ring, (v[:half] + 1j * v[half:]).reshape(rows, cols))
        return cls(ring, v.reshape(rows, cols, 4))

    def norm(self) -> float:
        """Frobenius norm sqrt(sum of squared real coordinates)."""
        return float(np.linalg.norm(self.data))

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "DenseMatrix") -> None:
        if self.ring is not other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.data.shape != other.data.shape:
            raise ShapeMismatch(f"{self.data.shape[:2]} vs {other.data.shape[:2]}")

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same(other)
        return DenseMatrix(self.ring, self.data + other.data)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check_same(other)
        return DenseMatrix(self.ring, self.data - other.data)

    def __neg__(self) -> "DenseMatrix":
        return DenseMatrix(self.ring, -self.data)

    def scale(self, t: float) -> "DenseMatrix":
        """Multiply by a real scalar (the only silent scalar action)."""
        return DenseMatrix(self.ring, float(t) * self.data)

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return matmul(self, other)

    def coerce(self, ring: RingTag) -> "DenseMatrix":
        """Explicit coercion up the chain R < C < H."""
        if ring is self.ring:
            return self.copy()
        if not ring.contains(self.ring):
            raise RingMismatch(f"cannot coerce {self.ring} down to {ring}")
        if self.ring is RingTag.R and ring is RingTag.C:
            return DenseMatrix(ring, self.data.astype(np.complex128))
        if ring is RingTag.H:
            c = self.data if self.ring is RingTag.C else self.data.astype(np.complex128)
            out = np.zeros(c.shape + (4,))
            out[..., 0] = c.real
            out[..., 1] = c.imag
            return DenseMatrix(ring, out)
        raise RingMismatch(f"unsupported coercion {self.ring} -> {ring}")

    def isclose(self, other: "DenseMatrix", tol: float = 1e-12) -> bool:
        self._check_same(other)
        return bool(np.linalg.norm(self.data - other.data) <= tol)

    def __repr__(self) -> str:
        return f"DenseMatrix({self.ring.value}, {self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# complex image
# ---------------------------------------------------------------------------

def complex_image(A: DenseMatrix) -> np.ndarray:
    """Complex matrix carrying the spectral data of A.

    R and C matrices map to themselves; a quaternionic n x m matrix maps to
    its 2n x 2m adjoint image.  Products, sums, real scalings and conjugate
    transposes commute with the map, and the singular values of the image of
    a quaternionic matrix are those of the matrix, each doubled.
    """
    if A.ring is RingTag.R:
        return A.data.astype(np.complex128)
    if A.ring is RingTag.C:
        return A.data.copy()
    a1, a2 = _quat_pair(A.data)
    top = np.concatenate([a1, -a2.conj()], axis=1)
    bot = np.concatenate([a2, a1.conj()], axis=1)
    return np.concatenate([top, bot], axis=0)


def from_complex_image(ring: RingTag, img: np.ndarray) -> DenseMatrix:
    """Inverse of complex_image on matrices with the image block structure."""
    if ring is RingTag.R:
        return DenseMatrix(ring, img.real)
    if ring is RingTag.C:
        return DenseMatrix(ring, img)
    n2, m2 = img.shape
    n, m = n2 // 2, m2 // 2
    a1 = img[:n, :m]
    a2 = img[n:, :m]
    return DenseMatrix(ring, _from_quat_pair(a1, a2))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def matmul(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    """Matrix product; entry order a_ik * b_kj (matters over H)."""
    if A.ring is not B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.cols != B.rows:
        raise ShapeMismatch(f"{A.rows}x{A.cols} @ {B.rows}x{B.cols}")
    if A.ring is RingTag.H:
        a1, a2 = _quat_pair(A.data)
        b1, b2 = _quat_pair(B.data)
        c1 = a1 @ b1 - a2.conj() @ b2
        c2 = a1.conj() @ b2 + a2 @ b1
        return DenseMatrix(A.ring, _from_quat_pair(c1, c2))
    return DenseMatrix(A.ring, A.data @ B.data)


def conjtranspose(A: DenseMatrix) -> DenseMatrix:
    """A* with (A*)_ij = conj(A_ji)."""
    if A.ring is RingTag.R:
        return DenseMatrix(A.ring, A.data.T.copy())
    if A.ring is RingTag.C:
        return DenseMatrix(A.ring, A.data.conj().T.copy())
    out = np.transpose(A.data, (1, 0, 2)).copy()
    out[..., 1:] *= -1.0
    return DenseMatrix(A.ring, out)


def transpose(A: DenseMatrix) -> DenseMatrix:
    """Plain transpose, no conjugation."""
    if A.ring is RingTag.H:
        return DenseMatrix(A.ring, np.transpose(A.data, (1, 0, 2)).copy())
    return DenseMatrix(A.ring, A.data.T.copy())


def frobenius(A: DenseMatrix) -> float:
    return A.norm()


def smallest_singular_value(A: DenseMatrix) -> float:
    img = complex_image(A)
    return float(np.linalg.svd(img, compute_uv=False)[-1])


def is_invertible(A: DenseMatrix, eps: float = EPS_INV) -> bool:
    """True iff the smallest singular value of the complex image exceeds
    eps * ||A||_F.  Group elements have unit singular values, so the
    singular locus of the Cayley domains is well separated at the default.
    """
    if not A.is_square:
        raise ShapeMismatch("invertibility requires a square matrix")
    return smallest_singular_value(A) > eps * A.norm()


def _refined_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b with one extended-precision refinement step.

    Keeps the forward error near machine precision even when a is
    moderately ill conditioned (Cayley transforms close to the boundary of
    their domain).
    """
    x = np.linalg.solve(a, b)
    al = a.astype(np.clongdouble)
    bl = b.astype(np.clongdouble)
    r = bl - al @ x.astype(np.clongdouble)
    x = x + np.linalg.solve(a, r.astype(np.complex128))
    return x


def solve(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    """X with A @ X = B, via the complex image.  Raises Singular."""
    if A.ring is not B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if not A.is_square or A.rows != B.rows:
        raise ShapeMismatch("solve needs square A and matching right-hand side")
    if not is_invertible(A):
        raise Singular("coefficient matrix is numerically singular")
    x = _refined_solve(complex_image(A), complex_image(B))
    return from_complex_image(A.ring, x)


def inverse(A: DenseMatrix) -> DenseMatrix:
    """A^{-1}; quaternionic matrices are inverted through the complex image."""
    if not A.is_square:
        raise ShapeMismatch("inverse requires a square matrix")
    if not is_invertible(A):
        raise Singular("matrix is numerically singular")
    return solve(A, DenseMatrix.identity(A.ring, A.rows))


def trace_inner(A: DenseMatrix, B: DenseMatrix) -> float:
    """Euclidean pairing Re Tr(A* B) = dot product of real coordinates."""
    if A.ring is not B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.data.shape != B.data.shape:
        raise ShapeMismatch(f"{A.data.shape[:2]} vs {B.data.shape[:2]}")
    if A.ring is RingTag.C:
        return float(np.sum(A.data.conj() * B.data).real)
    return float(np.sum(A.data * B.data))


def real_trace(A: DenseMatrix) -> float:
    """Re Tr(A) for a square matrix."""
    if not A.is_square:
        raise ShapeMismatch("trace requires a square matrix")
    if A.ring is RingTag.H:
        return float(np.trace(A.data[..., 0]))
    return float(np.trace(A.data).real)


def matexp(A: DenseMatrix) -> DenseMatrix:
    """Matrix exponential by scaling and squaring with a truncated series.

    Terms are added until their norm falls below 1e-16; quaternionic input
    goes through the complex image.
    """
    if not A.is_square:
        raise ShapeMismatch("matexp requires a square matrix")
    m = complex_image(A)
    nrm = np.linalg.norm(m)
    nsq = max(0, int(np.ceil(np.log2(nrm / 0.5))) if nrm > 0.5 else 0)
    s = m / (2.0**nsq)
    n = m.shape[0]
    out = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    k = 1
    while True:
        term = term @ s / k
        out = out + term
        if np.linalg.norm(term) < 1e-16:
            break
        k += 1
        if k > 200:  # unreachable after scaling; defensive
            break
    for _ in range(nsq):
        out = out @ out
    return from_complex_image(A.ring, out)


# ---------------------------------------------------------------------------
# GroupElement and Haar-like sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """A square matrix certified orthogonal: ||A A* - I||_F <= tol."""

    mat: DenseMatrix
    group: RingTag
    tol: float = HAAR_TOL

    def __post_init__(self):
        if not self.mat.is_square:
            raise ShapeMismatch("group elements are square")
        if self.mat.ring is not self.group:
            raise RingMismatch("group tag must match the matrix ring")
        res = orthogonality_residual(self.mat)
        if res > self.tol:
            raise NotOrthogonal(f"residual {res:.3e} exceeds tol {self.tol:.3e}")

    @property
    def n(self) -> int:
        return self.mat.rows

    def star(self) -> "GroupElement":
        return GroupElement(conjtranspose(self.mat), self.group, self.tol)


def orthogonality_residual(A: DenseMatrix) -> float:
    ident = DenseMatrix.identity(A.ring, A.rows)
    return (matmul(A, conjtranspose(A)) - ident).norm()


def group_identity(ring: RingTag, n: int) -> GroupElement:
    return GroupElement(DenseMatrix.identity(ring, n), ring)


def _mgs_complex(z: np.ndarray) -> np.ndarray | None:
    """Modified Gram-Schmidt on columns; None when a column degenerates."""
    n = z.shape[0]
    q = z.astype(np.complex128)
    for k in range(n):
        v = q[:, k]
        for j in range(k):
            v = v - q[:, j] * (q[:, j].conj() @ v)
        nv = np.linalg.norm(v)
        if nv < 1e-8:
            return None
        q[:, k] = v / nv
    return q


def _mgs_quat(z: np.ndarray) -> np.ndarray | None:
    """Right-linear MGS on quaternionic columns of shape (n, n, 4).

    Projection coefficients multiply on the right: v <- v - u * <u, v>,
    then v <- v / ||v|| (real norm, side irrelevant).
    """
    n = z.shape[0]
    q = z.copy()
    for k in range(n):
        v = q[:, k, :]
        for j in range(k):
            u = q[:, j, :]
            coef = quat_mul_arrays(quat_conj_arrays(u), v).sum(axis=0)
            v = v - quat_mul_arrays(u, np.broadcast_to(coef, u.shape))
        nv = np.linalg.norm(v)
        if nv < 1e-8:
            return None
        q[:, k, :] = v / nv
    return q


def haar_sample(ring: RingTag, n: int, seed) -> GroupElement:
    """Random element of O(n), U(n) or Sp(n), deterministic in seed.

    Gaussian real coordinates orthonormalized by modified Gram-Schmidt on
    columns (right-linear over H).  Full-support but not exactly Haar for
    R/C: no phase correction of the triangular factor is applied, which is
    enough for coverage experiments.
    """
    if n < 1:
        raise ShapeMismatch("n must be >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(8):
        if ring is RingTag.R:
            q = _mgs_complex(rng.standard_normal((n, n)))
            if q is not None:
                return GroupElement(DenseMatrix(ring, q.real), ring, HAAR_TOL)
        elif ring is RingTag.C:
            g = rng.standard_normal((n, n, 2))
            q = _mgs_complex(g[..., 0] + 1j * g[..., 1])
            if q is not None:
                return GroupElement(DenseMatrix(ring, q), ring, HAAR_TOL)
        else:
            q = _mgs_quat(rng.standard_normal((n, n, 4)))
            if q is not None:
                return GroupElement(DenseMatrix(ring, q), ring, HAAR_TOL)
    raise DegenerateSample("Gram-Schmidt degenerated 8 times in a row")
