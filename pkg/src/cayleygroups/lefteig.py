"""Left eigenvalues of 2x2 quaternionic matrices.

A quaternion sigma is a left eigenvalue of A when A v = sigma v for some
nonzero v, equivalently when A - sigma I is singular.  Singularity of the
complex image is the ground-truth oracle for everything in this module.

Reduction used throughout: for A = [[a, b], [c, d]] with b != 0, scaling the
eigenvector to (1, y) eliminates sigma from the system a + b y = sigma,
c + d y = sigma y and leaves the one-variable quadratic

    y^2 + b^{-1}(a - d) y - b^{-1} c = 0,        sigma = a + b y.

For b = 0 the left spectrum is exactly {a, d}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS_ZERO, Quaternion, RingTag, qinv, qmul
from .errors import DegenerateConfiguration, ShapeMismatch
from .matrix import DenseMatrix, complex_image


@dataclass(frozen=True)
class QuadraticProblem:
    """The quaternionic equation y^2 + B y + C = 0."""

    B: Quaternion
    C: Quaternion


@dataclass(frozen=True)
class QuadraticRoots:
    """Solution set of a quaternionic quadratic.

    Either a finite tuple of roots, or a sphere {center + radius * t} over
    imaginary units t (possible only when B and C are real with B^2 < 4C;
    center is then the real number -B/2).
    """

    roots: tuple[Quaternion, ...]
    sphere: tuple[float, float] | None = None  # (center, radius)

    @property
    def is_sphere(self) -> bool:
        return self.sphere is not None


@dataclass(frozen=True)
class LeftSpectrum:
    """Left spectrum of a 2x2 quaternionic matrix.

    kind is "finite" (roots set) or "sphere".  A sphere is the set
    {center + axis * t : t an imaginary unit}; when it matches the unit
    parametrization {q (cos_theta - sin_theta * t)} with |q| = 1 the fields
    q / cos_theta / sin_theta are populated as well (always the case for
    symplectic input).
    """

    kind: str
    roots: tuple[Quaternion, ...] = ()
    center: Quaternion | None = None
    axis: Quaternion | None = None
    q: Quaternion | None = None
    cos_theta: float | None = None
    sin_theta: float | None = None

    def sphere_point(self, t: Quaternion) -> Quaternion:
        """Element of the sphere for an imaginary unit t."""
        if self.kind != "sphere":
            raise ValueError("not a sphere spectrum")
        return self.center + qmul(self.axis, t)


def is_left_eigenvalue(A: DenseMatrix, sigma: Quaternion, eps: float = 1e-8) -> bool:
    """True iff A - sigma I is singular (smallest image singular value < eps)."""
    if A.ring is not RingTag.H:
        raise ShapeMismatch("left eigenvalues are computed over H")
    if not A.is_square:
        raise ShapeMismatch("square matrix required")
    return singularity_residual(A, sigma) < eps


def singularity_residual(A: DenseMatrix, sigma: Quaternion) -> float:
    """Smallest singular value of the image of A - sigma I."""
    shifted = A - DenseMatrix.scalar(RingTag.H, A.rows, sigma)
    return float(np.linalg.svd(complex_image(shifted), compute_uv=False)[-1])


# ---------------------------------------------------------------------------
# quadratic solver
# ---------------------------------------------------------------------------

def _left_mult_matrix(q: Quaternion) -> np.ndarray:
    a, b, c, d = q.w, q.x, q.y, q.z
    return np.array(
        [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
    )


def _right_mult_matrix(q: Quaternion) -> np.ndarray:
    a, b, c, d = q.w, q.x, q.y, q.z
    return np.array(
        [[a, -b, -c, -d], [b, a, d, -c], [c, -d, a, b], [d, c, -b, a]]
    )


def _residual(y: Quaternion, B: Quaternion, C: Quaternion) -> float:
    return (qmul(y, y) + qmul(B, y) + C).norm()


def _newton_polish(y: Quaternion, B: Quaternion, C: Quaternion,
                   iters: int = 6) -> Quaternion:
    # f(y) = y^2 + By + C; df(h) = (y + B) h + h y
    for _ in range(iters):
        f = qmul(y, y) + qmul(B, y) + C
        if f.norm() < 1e-14:
            break
        jac = _left_mult_matrix(y + B) + _right_mult_matrix(y)
        try:
            h = np.linalg.solve(jac, -f.as_array())
        except np.linalg.LinAlgError:
            break
        y = y + Quaternion.from_array(h)
    return y


def _sqrt_nonreal(w: Quaternion) -> Quaternion:
    # square root of a quaternion with nonzero imaginary part
    imag = Quaternion(0.0, w.x, w.y, w.z)
    a = np.sqrt((w.w + w.norm()) / 2.0)
    return Quaternion(a) + imag.scale(1.0 / (2.0 * a))


def quadratic_roots(p: QuadraticProblem, tol: float = 1e-9) -> QuadraticRoots:
    """All solutions of y^2 + B y + C = 0 over the quaternions.

    Real coefficient pairs follow the classical case split (two real roots,
    a double root, or a sphere of imaginary-direction roots).  Otherwise
    the real part of B is shifted away and the remaining system in
    (2 Re y, |y|^2) reduces to a real cubic; every candidate is polished by
    Newton iteration and kept only when its residual is below tol.
    """
    B, C = p.B, p.C
    if B.is_real() and C.is_real():
        b0, c0 = B.w, C.w
        disc = b0 * b0 - 4.0 * c0
        if disc >= 0:
            r = np.sqrt(disc)
            roots = [Quaternion((-b0 + r) / 2.0)]
            if r > EPS_ZERO:
                roots.append(Quaternion((-b0 - r) / 2.0))
            return QuadraticRoots(roots=tuple(roots))
        return QuadraticRoots(roots=(), sphere=(-b0 / 2.0, np.sqrt(-disc) / 2.0))

    # shift y = z - Re(B)/2 so the linear coefficient becomes pure imaginary
    b0 = B.w
    bp = Quaternion(0.0, B.x, B.y, B.z)
    cp = C + Quaternion(b0 * b0 / 4.0) - B.scale(b0 / 2.0)

    candidates: list[Quaternion] = []
    if bp.norm() <= EPS_ZERO:
        # z^2 = -cp with cp guaranteed non-real here
        r = _sqrt_nonreal(-cp)
        candidates.extend([r, -r])
    else:
        e = bp.norm() ** 2
        dot = bp.x * cp.x + bp.y * cp.y + bp.z * cp.z
        f = cp.x**2 + cp.y**2 + cp.z**2
        c0 = cp.w
        cubic = [1.0, 2.0 * e + 4.0 * c0, e * e + 4.0 * c0 * e - 4.0 * f,
                 -4.0 * dot * dot]
        for troot in np.roots(cubic):
            if abs(troot.imag) > 1e-8 * max(1.0, abs(troot)):
                continue
            big_t = troot.real
            if big_t <= 1e-14:
                continue
            for t in (np.sqrt(big_t), -np.sqrt(big_t)):
                s = c0 + (t**3 + t * e + 2.0 * dot) / (2.0 * t)
                if s < -1e-12:
                    continue
                z = qmul(qinv(Quaternion(t) + bp), Quaternion(s) - cp)
                candidates.append(z)
        if abs(dot) <= 1e-10:
            # t = 0 branch: (s - c0)^2 + f = s e, a real quadratic in s
            disc = (2.0 * c0 + e) ** 2 - 4.0 * (c0 * c0 + f)
            if disc >= 0:
                for s in ((2.0 * c0 + e + np.sqrt(disc)) / 2.0,
                          (2.0 * c0 + e - np.sqrt(disc)) / 2.0):
                    if s >= -1e-12:
                        candidates.append(qmul(qinv(bp), Quaternion(s) - cp))

    roots: list[Quaternion] = []
    for z in candidates:
        z = _newton_polish(z, bp, cp)
        if _residual(z, bp, cp) >= tol:
            continue
        y = z - Quaternion(b0 / 2.0)
        if not any(y.isclose(r, 1e-7) for r in roots):
            roots.append(y)
    return QuadraticRoots(roots=tuple(roots))


# ---------------------------------------------------------------------------
# 2x2 left spectra
# ---------------------------------------------------------------------------

def _unit_sphere_fit(center: Quaternion, axis: Quaternion,
                     tol: float = 1e-6) -> tuple | None:
    sin_t = axis.norm()
    if sin_t <= EPS_ZERO:
        return None
    q = axis.scale(-1.0 / sin_t)
    cos_t = (q.w * center.w + q.x * center.x + q.y * center.y
             + q.z * center.z)
    if (center - q.scale(cos_t)).norm() > tol:
        return None
    if abs(cos_t * cos_t + sin_t * sin_t - 1.0) > tol:
        return None
    return q, cos_t, sin_t


def left_eigenvalues_2x2(A: DenseMatrix) -> LeftSpectrum:
    """Left spectrum of a 2x2 quaternionic matrix.

    Symplectic matrices have one, two or a sphere of left eigenvalues; the
    sphere case is reported in the unit parametrization whenever it fits.
    """
    if A.ring is not RingTag.H or A.rows != 2 or A.cols != 2:
        raise ShapeMismatch("a 2x2 quaternionic matrix is required")
    a, b = A.entry(0, 0), A.entry(0, 1)
    c, d = A.entry(1, 0), A.entry(1, 1)
    if b.norm() <= EPS_ZERO:
        roots = [a]
        if not d.isclose(a, 1e-10):
            roots.append(d)
        return LeftSpectrum(kind="finite", roots=tuple(roots))

    binv = qinv(b)
    prob = QuadraticProblem(B=qmul(binv, a - d), C=-qmul(binv, c))
    sols = quadratic_roots(prob)
    if sols.is_sphere:
        m, r = sols.sphere
        center = a + b.scale(m)
        axis = b.scale(r)
        fit = _unit_sphere_fit(center, axis)
        if fit is not None:
            q, cos_t, sin_t = fit
            return LeftSpectrum(kind="sphere", center=center, axis=axis,
                                q=q, cos_theta=cos_t, sin_theta=sin_t)
        return LeftSpectrum(kind="sphere", center=center, axis=axis)

    sigmas: list[Quaternion] = []
    for y in sols.roots:
        s = a + qmul(b, y)
        if not any(s.isclose(t, 1e-7) for t in sigmas):
            sigmas.append(s)
    return LeftSpectrum(kind="finite", roots=tuple(sigmas))


def detect_infinite_family(A: DenseMatrix, tol: float = 1e-9):
    """Recognize the rotation family [[q cos, -q sin], [q sin, q cos]].

    Returns (q, theta) when A matches with sin(theta) != 0, else None; the
    reconstruction residual is required to stay below tol.
    """
    if A.ring is not RingTag.H or A.rows != 2 or A.cols != 2:
        raise ShapeMismatch("a 2x2 quaternionic matrix is required")
    a11, a12 = A.entry(0, 0), A.entry(0, 1)
    a21, a22 = A.entry(1, 0), A.entry(1, 1)
    if (a11 - a22).norm() > tol or (a12 + a21).norm() > tol:
        return None
    sin_t = a21.norm()
    if sin_t <= tol:
        return None
    q = a21.scale(1.0 / sin_t)
    cos_t = q.w * a11.w + q.x * a11.x + q.y * a11.y + q.z * a11.z
    recon = DenseMatrix.from_entries(
        RingTag.H,
        [[q.scale(cos_t), q.scale(-sin_t)], [q.scale(sin_t), q.scale(cos_t)]],
    )
    if (A - recon).norm() > max(tol, 1e-9):
        return None
    return q, float(np.arctan2(sin_t, cos_t))


# ---------------------------------------------------------------------------
# non-coverage witness
# ---------------------------------------------------------------------------

def rotation_family(q: Quaternion, theta: float) -> DenseMatrix:
    """The symplectic matrix [[q cos, -q sin], [q sin, q cos]]."""
    c, s = float(np.cos(theta)), float(np.sin(theta))
    return DenseMatrix.from_entries(
        RingTag.H, [[q.scale(c), q.scale(-s)], [q.scale(s), q.scale(c)]]
    )


def noncover_witness(
    sigmas: tuple[Quaternion, Quaternion, Quaternion, Quaternion]
) -> tuple[DenseMatrix, tuple[float, float, float, float]]:
    """A symplectic 2x2 matrix outside all four domains centered at sigma_k I.

    Finds a unit quaternion q with <q, sigma_k> equal for all k (null space
    of the 3x4 real system built from sigma_k - sigma_0), sets
    cos(theta) = -<q, sigma_0>, and returns the rotation-family matrix whose
    left-eigenvalue sphere then contains every -sigma_k.  The certificate
    holds the four singularity residuals of sigma_k I + A.

    Raises DegenerateConfiguration when no null-space direction leaves
    sin(theta) above 1e-6.
    """
    if len(sigmas) != 4:
        raise ShapeMismatch("exactly four unit quaternions required")
    s0 = sigmas[0]
    rows = np.stack([(s - s0).as_array() for s in sigmas[1:]])
    _, svals, vt = np.linalg.svd(rows)
    svals = np.concatenate([svals, np.zeros(4 - len(svals))])
    null = vt[svals <= 1e-10]
    if null.shape[0] == 0:
        raise DegenerateConfiguration("null space is empty")

    coeffs = null @ s0.as_array()
    if null.shape[0] >= 2 and np.linalg.norm(coeffs) > 1e-12:
        # direction orthogonal to sigma_0 inside the null space: cos = 0
        c = coeffs / np.linalg.norm(coeffs)
        basis = np.eye(null.shape[0]) - np.outer(c, c)
        u = basis[np.argmax(np.linalg.norm(basis, axis=1))]
        qvec = u @ null
    else:
        qvec = null[0]
    qvec = qvec / np.linalg.norm(qvec)
    q = Quaternion.from_array(qvec)

    cos_t = -float(qvec @ s0.as_array())
    sin_sq = 1.0 - cos_t * cos_t
    if sin_sq < 1e-12:
        raise DegenerateConfiguration("every null-space direction is radial")
    theta = float(np.arctan2(np.sqrt(sin_sq), cos_t))
    witness = rotation_family(q, theta)
    cert = tuple(singularity_residual(witness, -s) for s in sigmas)
    return witness, cert
