"""Explicit open coverings by Cayley domains and their Monte-Carlo checks.

Spaces: the unitary group U(n) covered by n+1 scalar centers, Sp(2) covered
by the four centers {I, -I, P, -P} with P = diag(-1, 1), the model
M' = {Y in U(2n) : Y^T = -J Y J} of U(2n)/Sp(n), and the symmetric unitary
model {Y in U(n) : Y^T = Y} of U(n)/O(n).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .algebra import RingTag
from .cayley import cayley, in_omega
from .errors import OutsideDomain, ShapeMismatch, SpaceMismatch, UnknownSpace
from .matrix import (
    EPS_INV,
    DenseMatrix,
    GroupElement,
    conjtranspose,
    haar_sample,
    matmul,
    orthogonality_residual,
    transpose,
)

SPACES = ("unitary", "sp2", "mprime", "symunitary")

#: Orthogonality/membership tolerance for samples fed to cover indices.
MEMBER_TOL = 1e-9


@dataclass(frozen=True)
class CoverSpec:
    """A declared covering: a space plus an ordered list of centers."""

    space: str
    n: int
    centers: tuple[GroupElement, ...]
    eps: float = EPS_INV


@dataclass
class CoverageReport:
    """Tally of cover indices over a batch of samples (first-hit indexing)."""

    space: str
    n: int
    samples: int
    covered: int
    per_center_counts: list[int]
    uncovered_witnesses: list[DenseMatrix] = field(default_factory=list)
    seed: int = 0


def roots_of_unity(count: int) -> list[complex]:
    return [cmath.exp(2j * cmath.pi * k / count) for k in range(count)]


def unitary_cover(n: int) -> CoverSpec:
    """The n+1 centers -z_k I, z_k the (n+1)-th roots of unity.

    A unitary matrix has at most n distinct eigenvalues, so at least one
    center leaves it inside the corresponding Cayley domain.
    """
    if n < 1:
        raise ShapeMismatch("n must be >= 1")
    centers = tuple(
        GroupElement(DenseMatrix.scalar(RingTag.C, n, -z), RingTag.C)
        for z in roots_of_unity(n + 1)
    )
    return CoverSpec(space="unitary", n=n, centers=centers)


def sp2_cover() -> CoverSpec:
    p = DenseMatrix.from_entries(RingTag.H, [[-1, 0], [0, 1]])
    mats = [
        DenseMatrix.identity(RingTag.H, 2),
        DenseMatrix.identity(RingTag.H, 2).scale(-1.0),
        p,
        p.scale(-1.0),
    ]
    centers = tuple(GroupElement(m, RingTag.H) for m in mats)
    return CoverSpec(space="sp2", n=2, centers=centers)


def scalar_cover(space: str, n: int) -> CoverSpec:
    """n+1 centers z_k I for the homogeneous-space models."""
    size = 2 * n if space == "mprime" else n
    centers = tuple(
        GroupElement(DenseMatrix.scalar(RingTag.C, size, z), RingTag.C)
        for z in roots_of_unity(n + 1)
    )
    return CoverSpec(space=space, n=n, centers=centers)


def make_cover(space: str, n: int) -> CoverSpec:
    if space == "unitary":
        return unitary_cover(n)
    if space == "sp2":
        return sp2_cover()
    if space in ("mprime", "symunitary"):
        return scalar_cover(space, n)
    raise UnknownSpace(space)


# ---------------------------------------------------------------------------
# membership predicates
# ---------------------------------------------------------------------------

def symplectic_form(n: int) -> DenseMatrix:
    """The 2n x 2n block matrix [[0, -I], [I, 0]] over C."""
    j = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return DenseMatrix(RingTag.C, j)


def mprime_membership(Y: DenseMatrix, n: int, tol: float = MEMBER_TOL) -> bool:
    """Y unitary 2n x 2n with Y^T = -J Y J."""
    if Y.ring is not RingTag.C or Y.data.shape != (2 * n, 2 * n):
        return False
    if orthogonality_residual(Y) > tol:
        return False
    j = symplectic_form(n)
    rel = transpose(Y) + matmul(matmul(j, Y), j)
    return rel.norm() <= tol


def mprime_residual(Y: DenseMatrix, n: int) -> float:
    j = symplectic_form(n)
    rel = transpose(Y) + matmul(matmul(j, Y), j)
    return max(orthogonality_residual(Y), rel.norm())


def symunitary_membership(Y: DenseMatrix, tol: float = MEMBER_TOL) -> bool:
    """Y unitary with Y^T = Y."""
    if Y.ring is not RingTag.C or not Y.is_square:
        return False
    if orthogonality_residual(Y) > tol:
        return False
    return (transpose(Y) - Y).norm() <= tol


def symunitary_residual(Y: DenseMatrix) -> float:
    return max(orthogonality_residual(Y), (transpose(Y) - Y).norm())


def _check_space_member(spec: CoverSpec, Y: DenseMatrix) -> None:
    if spec.space == "unitary":
        ok = (
            Y.ring is RingTag.C
            and Y.data.shape == (spec.n, spec.n)
            and orthogonality_residual(Y) <= MEMBER_TOL
        )
    elif spec.space == "sp2":
        ok = (
            Y.ring is RingTag.H
            and Y.rows == Y.cols == 2
            and orthogonality_residual(Y) <= MEMBER_TOL
        )
    elif spec.space == "mprime":
        ok = mprime_membership(Y, spec.n)
    elif spec.space == "symunitary":
        ok = symunitary_membership(Y)
    else:
        raise UnknownSpace(spec.space)
    if not ok:
        raise SpaceMismatch(f"sample does not belong to {spec.space}({spec.n})")


# ---------------------------------------------------------------------------
# cover indices
# ---------------------------------------------------------------------------

def cover_index(spec: CoverSpec, X) -> int | None:
    """Smallest center index whose Cayley domain contains X; None if none."""
    mat = X.mat if isinstance(X, GroupElement) else X
    _check_space_member(spec, mat)
    for k, center in enumerate(spec.centers):
        if in_omega(center, mat, spec.eps):
            return k
    return None


def sp2_cover_index(X) -> int | None:
    """Index into [I, -I, P, -P] for a 2x2 symplectic matrix."""
    return cover_index(sp2_cover(), X)


def mprime_cover_index(Y: DenseMatrix, n: int) -> int | None:
    """Smallest k with -z_k avoiding the (doubled) spectrum of Y."""
    return cover_index(scalar_cover("mprime", n), Y)


def mprime_contraction_check(
    Y: DenseMatrix, n: int, z: complex, steps: int
) -> float:
    """Max M'-membership residual along the Cayley contraction toward z I.

    Follows c_{conj(z) I}(t * c_{z I}(Y)) for `steps` values of t in [0, 1];
    the model is stable under the contraction, so the residual stays at
    roundoff level.
    """
    if not mprime_membership(Y, n):
        raise SpaceMismatch("Y is not in the model")
    return _contraction_residual(Y, z, steps, lambda m: mprime_residual(m, n))


def symunitary_contraction_check(
    Y: DenseMatrix, z: complex, steps: int
) -> float:
    """Same contraction stability check for the symmetric unitary model."""
    if not symunitary_membership(Y):
        raise SpaceMismatch("Y is not symmetric unitary")
    return _contraction_residual(Y, z, steps, symunitary_residual)


def _contraction_residual(Y, z, steps, residual_fn) -> float:
    size = Y.rows
    center = GroupElement(DenseMatrix.scalar(RingTag.C, size, z), RingTag.C)
    if not in_omega(center, Y):
        raise OutsideDomain("Y is outside the domain of the chosen center")
    c = cayley(center, Y)
    back = GroupElement(
        DenseMatrix.scalar(RingTag.C, size, complex(z).conjugate()), RingTag.C
    )
    worst = 0.0
    for t in np.linspace(0.0, 1.0, max(2, steps)):
        point = cayley(back, c.scale(float(t)))
        worst = max(worst, residual_fn(point))
    return worst


def transpose_transport_residual(z: complex, Y: DenseMatrix) -> float:
    """||c_{zI}(Y^T) - c_{zI}(Y)^T||; zero since scalar centers commute."""
    size = Y.rows
    center = GroupElement(DenseMatrix.scalar(RingTag.C, size, z), RingTag.C)
    return (cayley(center, transpose(Y)) - transpose(cayley(center, Y))).norm()


def j_transport_residual(z: complex, Y: DenseMatrix, n: int) -> float:
    """||c_{zI}(-J Y J) + J c_{zI}(Y) J||, the equivariance under J."""
    center = GroupElement(DenseMatrix.scalar(RingTag.C, 2 * n, z), RingTag.C)
    j = symplectic_form(n)
    lhs = cayley(center, -matmul(matmul(j, Y), j))
    rhs = matmul(matmul(j, cayley(center, Y)), j)
    return (lhs + rhs).norm()


# ---------------------------------------------------------------------------
# samplers and Monte-Carlo verification
# ---------------------------------------------------------------------------

def sample_space(space: str, n: int, seed) -> DenseMatrix:
    """One point of the space, deterministic in seed.

    Groups use Haar-like sampling; M' points are J (U J U^T) for Haar U;
    symmetric unitaries are U U^T for Haar U.
    """
    if space == "unitary":
        return haar_sample(RingTag.C, n, seed).mat
    if space == "sp2":
        return haar_sample(RingTag.H, 2, seed).mat
    if space == "mprime":
        u = haar_sample(RingTag.C, 2 * n, seed).mat
        j = symplectic_form(n)
        return matmul(j, matmul(matmul(u, j), transpose(u)))
    if space == "symunitary":
        u = haar_sample(RingTag.C, n, seed).mat
        return matmul(u, transpose(u))
    raise UnknownSpace(space)


def tally_cover(spec: CoverSpec, points, seed: int = 0) -> CoverageReport:
    """Assemble a CoverageReport from explicit sample points."""
    counts = [0] * len(spec.centers)
    covered = 0
    witnesses: list[DenseMatrix] = []
    total = 0
    for p in points:
        total += 1
        k = cover_index(spec, p)
        if k is None:
            if len(witnesses) < 16:
                witnesses.append(p if isinstance(p, DenseMatrix) else p.mat)
        else:
            counts[k] += 1
            covered += 1
    return CoverageReport(
        space=spec.space,
        n=spec.n,
        samples=total,
        covered=covered,
        per_center_counts=counts,
        uncovered_witnesses=witnesses,
        seed=seed,
    )


def verify_cover(spec: CoverSpec, samples: int, seed: int) -> CoverageReport:
    """Draw `samples` points of the space and tally their cover indices.

    Each sample's RNG stream is derived from (seed, index), so the report
    is identical regardless of evaluation order.
    """
    points = (sample_space(spec.space, spec.n, (seed, i)) for i in range(samples))
    return tally_cover(spec, points, seed=seed)
