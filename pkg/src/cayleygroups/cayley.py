"""Generalized Cayley transform centered at an orthogonal matrix.

For A with A A* = I the transform c_A(X) = (I - A* X)(A + X)^{-1} is defined
on the open set of X with A + X invertible, maps the group part of that set
diffeomorphically onto the tangent space at A*, and is inverted by c_{A*}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import RingTag
from .errors import NotSkew, OutsideDomain, ShapeMismatch
from .matrix import (
    EPS_INV,
    DenseMatrix,
    GroupElement,
    complex_image,
    conjtranspose,
    is_invertible,
    matmul,
    solve,
)


@dataclass(frozen=True)
class OmegaDomain:
    """Domain of the transform centered at A: matrices X with A + X invertible."""

    center: GroupElement
    eps: float = EPS_INV

    def contains(self, X: DenseMatrix) -> bool:
        return in_omega(self.center, X, self.eps)


@dataclass(frozen=True)
class TangentVector:
    """A matrix Y tangent to the group at A, i.e. A* Y + Y* A = 0."""

    base: GroupElement
    vec: DenseMatrix

    def __post_init__(self):
        if self.vec.data.shape != self.base.mat.data.shape:
            raise ShapeMismatch("tangent vector shape must match the base point")


def in_omega(A: GroupElement, X: DenseMatrix, eps: float = EPS_INV) -> bool:
    """True iff A + X is invertible."""
    if X.data.shape != A.mat.data.shape:
        raise ShapeMismatch("X must match the center's shape")
    return is_invertible(A.mat + X, eps)


def cayley(A: GroupElement, X: DenseMatrix, eps: float = EPS_INV) -> DenseMatrix:
    """c_A(X) = (I - A* X)(A + X)^{-1}, evaluated as a linear solve.

    Uses the equal right-factored form (A + X)^{-1}(I - X A*) so a single
    solve against A + X suffices.  Raises OutsideDomain off the domain.
    """
    if not in_omega(A, X, eps):
        raise OutsideDomain("A + X is singular")
    ident = DenseMatrix.identity(X.ring, X.rows)
    rhs = ident - matmul(X, conjtranspose(A.mat))
    return solve(A.mat + X, rhs)


def cayley_inverse_identity(A: GroupElement, X: DenseMatrix) -> tuple[float, float]:
    """Residuals of the two algebraic identities behind invertibility.

    Returns (||(A* + c)(A + X)/2 - I||, ||c - (A + X)^{-1}(I - X A*)||)
    where c = c_A(X); both are < 1e-10 on well-conditioned inputs.
    """
    c = cayley(A, X)
    astar = conjtranspose(A.mat)
    ident = DenseMatrix.identity(X.ring, X.rows)
    r1 = (matmul(astar + c, (A.mat + X).scale(0.5)) - ident).norm()
    right = solve(A.mat + X, ident - matmul(X, astar))
    r2 = (c - right).norm()
    return r1, r2


def prop2_identities(
    A: GroupElement, U: GroupElement, X: DenseMatrix
) -> tuple[float, float, float | None]:
    """Residuals of the three transport identities of the transform.

    1. c_{A*}(X*) = c_A(X)*
    2. c_{U A U*}(U X U*) = U c_A(X) U*
    3. c_{A*}(X^{-1}) = -A c_A(X) A          (None when X is singular)
    """
    c = cayley(A, X)
    astar_g = A.star()
    r1 = (cayley(astar_g, conjtranspose(X)) - conjtranspose(c)).norm()

    ustar = conjtranspose(U.mat)
    conj_center = GroupElement(
        matmul(matmul(U.mat, A.mat), ustar), A.group, max(A.tol, 1e-9)
    )
    lhs = cayley(conj_center, matmul(matmul(U.mat, X), ustar))
    rhs = matmul(matmul(U.mat, c), ustar)
    r2 = (lhs - rhs).norm()

    if not is_invertible(X):
        return r1, r2, None
    from .matrix import inverse  # local import to keep module deps one-way

    lhs3 = cayley(astar_g, inverse(X))
    rhs3 = -matmul(matmul(A.mat, c), A.mat)
    return r1, r2, (lhs3 - rhs3).norm()


def is_tangent(A: GroupElement, Y: DenseMatrix, tol: float = 1e-10) -> bool:
    """Membership in the tangent space at A: ||A* Y + Y* A||_F <= tol."""
    if Y.data.shape != A.mat.data.shape:
        raise ShapeMismatch("Y must match the base point's shape")
    res = matmul(conjtranspose(A.mat), Y) + matmul(conjtranspose(Y), A.mat)
    return res.norm() <= tol


def tangent_project(A: GroupElement, M: DenseMatrix) -> TangentVector:
    """Orthogonal projection Y = (M - A M* A)/2 onto the tangent space at A."""
    if M.data.shape != A.mat.data.shape:
        raise ShapeMismatch("M must match the base point's shape")
    y = (M - matmul(matmul(A.mat, conjtranspose(M)), A.mat)).scale(0.5)
    return TangentVector(A, y)


def contraction_path(A: GroupElement, X: GroupElement, t: float) -> DenseMatrix:
    """Canonical contraction c_{A*}(t * c_A(X)) of the group part of the domain.

    At t = 1 this returns X, at t = 0 it returns A; every intermediate point
    is again a group element because real multiples of tangent vectors stay
    inside the domain of c_{A*}.
    """
    c = cayley(A, X.mat)
    return cayley(A.star(), c.scale(float(t)))


def tangent_curve(A: GroupElement, U: DenseMatrix, t: float) -> DenseMatrix:
    """Curve through A with velocity U at t = 0, traced inside the group.

    Uses c_{A*}(t Y) with Y = -(1/2) A* U A*, whose derivative at zero is U.
    U must be tangent at A for the curve to stay on the group.
    """
    astar = conjtranspose(A.mat)
    y = matmul(matmul(astar, U), astar).scale(-0.5)
    return cayley(A.star(), y.scale(float(t)))


def skew_real_spectrum_check(Y: DenseMatrix, tol: float = 1e-9) -> bool:
    """True iff the skew-hermitian Y has no nonzero real spectrum.

    Checks every eigenvalue of the complex image for |Re| < tol.  Raises
    NotSkew when Y + Y* does not vanish.
    """
    if not Y.is_square:
        raise ShapeMismatch("square matrix required")
    if (Y + conjtranspose(Y)).norm() > 1e-9 * max(1.0, Y.norm()):
        raise NotSkew("Y + Y* does not vanish")
    eig = np.linalg.eigvals(complex_image(Y))
    return bool(np.all(np.abs(eig.real) < tol))
