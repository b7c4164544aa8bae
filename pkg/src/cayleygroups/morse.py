"""Trace height functions h_X(A) = Re Tr(X A) on the orthogonal groups.

Contains the gradient/Hessian formulas, the Bott-Morse classification of the
critical set by the spectrum of X X*, the closed-form gradient flow obtained
by transporting the problem to a tangent space with a Cayley transform, a
reference RK4 integrator, and the linear chart of the critical set around a
critical point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._accel import rk4_height_flow
from .algebra import RingTag
from .cayley import cayley, in_omega, is_tangent
from .errors import (
    NotCritical,
    NotInModelSpace,
    NotTangent,
    OutsideDomain,
    ShapeMismatch,
)
from .matrix import (
    DenseMatrix,
    GroupElement,
    complex_image,
    conjtranspose,
    from_complex_image,
    matexp,
    matmul,
    orthogonality_residual,
    trace_inner,
)

#: Default Frobenius threshold on the gradient for criticality.
EPS_CRIT = 1e-8


@dataclass(frozen=True)
class HeightFunction:
    """h_X(A) = Re Tr(X A) for a fixed defining matrix X."""

    X: DenseMatrix

    def __post_init__(self):
        if not self.X.is_square:
            raise ShapeMismatch("defining matrix must be square")

    @property
    def ring(self) -> RingTag:
        return self.X.ring

    @property
    def n(self) -> int:
        return self.X.rows


@dataclass(frozen=True)
class CriticalStructure:
    """Spectral decomposition of X X* driving the critical-set structure.

    n0 is the kernel dimension of X; levels lists (t_i, n_i) with the
    distinct nonzero singular values t_i of X in increasing order and their
    multiplicities.  predicted_total_dim is the real dimension of the
    largest component of the critical set.
    """

    n0: int
    levels: tuple[tuple[float, int], ...]
    predicted_total_dim: int


@dataclass
class FlowCurve:
    """Sampled integral curve of the gradient flow of a height function.

    center/beta0 are set for curves produced in closed form (center is the
    critical point whose Cayley chart linearizes the flow, beta0 the initial
    tangent value); the RK4 integrator leaves them None.  max_group_residual
    records the worst orthogonality drift over the samples.
    """

    samples: list[tuple[float, DenseMatrix]]
    center: GroupElement | None = None
    beta0: DenseMatrix | None = None
    max_group_residual: float = field(default=0.0)


def height(h: HeightFunction, A: GroupElement) -> float:
    """Re Tr(X A)."""
    if A.mat.data.shape != h.X.data.shape:
        raise ShapeMismatch("group element does not match the height function")
    x, a = h.X.data, A.mat.data
    if h.ring is RingTag.R:
        return float(np.sum(x * a.T))
    if h.ring is RingTag.C:
        return float(np.sum(x * a.T).real)
    # Re(p q) = pw*qw - px*qx - py*qy - pz*qz, entries paired (i,k)/(k,i)
    at = np.transpose(a, (1, 0, 2))
    signs = np.array([1.0, -1.0, -1.0, -1.0])
    return float(np.sum(x * at * signs))


def gradient(h: HeightFunction, A: GroupElement) -> DenseMatrix:
    """(1/2)(X* - A X A); tangent to the group at A."""
    if A.mat.data.shape != h.X.data.shape:
        raise ShapeMismatch("group element does not match the height function")
    return (conjtranspose(h.X) - matmul(matmul(A.mat, h.X), A.mat)).scale(0.5)


def is_critical(h: HeightFunction, A: GroupElement, tol: float = EPS_CRIT) -> bool:
    return gradient(h, A).norm() <= tol


def hessian_form(h: HeightFunction, A: GroupElement, U: DenseMatrix,
                 tol: float = EPS_CRIT) -> DenseMatrix:
    """Hessian image -(1/2)(A X U + U X A) at a critical point A.

    Requires A critical and U tangent at A; the induced quadratic form
    <U, H(V)> is then symmetric.
    """
    if not is_critical(h, A, tol):
        raise NotCritical("Hessian is only defined at critical points")
    if not is_tangent(A, U, 1e-8 * max(1.0, U.norm())):
        raise NotTangent("U is not tangent at A")
    axu = matmul(matmul(A.mat, h.X), U)
    uxa = matmul(matmul(U, h.X), A.mat)
    return (axu + uxa).scale(-0.5)


# ---------------------------------------------------------------------------
# critical-set classification
# ---------------------------------------------------------------------------

def group_dim(ring: RingTag, n: int) -> int:
    """Real dimension of O(n), U(n) or Sp(n)."""
    d = ring.real_dim
    return n * (n - 1) // 2 * d + n * (d - 1)


def _max_grassmannian_dim(ring: RingTag, m: int) -> int:
    # components of {A : A^2 = I} in O(m, K) are Grassmannians of dim d*p*q
    d = ring.real_dim
    return d * (m // 2) * ((m + 1) // 2)


def classify_critical_set(h: HeightFunction) -> CriticalStructure:
    """Cluster the singular values of X and predict the critical-set size.

    The eigenvalues of the positive semidefinite X X* are computed through
    the complex image (quaternionic multiplicities are halved), clustered
    with relative tolerance 1e-8, and reported as (t_i = sqrt(eigenvalue),
    multiplicity).  The predicted dimension adds dim O(n0, K) for the kernel
    block and the largest Grassmannian component for each level.
    """
    img = complex_image(h.X)
    eig = np.linalg.eigvalsh(img @ img.conj().T)
    t = np.sqrt(np.clip(eig, 0.0, None))
    t.sort()
    tol = 1e-8 * max(1.0, float(t[-1]))
    clusters: list[list[float]] = []
    for v in t:
        if clusters and v - clusters[-1][-1] <= tol:
            clusters[-1].append(float(v))
        else:
            clusters.append([float(v)])
    n0 = 0
    levels: list[tuple[float, int]] = []
    for c in clusters:
        mean = float(np.mean(c))
        mult = len(c)
        if h.ring is RingTag.H:
            mult //= 2
        if mean <= tol:
            n0 += mult
        else:
            levels.append((mean, mult))
    dim = group_dim(h.ring, n0)
    for _, m in levels:
        dim += _max_grassmannian_dim(h.ring, m)
    return CriticalStructure(n0=n0, levels=tuple(levels), predicted_total_dim=dim)


def is_morse(h: HeightFunction) -> bool:
    """True iff X X* is invertible with all singular values simple."""
    cs = classify_critical_set(h)
    return cs.n0 == 0 and all(m == 1 for _, m in cs.levels)


# ---------------------------------------------------------------------------
# gradient flow
# ---------------------------------------------------------------------------

def flow_closed_form(
    h: HeightFunction,
    A: GroupElement,
    alpha0: GroupElement,
    times: list[float] | np.ndarray,
    tol: float = EPS_CRIT,
) -> FlowCurve:
    """Exact solution of a' = (1/2)(X* - a X a) through alpha0.

    With A critical, beta0 = c_A(alpha0) evolves linearly in the tangent
    chart at A*: beta(t) = exp(-XAt/2) beta0 exp(-AXt/2), and the flow is
    alpha(t) = c_{A*}(beta(t)).
    """
    if not is_critical(h, A, tol):
        raise NotCritical("closed form requires a critical center")
    if not in_omega(A, alpha0.mat):
        raise OutsideDomain("alpha0 is outside the chart of the center")
    beta0 = cayley(A, alpha0.mat)
    xa = matmul(h.X, A.mat)
    ax = matmul(A.mat, h.X)
    astar = A.star()
    samples: list[tuple[float, DenseMatrix]] = []
    worst = 0.0
    for t in times:
        left = matexp(xa.scale(-0.5 * float(t)))
        right = matexp(ax.scale(-0.5 * float(t)))
        beta = matmul(matmul(left, beta0), right)
        alpha = cayley(astar, beta)
        worst = max(worst, orthogonality_residual(alpha))
        samples.append((float(t), alpha))
    return FlowCurve(samples=samples, center=A, beta0=beta0,
                     max_group_residual=worst)


def flow_rk4(
    h: HeightFunction, alpha0: GroupElement, t_end: float, dt: float
) -> FlowCurve:
    """Classical RK4 integration of the gradient flow, one sample per step.

    No re-orthonormalization is applied; drift off the group is reported in
    max_group_residual so the curve can be compared honestly against the
    closed form.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    n_steps = int(round(t_end / dt))
    x = complex_image(h.X)
    xstar = x.conj().T.copy()
    traj = rk4_height_flow(x, xstar, complex_image(alpha0.mat), float(dt), n_steps)
    samples: list[tuple[float, DenseMatrix]] = []
    worst = 0.0
    for k in range(n_steps + 1):
        m = from_complex_image(h.ring, traj[k])
        worst = max(worst, orthogonality_residual(m))
        samples.append((k * dt, m))
    return FlowCurve(samples=samples, max_group_residual=worst)


# ---------------------------------------------------------------------------
# linear model of the critical set
# ---------------------------------------------------------------------------

def _model_constraints(h: HeightFunction, A: GroupElement,
                       beta: DenseMatrix) -> tuple[DenseMatrix, DenseMatrix]:
    # tangency at A*:  A beta + beta* A* = 0
    # stationarity:    X A beta + beta A X = 0
    c1 = matmul(A.mat, beta) + matmul(conjtranspose(beta), conjtranspose(A.mat))
    c2 = matmul(matmul(h.X, A.mat), beta) + matmul(matmul(beta, A.mat), h.X)
    return c1, c2


def critical_model_space(
    h: HeightFunction, A: GroupElement, tol: float = EPS_CRIT
) -> tuple[int, list[DenseMatrix]]:
    """Null space of the linear chart constraints at a critical point A.

    The constraints (tangency at A* and X A b + b A X = 0) are assembled as
    one real linear map on the real coordinates of an n x n matrix; its null
    space is extracted by SVD with threshold 1e-9.  Returns the dimension
    and an orthonormal basis.
    """
    if not is_critical(h, A, tol):
        raise NotCritical("model space is attached to critical points")
    ring, n = h.ring, h.n
    dim_real = ring.real_dim * n * n
    cols = []
    for k in range(dim_real):
        v = np.zeros(dim_real)
        v[k] = 1.0
        basis_mat = DenseMatrix.from_real_coords(ring, n, n, v)
        c1, c2 = _model_constraints(h, A, basis_mat)
        cols.append(np.concatenate([c1.real_coords(), c2.real_coords()]))
    system = np.stack(cols, axis=1)
    _, s, vt = np.linalg.svd(system)
    rank = int(np.sum(s > 1e-9 * max(1.0, s[0] if s.size else 1.0)))
    null = vt[rank:]
    basis = [DenseMatrix.from_real_coords(ring, n, n, row) for row in null]
    return len(basis), basis


def model_chart_check(
    h: HeightFunction, A: GroupElement, beta0: DenseMatrix,
    membership_tol: float = 1e-9, crit_tol: float = 1e-7
) -> bool:
    """True iff the chart image c_{A*}(beta0) of a model vector is critical."""
    c1, c2 = _model_constraints(h, A, beta0)
    scale = max(1.0, beta0.norm())
    if c1.norm() > membership_tol * scale or c2.norm() > membership_tol * scale:
        raise NotInModelSpace("beta0 violates the chart constraints")
    image = cayley(A.star(), beta0)
    g = GroupElement(image, h.ring, tol=1e-8)
    return is_critical(h, g, crit_tol)
