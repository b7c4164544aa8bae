"""Cayley transforms, trace height functions and categorical coverings on
the orthogonal groups over R, C and H."""

__version__ = "0.1.0"

from .algebra import EPS_ZERO, Quaternion, RingTag, qinv, qmul, study_embed
from .cayley import (
    OmegaDomain,
    TangentVector,
    cayley,
    cayley_inverse_identity,
    contraction_path,
    in_omega,
    is_tangent,
    prop2_identities,
    skew_real_spectrum_check,
    tangent_curve,
    tangent_project,
)
from .covering import (
    CoverSpec,
    CoverageReport,
    cover_index,
    make_cover,
    mprime_contraction_check,
    mprime_cover_index,
    mprime_membership,
    sample_space,
    sp2_cover,
    sp2_cover_index,
    symunitary_contraction_check,
    symunitary_membership,
    unitary_cover,
    verify_cover,
)
from .lefteig import (
    LeftSpectrum,
    QuadraticProblem,
    QuadraticRoots,
    detect_infinite_family,
    is_left_eigenvalue,
    left_eigenvalues_2x2,
    noncover_witness,
    quadratic_roots,
    rotation_family,
)
from .matrix import (
    DenseMatrix,
    GroupElement,
    complex_image,
    conjtranspose,
    from_complex_image,
    group_identity,
    haar_sample,
    inverse,
    is_invertible,
    matexp,
    matmul,
    orthogonality_residual,
    trace_inner,
    transpose,
)
from .morse import (
    CriticalStructure,
    FlowCurve,
    HeightFunction,
    classify_critical_set,
    critical_model_space,
    flow_closed_form,
    flow_rk4,
    gradient,
    group_dim,
    height,
    hessian_form,
    is_critical,
    is_morse,
    model_chart_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
