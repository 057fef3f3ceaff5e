"""Constrained quadratic-form minimization via pseudoinverse constructions.

Minimizes ``<x, T x>`` subject to ``A x = b`` for Hermitian positive
definite or semidefinite ``T`` (the singular case restricted to the
orthogonal complement of the kernel), with SVD-based pseudoinverse
primitives, operator diagnostics, independent verification oracles and
finite sections of sequence-space operators.
"""

from .config import DEFAULT_TOL, ToleranceConfig
from .dense_core import (
    EigResult,
    SvdResult,
    adjoint,
    as_matrix,
    as_vector,
    eigh,
    matmul,
    svd,
)
from .errors import (
    Diagnostic,
    DimensionMismatchError,
    FactorizationError,
    IllConditioningWarning,
    InfeasibleError,
    InfeasibleOnComplementError,
    NarrowAngleWarning,
    NotEpError,
    NotHermitianError,
    NotPositiveDefiniteError,
    NotPositiveError,
    NotPsdError,
    NotSingularError,
    OracleError,
    PositivityError,
    ProblemFileError,
    QfminError,
    QfminWarning,
)
from .l2_models import (
    EXAMPLE1_LIMIT,
    DiagonalSpec,
    TruncationSeries,
    diag_operator,
    example1_convergence,
    example1_solution,
    harmonic_b,
    left_shift,
)
from .minimizers import (
    Method,
    MinimizationResult,
    QpProblem,
    SpectrumClass,
    classify_spectrum,
    feasible,
    min_norm_ls,
    minimize_posdef,
    minimize_posdef_diag,
    minimize_psd_complement,
    quad_value,
    solve,
    try_cor1_shortcut,
)
from .oracle import (
    OracleResult,
    grid_refute,
    kkt_solve,
    random_pd_problem,
    random_psd_problem,
    reduced_solve,
)
from .pinv_ops import (
    EpDecomposition,
    RankDecision,
    ReverseOrderReport,
    SubspaceBasis,
    ep_decompose,
    is_ep,
    lat_invariant,
    null_basis,
    pinv,
    pinv_with_rank,
    principal_angle_diag,
    projector_range,
    projector_rangestar,
    range_basis,
    rangestar_basis,
    rank_decide,
    reverse_order_holds,
    sqrt_psd,
)
from .problem_io import emit_json, load_problem_arrays, resolve_tolerances

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "ToleranceConfig",
    "EigResult",
    "SvdResult",
    "adjoint",
    "as_matrix",
    "as_vector",
    "eigh",
    "matmul",
    "svd",
    "Diagnostic",
    "DimensionMismatchError",
    "FactorizationError",
    "IllConditioningWarning",
    "InfeasibleError",
    "InfeasibleOnComplementError",
    "NarrowAngleWarning",
    "NotEpError",
    "NotHermitianError",
    "NotPositiveDefiniteError",
    "NotPositiveError",
    "NotPsdError",
    "NotSingularError",
    "OracleError",
    "PositivityError",
    "ProblemFileError",
    "QfminError",
    "QfminWarning",
    "EXAMPLE1_LIMIT",
    "DiagonalSpec",
    "TruncationSeries",
    "diag_operator",
    "example1_convergence",
    "example1_solution",
    "harmonic_b",
    "left_shift",
    "Method",
    "MinimizationResult",
    "QpProblem",
    "SpectrumClass",
    "classify_spectrum",
    "feasible",
    "min_norm_ls",
    "minimize_posdef",
    "minimize_posdef_diag",
    "minimize_psd_complement",
    "quad_value",
    "solve",
    "try_cor1_shortcut",
    "OracleResult",
    "grid_refute",
    "kkt_solve",
    "random_pd_problem",
    "random_psd_problem",
    "reduced_solve",
    "EpDecomposition",
    "RankDecision",
    "ReverseOrderReport",
    "SubspaceBasis",
    "ep_decompose",
    "is_ep",
    "lat_invariant",
    "null_basis",
    "pinv",
    "pinv_with_rank",
    "principal_angle_diag",
    "projector_range",
    "projector_rangestar",
    "range_basis",
    "rangestar_basis",
    "rank_decide",
    "reverse_order_holds",
    "sqrt_psd",
    "emit_json",
    "load_problem_arrays",
    "resolve_tolerances",
]
