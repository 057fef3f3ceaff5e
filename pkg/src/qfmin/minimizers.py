"""Constrained minimizers for quadratic forms ``<x, T x>`` under ``A x = b``.

Three square-root pseudoinverse constructions cover the strictly positive
definite case (an eigenbasis route and a matrix-square-root route), a
Lat-invariance shortcut that collapses the solution to ``pinv(A) b``, and a
positive semidefinite route that minimizes over the orthogonal complement
of the kernel of T.  A minimum-norm least-squares solver handles the
unconstrained-relaxation baseline.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .dense_core import EigResult, as_matrix, as_vector, eigh
from .errors import (
    Diagnostic,
    DimensionMismatchError,
    InfeasibleError,
    InfeasibleOnComplementError,
    NotHermitianError,
    NotPositiveDefiniteError,
    NotPositiveError,
    NotPsdError,
    NotSingularError,
)
from .pinv_ops import (
    ep_decompose,
    pinv,
    pinv_with_rank,
    projector_rangestar,
    range_basis,
    rangestar_basis,
    rank_decide,
    lat_invariant,
    sqrt_psd,
)


class Method(enum.Enum):
    """Solver routes; AUTO is accepted by `solve` only."""

    AUTO = "auto"
    POSDEF_DIAG = "posdef-diag"
    POSDEF = "posdef"
    COR1_SHORTCUT = "cor1-shortcut"
    PSD_COMPLEMENT = "psd-complement"
    MIN_NORM_LS = "min-norm-ls"


class SpectrumClass(enum.Enum):
    POSITIVE_DEFINITE = "positive-definite"
    PSD_SINGULAR = "psd-singular"
    INDEFINITE = "indefinite"


@dataclass(frozen=True, eq=False)
class QpProblem:
    """A quadratic form `t`, constraint matrix `a` and right-hand side `b`.

    `t` must be Hermitian within ``htol``; `a` may be rectangular.
    """

    t: np.ndarray
    a: np.ndarray
    b: np.ndarray
    tol: ToleranceConfig = DEFAULT_TOL

    def __post_init__(self):
        t = as_matrix(self.t)
        a = as_matrix(self.a)
        b = as_vector(self.b)
        if t.shape[0] != t.shape[1]:
            raise DimensionMismatchError(f"t must be square, got {t.shape}")
        if a.shape[1] != t.shape[0]:
            raise DimensionMismatchError(
                f"a has {a.shape[1]} columns but t acts on dimension {t.shape[0]}"
            )
        if b.shape[0] != a.shape[0]:
            raise DimensionMismatchError(
                f"b has length {b.shape[0]} but a has {a.shape[0]} rows"
            )
        norm = np.linalg.norm(t)
        herm = np.linalg.norm(t - t.conj().T)
        if herm > self.tol.htol * max(norm, 1e-300):
            raise NotHermitianError(
                f"t deviates from its adjoint by {herm:.3e} (norm {norm:.3e})"
            )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.t.shape[0]


@dataclass(frozen=True, eq=False)
class MinimizationResult:
    """Minimizer, attained value and bookkeeping for one solve."""

    xhat: np.ndarray
    min_value: float
    feasibility_residual: float
    method: Method
    diagnostics: tuple[Diagnostic, ...] = field(default_factory=tuple)

    def with_extra_diagnostics(self, extra) -> "MinimizationResult":
        return replace(self, diagnostics=self.diagnostics + tuple(extra))


def quad_value(t, x) -> float:
    """Real quadratic-form value ``<x, t x>`` (Hermitian t)."""
    tm = as_matrix(t)
    xv = as_vector(x)
    return float(np.real(np.vdot(xv, tm @ xv)))


def min_norm_ls(a, b, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Minimum-norm least-squares solution ``pinv(a) @ b``.

    Solves the normal equations ``a* a u = a* b`` even when ``a x = b`` is
    inconsistent, and returns the unique solution of smallest norm.
    """
    arr = as_matrix(a)
    vec = as_vector(b)
    if vec.shape[0] != arr.shape[0]:
        raise DimensionMismatchError("b length must match the rows of a")
    return pinv(arr, cfg) @ vec


def feasible(a, b, tol: float | None = None, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether `b` lies in the range of `a` (so ``a x = b`` is consistent)."""
    arr = as_matrix(a)
    vec = as_vector(b)
    if tol is None:
        tol = cfg.feas_tol
    residual = np.linalg.norm(arr @ min_norm_ls(arr, vec, cfg) - vec)
    return bool(residual <= tol * max(1.0, np.linalg.norm(vec)))


def classify_spectrum(eigenvalues, cfg: ToleranceConfig = DEFAULT_TOL) -> SpectrumClass:
    """Gate a Hermitian spectrum into definite / singular PSD / indefinite.

    Eigenvalues below ``-neg_tol * scale`` mean indefinite; values in
    ``(-neg_tol * scale, pd_tol]`` count as zero and mark the singular case.
    """
    w = np.asarray(eigenvalues, dtype=np.float64)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    if w.size and float(w.min()) < -cfg.neg_tol * scale:
        return SpectrumClass.INDEFINITE
    pd_gate = cfg.pd_tol if cfg.pd_tol is not None else cfg.effective_rtol(w.size) * max(
        float(w.max()) if w.size else 0.0, 0.0
    )
    if w.size and float(w.min()) > pd_gate:
        return SpectrumClass.POSITIVE_DEFINITE
    return SpectrumClass.PSD_SINGULAR


def _invertible_constraint(a, cfg: ToleranceConfig) -> bool:
    if a.shape[0] != a.shape[1]:
        return False
    sigma = np.linalg.svd(a, compute_uv=False)
    return rank_decide(sigma, cfg, dim=a.shape[0]).rank == a.shape[0]


def _rank_note(decision) -> Diagnostic:
    return Diagnostic(
        code="reduced_rank",
        message="numerical rank of the rescaled constraint matrix",
        value=float(decision.rank),
    )


def _trivial_constraint_result(p: QpProblem, method: Method) -> MinimizationResult:
    xhat = np.linalg.solve(p.a, p.b)
    note = Diagnostic(
        code="trivial_constraint",
        message="constraint matrix is invertible; x is the unique solution of a x = b",
    )
    return MinimizationResult(
        xhat=xhat,
        min_value=quad_value(p.t, xhat),
        feasibility_residual=float(np.linalg.norm(p.a @ xhat - p.b)),
        method=method,
        diagnostics=(note,),
    )


def _require_pd(eig: EigResult, cfg: ToleranceConfig) -> None:
    cls = classify_spectrum(eig.eigenvalues, cfg)
    if cls is not SpectrumClass.POSITIVE_DEFINITE:
        raise NotPositiveDefiniteError(
            f"spectrum classified as {cls.value}; the definite routes need "
            "strictly positive eigenvalues"
        )


def minimize_posdef_diag(p: QpProblem) -> MinimizationResult:
    """Eigenbasis route for positive definite `t`.

    Diagonalizes ``t = q Λ q*``, rescales by ``Λ^{-1/2}`` and reads the
    minimizer off the minimum-norm solution of the rescaled constraint:
    ``x = q Λ^{-1/2} pinv(a q Λ^{-1/2}) b``, attaining ``||pinv(.) b||^2``.
    """
    cfg = p.tol
    eig = eigh(p.t, cfg)
    _require_pd(eig, cfg)
    if _invertible_constraint(p.a, cfg):
        return _trivial_constraint_result(p, Method.POSDEF_DIAG)
    if not feasible(p.a, p.b, cfg=cfg):
        raise InfeasibleError("b is not in the range of a; the constraint set is empty")
    inv_root = eig.q / np.sqrt(eig.eigenvalues)
    reduced, decision = pinv_with_rank(p.a @ inv_root, cfg)
    y = reduced @ p.b
    xhat = inv_root @ y
    return MinimizationResult(
        xhat=xhat,
        min_value=float(np.real(np.vdot(y, y))),
        feasibility_residual=float(np.linalg.norm(p.a @ xhat - p.b)),
        method=Method.POSDEF_DIAG,
        diagnostics=(_rank_note(decision),),
    )


def minimize_posdef(p: QpProblem) -> MinimizationResult:
    """Square-root route for positive definite `t`.

    With ``r = sqrt_psd(t)`` (invertible here), the minimizer is
    ``r^{-1} pinv(a r^{-1}) b`` and the minimum is ``||pinv(a r^{-1}) b||^2``.
    """
    cfg = p.tol
    eig = eigh(p.t, cfg)
    _require_pd(eig, cfg)
    if _invertible_constraint(p.a, cfg):
        return _trivial_constraint_result(p, Method.POSDEF)
    if not feasible(p.a, p.b, cfg=cfg):
        raise InfeasibleError("b is not in the range of a; the constraint set is empty")
    root = sqrt_psd(p.t, cfg)
    root_inv = np.linalg.inv(root)
    reduced, decision = pinv_with_rank(p.a @ root_inv, cfg)
    y = reduced @ p.b
    xhat = root_inv @ y
    return MinimizationResult(
        xhat=xhat,
        min_value=float(np.real(np.vdot(y, y))),
        feasibility_residual=float(np.linalg.norm(p.a @ xhat - p.b)),
        method=Method.POSDEF,
        diagnostics=(_rank_note(decision),),
    )


def try_cor1_shortcut(p: QpProblem) -> MinimizationResult | None:
    """Shortcut when the ranges of `a` and of its adjoint are invariant under `t`.

    Applies only to square constraints (range invariance is not well-typed
    for rectangular `a`).  Row-space invariance is what actually licenses
    collapsing ``inv(R) pinv(a inv(R))`` to ``pinv(a)``: it makes
    ``R pinv(a) a inv(R)`` Hermitian, which is the only reverse-order
    Penrose identity that can fail here.  Column-space invariance alone is
    not sufficient (t = diag(1, 2), a = [[1, 1], [0, 0]] has an invariant
    column space yet ``pinv(a) b`` is not the minimizer), so the gate
    checks both.  When it fires the minimizer is exactly ``pinv(a) b`` and
    the minimum ``||sqrt_psd(t) pinv(a) b||^2``; returns None when either
    invariance condition fails.
    """
    cfg = p.tol
    eig = eigh(p.t, cfg)
    _require_pd(eig, cfg)
    if p.a.shape[0] != p.a.shape[1]:
        return None
    if not lat_invariant(range_basis(p.a, cfg), p.t, cfg=cfg):
        return None
    if not lat_invariant(rangestar_basis(p.a, cfg), p.t, cfg=cfg):
        return None
    if not feasible(p.a, p.b, cfg=cfg):
        raise InfeasibleError("b is not in the range of a; the constraint set is empty")
    xhat = min_norm_ls(p.a, p.b, cfg)
    scaled = sqrt_psd(p.t, cfg) @ xhat
    return MinimizationResult(
        xhat=xhat,
        min_value=float(np.real(np.vdot(scaled, scaled))),
        feasibility_residual=float(np.linalg.norm(p.a @ xhat - p.b)),
        method=Method.COR1_SHORTCUT,
        diagnostics=(
            Diagnostic(
                code="cor1_shortcut",
                message=(
                    "column and row spaces of a are invariant under t; "
                    "minimizer is pinv(a) b"
                ),
            ),
        ),
    )


def minimize_psd_complement(p: QpProblem) -> MinimizationResult:
    """Kernel-complement route for singular positive semidefinite `t`.

    Minimizes over ``x`` in the column space of `t` only.  Splits `t` into
    its invertible core, embeds the inverse square root of the core back
    into ambient coordinates and solves the rescaled constraint by
    minimum-norm least squares.
    """
    cfg = p.tol
    eig = eigh(p.t, cfg)
    cls = classify_spectrum(eig.eigenvalues, cfg)
    if cls is SpectrumClass.INDEFINITE:
        raise NotPsdError("t has negative eigenvalues beyond tolerance")
    if cls is SpectrumClass.POSITIVE_DEFINITE:
        raise NotSingularError(
            "t is invertible; use the positive definite routes instead"
        )
    decomp = ep_decompose(p.t, cfg)
    p_range = decomp.u1[:, : decomp.rank] @ decomp.u1[:, : decomp.rank].conj().T
    if not feasible(p.a @ p_range, p.b, cfg=cfg):
        raise InfeasibleOnComplementError(
            "no point of the kernel complement satisfies a x = b"
        )
    root = sqrt_psd(decomp.a1, cfg)
    n = p.dim
    embedded = np.zeros((n, n), dtype=np.result_type(root.dtype, p.t.dtype))
    embedded[: decomp.rank, : decomp.rank] = np.linalg.inv(root)
    lift = decomp.u1 @ embedded
    reduced, decision = pinv_with_rank(p.a @ lift, cfg)
    y = reduced @ p.b
    xhat = lift @ y
    diagnostics = [_rank_note(decision)]
    diagnostics.extend(_complement_conditioning(p, p_range, cfg))
    return MinimizationResult(
        xhat=xhat,
        min_value=float(np.real(np.vdot(y, y))),
        feasibility_residual=float(np.linalg.norm(p.a @ xhat - p.b)),
        method=Method.PSD_COMPLEMENT,
        diagnostics=tuple(diagnostics),
    )


def _complement_conditioning(p: QpProblem, p_range, cfg) -> list[Diagnostic]:
    """Conditioning of the row-space/range projector product.

    The kept singular values of ``P_{a*} P_t`` are the cosines of the
    principal angles between the row space of `a` and the column space of
    `t`; tiny kept values signal a nearly-degenerate reduction.
    """
    product = projector_rangestar(p.a, cfg) @ p_range
    sigma = np.linalg.svd(product, compute_uv=False)
    decision = rank_decide(sigma, cfg, dim=product.shape[0])
    notes = []
    smax = float(sigma[0]) if sigma.size else 0.0
    if decision.rank and smax > 0 and decision.sigma_kept_min / smax < cfg.warn_ratio:
        notes.append(
            Diagnostic(
                code="psd_product_conditioning",
                message=(
                    "projector product of the constraint row space and the "
                    "kernel complement is nearly rank deficient"
                ),
                value=decision.sigma_kept_min / smax,
            )
        )
    return notes


def solve(p: QpProblem, method: Method = Method.AUTO) -> MinimizationResult:
    """Dispatch on the spectrum of `t` (or on an explicit method).

    AUTO: strictly positive spectra go to the square-root route, with the
    invariance shortcut attempted first and recorded in the diagnostics;
    singular nonnegative spectra go to the kernel-complement route;
    anything with genuinely negative eigenvalues is rejected.
    """
    if method is Method.POSDEF_DIAG:
        return minimize_posdef_diag(p)
    if method is Method.POSDEF:
        return minimize_posdef(p)
    if method is Method.PSD_COMPLEMENT:
        return minimize_psd_complement(p)
    if method is not Method.AUTO:
        raise ValueError(f"method {method} is not dispatchable")
    cfg = p.tol
    eig = eigh(p.t, cfg)
    cls = classify_spectrum(eig.eigenvalues, cfg)
    if cls is SpectrumClass.INDEFINITE:
        raise NotPositiveError("t has negative eigenvalues; no minimizer exists")
    if cls is SpectrumClass.PSD_SINGULAR:
        return minimize_psd_complement(p)
    result = minimize_posdef(p)
    shortcut = try_cor1_shortcut(p)
    if shortcut is None:
        note = Diagnostic(
            code="cor1_shortcut",
            message="range-invariance shortcut not applicable",
        )
    else:
        gap = float(np.linalg.norm(shortcut.xhat - result.xhat))
        note = Diagnostic(
            code="cor1_shortcut",
            message="range-invariance shortcut fired; gap to the full route recorded",
            value=gap,
        )
    return result.with_extra_diagnostics([note])
