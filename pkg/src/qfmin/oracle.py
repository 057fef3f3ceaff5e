"""Independent brute-force verifiers for the constrained minimizers.

These deliberately avoid the square-root pseudoinverse constructions used
by the solvers.  `kkt_solve` goes through the Lagrange-multiplier block
system, `reduced_solve` parametrizes the kernel complement explicitly and
`grid_refute` just samples feasible points.  Agreement with the solver
routes is therefore meaningful evidence rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .dense_core import adjoint, as_matrix, as_vector
from .errors import InfeasibleOnComplementError, OracleError
from .minimizers import quad_value
from .pinv_ops import null_basis, range_basis

KKT_TOL = 1e-10

REFUTE_MARGIN = 1e-10


@dataclass(frozen=True)
class OracleResult:
    """Verifier solution with the residual of its own optimality system."""

    x: np.ndarray
    min_value: float
    kkt_residual: float


def _block_kkt(t, a):
    m, n = a.shape
    zero = np.zeros((m, m), dtype=np.result_type(t.dtype, a.dtype))
    return np.block([[2.0 * t, adjoint(a)], [a, zero]])


def kkt_solve(t, a, b, cfg: ToleranceConfig = DEFAULT_TOL) -> OracleResult:
    """Solve the Lagrange-multiplier system of the constrained minimum.

    Stacks ``[2t, a*; a, 0] [x; lam] = [0; b]`` and applies a minimum-norm
    least-squares solve.  The returned residual is the norm of the block
    system evaluated at the solution, relative to ``max(1, ||b||)``.

    Raises
    ------
    OracleError
        If the block system cannot be satisfied to ``1e-10``, which happens
        for infeasible data or an indefinite stationary system.
    """
    tm = as_matrix(t)
    am = as_matrix(a)
    bv = as_vector(b)
    kkt = _block_kkt(tm, am)
    rhs = np.concatenate([np.zeros(tm.shape[0], dtype=kkt.dtype), bv.astype(kkt.dtype)])
    sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    residual = float(np.linalg.norm(kkt @ sol - rhs)) / max(1.0, float(np.linalg.norm(bv)))
    if residual > KKT_TOL:
        raise OracleError(
            f"stationarity system unsatisfied: residual {residual:.3e} exceeds {KKT_TOL}"
        )
    x = sol[: tm.shape[0]]
    return OracleResult(x=x, min_value=quad_value(tm, x), kkt_residual=residual)


def reduced_solve(t, a, b, cfg: ToleranceConfig = DEFAULT_TOL) -> OracleResult:
    """Verifier for the kernel-complement minimum of a singular PSD form.

    Parametrizes ``x = basis @ z`` over an orthonormal basis of the column
    space of `t`, which turns the restricted problem into an ordinary
    positive definite one in `z`, then defers to `kkt_solve`.
    """
    tm = as_matrix(t)
    am = as_matrix(a)
    bv = as_vector(b)
    basis = range_basis(tm, cfg).basis
    a_red = am @ basis
    t_red = adjoint(basis) @ tm @ basis
    gram = a_red @ np.linalg.pinv(a_red)
    if np.linalg.norm(gram @ bv - bv) > cfg.feas_tol * max(1.0, np.linalg.norm(bv)):
        raise InfeasibleOnComplementError(
            "b is not reachable from the kernel complement of t"
        )
    reduced = kkt_solve(t_red, a_red, bv, cfg)
    x = basis @ reduced.x
    return OracleResult(
        x=x, min_value=quad_value(tm, x), kkt_residual=reduced.kkt_residual
    )


def _feasible_directions(t, a, restrict: bool, cfg: ToleranceConfig) -> np.ndarray:
    null_a = null_basis(a, cfg)
    if null_a.dim == 0 or not restrict:
        return null_a.basis
    # N(a) intersect R(t), parametrized through coordinates on R(t): the
    # directions are range_t @ z with (a @ range_t) z = 0.  Intersecting
    # via projector complements instead would put roundoff-scale singular
    # values right at the rank threshold; here every factored matrix is
    # well scaled.  range_t and the coefficient basis are orthonormal, so
    # the product is orthonormal too.
    range_t = range_basis(t, cfg)
    if range_t.dim == 0:
        return np.zeros((t.shape[0], 0), dtype=t.dtype)
    coeffs = null_basis(a @ range_t.basis, cfg)
    if coeffs.dim == 0:
        return np.zeros((t.shape[0], 0), dtype=t.dtype)
    return range_t.basis @ coeffs.basis


def grid_refute(
    t,
    a,
    b,
    x_candidate,
    n_samples: int = 10_000,
    seed: int = 0,
    restrict: bool | str = "auto",
    cfg: ToleranceConfig = DEFAULT_TOL,
) -> bool:
    """Try to beat a candidate minimizer by sampling feasible points.

    Draws random perturbations of the candidate inside the null space of
    `a` (intersected with the column space of `t` when `restrict` applies)
    at log-spaced step sizes and evaluates the quadratic form on each.
    Returns True when no sample attains less than the candidate value
    minus ``1e-10``, i.e. the candidate survives the refutation attempt.

    With ``restrict="auto"`` the samples stay inside the column space of
    `t` exactly when `t` is singular.
    """
    tm = as_matrix(t)
    am = as_matrix(a)
    bv = as_vector(b)
    xc = as_vector(x_candidate)
    gap = float(np.linalg.norm(am @ xc - bv))
    if gap > cfg.feas_tol * max(1.0, float(np.linalg.norm(bv))):
        raise OracleError(f"candidate violates the constraint by {gap:.3e}")
    if restrict == "auto":
        sigma = np.linalg.svd(tm, compute_uv=False)
        full = sigma.size and sigma[-1] > cfg.effective_rtol(tm.shape[0]) * sigma[0]
        restrict = not full
    directions = _feasible_directions(tm, am, bool(restrict), cfg)
    if directions.shape[1] == 0:
        return True
    rng = np.random.default_rng(seed)
    k = directions.shape[1]
    coeffs = rng.standard_normal((n_samples, k))
    if np.iscomplexobj(directions):
        coeffs = (coeffs + 1j * rng.standard_normal((n_samples, k))) / np.sqrt(2.0)
    norms = np.linalg.norm(coeffs, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    steps = 10.0 ** rng.uniform(-4.0, 1.0, size=(n_samples, 1))
    scale = max(1.0, float(np.linalg.norm(xc)))
    coeffs = coeffs / norms * steps * scale
    samples = xc[None, :] + coeffs @ directions.T
    values = np.einsum("ij,jk,ik->i", samples.conj(), tm, samples).real
    return not bool(np.any(values < quad_value(tm, xc) - REFUTE_MARGIN))


def random_pd_problem(
    n: int,
    m: int,
    seed: int = 0,
    complex_entries: bool = False,
):
    """Random strictly positive definite instance with a consistent b.

    ``t = m_mat* m_mat + 0.1 I`` keeps the spectrum bounded away from zero;
    `b` is manufactured as ``a @ x0`` so feasibility is guaranteed.
    """
    rng = np.random.default_rng(seed)
    mat = _random_matrix(rng, n, n, complex_entries)
    t = adjoint(mat) @ mat + 0.1 * np.eye(n, dtype=mat.dtype)
    a = _random_matrix(rng, m, n, complex_entries)
    x0 = _random_matrix(rng, n, 1, complex_entries)[:, 0]
    return t, a, a @ x0


def random_psd_problem(
    n: int,
    m: int,
    rank: int,
    seed: int = 0,
    complex_entries: bool = False,
):
    """Random singular PSD instance with b reachable from the complement.

    ``t = m_r* m_r`` with `m_r` of shape ``rank x n`` has rank at most
    `rank`; `b` comes from a point already projected into the column
    space of `t`.
    """
    if not 0 < rank < n:
        raise ValueError("rank must be strictly between 0 and n")
    rng = np.random.default_rng(seed)
    m_r = _random_matrix(rng, rank, n, complex_entries)
    t = adjoint(m_r) @ m_r
    a = _random_matrix(rng, m, n, complex_entries)
    x0 = _random_matrix(rng, n, 1, complex_entries)[:, 0]
    projector = range_basis(t).projector()
    return t, a, a @ (projector @ x0)


def _random_matrix(rng, rows, cols, complex_entries):
    real = rng.standard_normal((rows, cols))
    if complex_entries:
        return (real + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)
    return real
