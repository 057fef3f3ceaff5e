"""Moore-Penrose pseudoinverse and the operator toolkit built on it.

Covers thresholded pseudoinversion, range/row-space projectors, the EP test
and canonical EP decomposition, positive square roots, principal-angle
diagnostics, the reverse-order-law predicate and invariant-subspace tests.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .dense_core import as_matrix, eigh, svd
from .errors import (
    DimensionMismatchError,
    IllConditioningWarning,
    NarrowAngleWarning,
    NotEpError,
    NotPositiveError,
)

# Cosines within 4 eps of 1 are treated as an exact subspace intersection;
# that resolves angles down to ~4e-8 rad, below any warning threshold.
_INTERSECTION_TOL = 4 * float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class RankDecision:
    """Outcome of thresholding a singular-value spectrum.

    ``sigma_kept_min > threshold >= sigma_dropped_max``; empty sides default
    to +inf (nothing kept) and 0.0 (nothing dropped).
    """

    rank: int
    threshold: float
    sigma_kept_min: float
    sigma_dropped_max: float


def rank_decide(
    sigma, cfg: ToleranceConfig = DEFAULT_TOL, dim: int | None = None
) -> RankDecision:
    """Decide the numerical rank of a descending, nonnegative spectrum.

    The threshold is ``rtol * max(sigma)`` floored at ``abs_floor``; `dim`
    feeds the default rtol (``dim * eps``) and should be the larger matrix
    dimension when known.  Warns with IllConditioningWarning when the kept
    values span more than ``1 / warn_ratio``.
    """
    sig = np.asarray(sigma, dtype=np.float64)
    if sig.ndim != 1:
        raise DimensionMismatchError("sigma must be a 1-d array")
    if sig.size and (np.any(sig < 0) or np.any(np.diff(sig) > 0)):
        raise ValueError("sigma must be nonnegative and descending")
    smax = float(sig[0]) if sig.size else 0.0
    rtol = cfg.effective_rtol(dim if dim is not None else sig.size)
    threshold = max(rtol * smax, cfg.abs_floor)
    rank = int(np.count_nonzero(sig > threshold))
    kept_min = float(sig[rank - 1]) if rank else math.inf
    dropped_max = float(sig[rank]) if rank < sig.size else 0.0
    if rank and smax > 0 and kept_min / smax < cfg.warn_ratio:
        warnings.warn(
            IllConditioningWarning(
                f"kept singular values span ratio {kept_min / smax:.3e}, "
                f"below warn_ratio {cfg.warn_ratio:.1e}",
                value=kept_min / smax,
            ),
            stacklevel=2,
        )
    return RankDecision(
        rank=rank,
        threshold=threshold,
        sigma_kept_min=kept_min,
        sigma_dropped_max=dropped_max,
    )


def pinv_with_rank(
    a, cfg: ToleranceConfig = DEFAULT_TOL
) -> tuple[np.ndarray, RankDecision]:
    """Pseudoinverse together with the rank decision that produced it."""
    arr = as_matrix(a)
    fact = svd(arr, cfg)
    decision = rank_decide(fact.sigma, cfg, dim=max(arr.shape) if arr.size else 0)
    r = decision.rank
    if r == 0:
        return np.zeros((arr.shape[1], arr.shape[0]), dtype=arr.dtype), decision
    p = (fact.v[:, :r] / fact.sigma[:r]) @ fact.u[:, :r].conj().T
    return p, decision


def pinv(a, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD with thresholded inversion.

    Singular values at or below the rank threshold are treated as zero and
    the rest are inverted; the result satisfies the four defining equations
    to within ``ptol`` relative residual on well-scaled inputs.
    """
    p, _ = pinv_with_rank(a, cfg)
    return p


def projector_range(a, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space, ``a @ pinv(a)``."""
    arr = as_matrix(a)
    return arr @ pinv(arr, cfg)


def projector_rangestar(a, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the row space, ``pinv(a) @ a``."""
    arr = as_matrix(a)
    return pinv(arr, cfg) @ arr


def is_ep(t, tol: float | None = None, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether `t` commutes with its pseudoinverse (range equals row space).

    True for every Hermitian, normal or invertible matrix; false exactly
    when the kernel and the kernel of the adjoint differ.
    """
    arr = as_matrix(t)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError("the EP test needs a square matrix")
    if tol is None:
        tol = cfg.ep_tol
    p = pinv(arr, cfg)
    gap = np.linalg.norm(arr @ p - p @ arr)
    return bool(gap <= tol * max(1.0, np.linalg.norm(arr)))


@dataclass(frozen=True)
class EpDecomposition:
    """Canonical form ``t = u1 @ (a1 ⊕ 0) @ u1*`` of an EP matrix.

    The first `rank` columns of the unitary `u1` span the column space and
    the remaining columns span the kernel; `a1` is the invertible
    restriction of `t` to its column space.
    """

    u1: np.ndarray
    a1: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        n = self.u1.shape[0]
        core = np.zeros((n, n), dtype=self.u1.dtype)
        core[: self.rank, : self.rank] = self.a1
        return self.u1 @ core @ self.u1.conj().T

    def embed_core_inverse(self) -> np.ndarray:
        """``inv(a1) ⊕ 0`` in the coordinates of `u1` (an n-by-n block)."""
        n = self.u1.shape[0]
        out = np.zeros((n, n), dtype=np.result_type(self.a1.dtype, np.float64))
        out[: self.rank, : self.rank] = np.linalg.inv(self.a1)
        return out


def ep_decompose(t, cfg: ToleranceConfig = DEFAULT_TOL) -> EpDecomposition:
    """Split an EP matrix into its invertible core and kernel block.

    The unitary is assembled from the SVD of `t`: kept left singular
    vectors first (column space), then the remaining ones, which span the
    kernel precisely because `t` is EP.  Raises NotEpError otherwise.
    """
    arr = as_matrix(t)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError("EP decomposition needs a square matrix")
    if not is_ep(arr, cfg=cfg):
        raise NotEpError("matrix does not commute with its pseudoinverse")
    fact = svd(arr, cfg)
    decision = rank_decide(fact.sigma, cfg, dim=arr.shape[0])
    r = decision.rank
    u1 = fact.u
    a1 = u1[:, :r].conj().T @ arr @ u1[:, :r]
    decomp = EpDecomposition(u1=u1, a1=a1, rank=r)
    norm = np.linalg.norm(arr)
    residual = np.linalg.norm(decomp.reconstruct() - arr)
    if residual > 10 * cfg.ep_tol * max(1.0, norm):
        raise NotEpError(
            f"canonical-form residual {residual:.3e} too large; "
            "matrix is at best borderline EP"
        )
    return decomp


def sqrt_psd(t, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Unique positive semidefinite square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-neg_tol * ||t||, 0)`` are clamped to zero (roundoff
    on genuinely PSD inputs); anything below raises NotPositiveError.
    """
    fact = eigh(t, cfg)
    w = fact.eigenvalues
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    lower = -cfg.neg_tol * scale
    if w.size and w[0] < lower:
        raise NotPositiveError(
            f"smallest eigenvalue {w[0]:.6e} is below -neg_tol * ||t|| = {lower:.6e}"
        )
    clamped = np.where(w < 0, 0.0, w)
    root = (fact.q * np.sqrt(clamped)) @ fact.q.conj().T
    return (root + root.conj().T) / 2


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace of an ambient space."""

    basis: np.ndarray
    ambient_dim: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def from_orthonormal(cls, basis, tol: float = 1e-10) -> "SubspaceBasis":
        arr = as_matrix(basis)
        gram = arr.conj().T @ arr
        if np.linalg.norm(gram - np.eye(arr.shape[1])) > tol * max(1, arr.shape[1]):
            raise ValueError("columns are not orthonormal")
        return cls(basis=arr, ambient_dim=arr.shape[0])

    @classmethod
    def from_span(cls, columns, cfg: ToleranceConfig = DEFAULT_TOL) -> "SubspaceBasis":
        """Orthonormalize the span of the given columns."""
        arr = as_matrix(columns)
        fact = svd(arr, cfg)
        r = rank_decide(fact.sigma, cfg, dim=max(arr.shape)).rank
        return cls(basis=fact.u[:, :r], ambient_dim=arr.shape[0])

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T


def range_basis(a, cfg: ToleranceConfig = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the column space of `a`."""
    arr = as_matrix(a)
    fact = svd(arr, cfg)
    r = rank_decide(fact.sigma, cfg, dim=max(arr.shape)).rank
    return SubspaceBasis(basis=fact.u[:, :r], ambient_dim=arr.shape[0])


def rangestar_basis(a, cfg: ToleranceConfig = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the row space of `a` (kernel complement)."""
    arr = as_matrix(a)
    fact = svd(arr, cfg)
    r = rank_decide(fact.sigma, cfg, dim=max(arr.shape)).rank
    return SubspaceBasis(basis=fact.v[:, :r], ambient_dim=arr.shape[1])


def null_basis(a, cfg: ToleranceConfig = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the kernel of `a`."""
    arr = as_matrix(a)
    fact = svd(arr, cfg)
    r = rank_decide(fact.sigma, cfg, dim=max(arr.shape)).rank
    return SubspaceBasis(basis=fact.v[:, r:], ambient_dim=arr.shape[1])


def principal_angle_diag(a, b, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Minimal principal angle between ``N(a) ⊖ R(b)`` and ``R(b)``.

    A small angle means the product ``a @ b`` is close to losing rank; in
    that case a NarrowAngleWarning fires (threshold ``angle_warn``).  When
    either subspace is trivial the angle is pi/2 by convention.
    """
    arr_a = as_matrix(a)
    arr_b = as_matrix(b)
    if arr_a.shape[1] != arr_b.shape[0]:
        raise DimensionMismatchError("inner dimensions of a and b must agree")
    na = null_basis(arr_a, cfg)
    rb = range_basis(arr_b, cfg)
    if na.dim == 0 or rb.dim == 0:
        return math.pi / 2
    overlap = na.basis.conj().T @ rb.basis
    u_m, s_m, _ = np.linalg.svd(overlap, full_matrices=True)
    cosines = np.zeros(na.dim)
    cosines[: s_m.size] = np.clip(s_m, 0.0, 1.0)
    keep = cosines < 1.0 - _INTERSECTION_TOL
    if not np.any(keep):
        return math.pi / 2
    h = na.basis @ u_m[:, keep]
    rest = np.linalg.svd(h.conj().T @ rb.basis, compute_uv=False)
    cos_max = float(np.clip(rest[0], 0.0, 1.0)) if rest.size else 0.0
    angle = float(np.arccos(cos_max))
    if angle < cfg.angle_warn:
        warnings.warn(
            NarrowAngleWarning(
                f"principal angle {angle:.3e} rad below angle_warn "
                f"{cfg.angle_warn:.1e}; the operator product is close to "
                "losing rank",
                value=angle,
            ),
            stacklevel=2,
        )
    return angle


@dataclass(frozen=True)
class ReverseOrderReport:
    """Verdict and residuals for the reverse-order-law predicate.

    `rangestar_commutator` is ``||[pinv(a) a, b b*]||`` and
    `range_commutator` is ``||[b pinv(b), a* a]||``; both must vanish (to
    tolerance) for ``pinv(a @ b) == pinv(b) @ pinv(a)`` to hold.
    `ab_rank` reports the conditioning of the product itself.
    """

    holds: bool
    rangestar_commutator: float
    range_commutator: float
    ab_rank: RankDecision

    def __bool__(self) -> bool:
        return self.holds


def reverse_order_holds(
    a, b, tol: float | None = None, cfg: ToleranceConfig = DEFAULT_TOL
) -> ReverseOrderReport:
    """Test the two commutation conditions behind the reverse order law.

    The closed-range condition on the product is automatic here (finite
    dimensions); its conditioning is surfaced through `ab_rank` instead of
    being gated on.
    """
    arr_a = as_matrix(a)
    arr_b = as_matrix(b)
    if arr_a.shape[1] != arr_b.shape[0]:
        raise DimensionMismatchError("inner dimensions of a and b must agree")
    if tol is None:
        tol = cfg.commute_tol
    pa = pinv(arr_a, cfg) @ arr_a
    bbs = arr_b @ arr_b.conj().T
    pb = arr_b @ pinv(arr_b, cfg)
    asa = arr_a.conj().T @ arr_a
    c1 = float(np.linalg.norm(pa @ bbs - bbs @ pa))
    c2 = float(np.linalg.norm(pb @ asa - asa @ pb))
    scale_b = max(1.0, float(np.linalg.norm(arr_b)) ** 2)
    scale_a = max(1.0, float(np.linalg.norm(arr_a)) ** 2)
    product = arr_a @ arr_b
    sigma = np.linalg.svd(product, compute_uv=False)
    decision = rank_decide(sigma, cfg, dim=max(product.shape))
    holds = c1 <= tol * scale_b and c2 <= tol * scale_a
    return ReverseOrderReport(
        holds=holds,
        rangestar_commutator=c1,
        range_commutator=c2,
        ab_rank=decision,
    )


def lat_invariant(
    subspace: SubspaceBasis,
    t,
    tol: float | None = None,
    cfg: ToleranceConfig = DEFAULT_TOL,
) -> bool:
    """Whether `t` maps the subspace into itself: ``(I - P) t P ≈ 0``."""
    arr = as_matrix(t)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError("invariance test needs a square matrix")
    if subspace.ambient_dim != arr.shape[0]:
        raise DimensionMismatchError(
            f"subspace lives in dimension {subspace.ambient_dim}, "
            f"matrix acts on dimension {arr.shape[0]}"
        )
    if tol is None:
        tol = cfg.lat_tol
    p = subspace.projector()
    leak = np.linalg.norm((np.eye(arr.shape[0]) - p) @ arr @ p)
    return bool(leak <= tol * max(np.linalg.norm(arr), 1e-300))
