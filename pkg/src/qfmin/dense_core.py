"""Dense matrix values and the two factorizations the rest of the library uses.

Matrices and vectors are plain numpy arrays in float64 or complex128,
validated on entry (finite values, consistent shapes).  All operations are
pure functions; nothing mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DimensionMismatchError, FactorizationError, NotHermitianError


def as_matrix(a) -> np.ndarray:
    """Coerce `a` to a 2-d float64/complex128 array with finite entries."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d array, got ndim={arr.ndim}")
    dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    arr = np.ascontiguousarray(arr, dtype=dtype)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def as_vector(b) -> np.ndarray:
    """Coerce `b` to a 1-d float64/complex128 array with finite entries."""
    arr = np.asarray(b)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-d array, got ndim={arr.ndim}")
    dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    arr = np.ascontiguousarray(arr, dtype=dtype)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    am = as_matrix(a)
    bm = as_matrix(b)
    if am.shape[1] != bm.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply {am.shape[0]}x{am.shape[1]} by {bm.shape[0]}x{bm.shape[1]}"
        )
    return am @ bm


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return np.conjugate(as_matrix(a)).T


@dataclass(frozen=True)
class SvdResult:
    """Full singular value decomposition ``a = u @ diag(sigma) @ v*``.

    `u` is m-by-m unitary, `sigma` holds the min(m, n) singular values in
    descending order, `v` is n-by-n unitary.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reconstruct(self) -> np.ndarray:
        m = self.u.shape[0]
        n = self.v.shape[0]
        k = self.sigma.size
        return (self.u[:, :k] * self.sigma) @ self.v[:, :k].conj().T if k else np.zeros(
            (m, n), dtype=self.u.dtype
        )


@dataclass(frozen=True)
class EigResult:
    """Hermitian eigendecomposition ``a = q @ diag(eigenvalues) @ q*``.

    Eigenvalues are real and ascending; `q` is unitary.
    """

    q: np.ndarray
    eigenvalues: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.q * self.eigenvalues) @ self.q.conj().T


def svd(a, cfg: ToleranceConfig = DEFAULT_TOL) -> SvdResult:
    """Full SVD with a reconstruction guard.

    Raises FactorizationError if the backend fails to converge or the
    factors do not reproduce the input within ``ktol * ||a||``.
    """
    arr = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(arr, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"SVD did not converge: {exc}") from exc
    result = SvdResult(u=u, sigma=s, v=vh.conj().T)
    norm = np.linalg.norm(arr)
    if norm > 0:
        residual = np.linalg.norm(result.reconstruct() - arr)
        if residual > cfg.ktol * norm:
            raise FactorizationError(
                f"SVD reconstruction residual {residual:.3e} exceeds "
                f"{cfg.ktol:.1e} * ||a||"
            )
    return result


def eigh(a, cfg: ToleranceConfig = DEFAULT_TOL) -> EigResult:
    """Hermitian eigendecomposition with ascending eigenvalues.

    The input must be Hermitian within ``htol * ||a||``; it is symmetrized
    before factorization so the returned factors are exactly consistent.
    """
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"eigh needs a square matrix, got {arr.shape}")
    norm = np.linalg.norm(arr)
    herm_residual = np.linalg.norm(arr - arr.conj().T)
    if herm_residual > cfg.htol * max(norm, 1e-300):
        raise NotHermitianError(
            f"||a - a*|| = {herm_residual:.3e} exceeds {cfg.htol:.1e} * ||a||"
        )
    sym = (arr + arr.conj().T) / 2
    try:
        w, q = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"eigh did not converge: {exc}") from exc
    result = EigResult(q=q, eigenvalues=w)
    if norm > 0:
        residual = np.linalg.norm(result.reconstruct() - arr)
        if residual > (cfg.ktol + cfg.htol) * norm:
            raise FactorizationError(
                f"eigendecomposition residual {residual:.3e} exceeds tolerance"
            )
    return result
