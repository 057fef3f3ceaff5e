"""Errors, warning categories and diagnostic records."""

from __future__ import annotations

from dataclasses import dataclass


class QfminError(Exception):
    """Base class for all qfmin errors."""


class DimensionMismatchError(QfminError, ValueError):
    """Operand shapes are incompatible."""


class FactorizationError(QfminError):
    """A factorization failed to converge or to reconstruct its input."""


class NotHermitianError(QfminError):
    """An operation required a Hermitian matrix and did not get one."""


class NotEpError(QfminError):
    """The canonical range/null-space decomposition needs an EP matrix."""


class PositivityError(QfminError):
    """The operator is in the wrong definiteness class for the operation."""


class NotPositiveError(PositivityError):
    """Negative eigenvalues beyond tolerance."""


class NotPositiveDefiniteError(PositivityError):
    """A strictly positive definite matrix was required."""


class NotPsdError(PositivityError):
    """A positive semidefinite matrix was required."""


class NotSingularError(PositivityError):
    """The semidefinite path needs a singular matrix; use the definite path."""


class InfeasibleError(QfminError):
    """The constraint right-hand side is outside the range of A."""


class InfeasibleOnComplementError(InfeasibleError):
    """No feasible point exists inside the orthogonal complement of the kernel."""


class OracleError(QfminError):
    """The brute-force verifier could not produce a trustworthy solution."""


class ProblemFileError(QfminError):
    """A problem file failed to parse or validate."""


class QfminWarning(UserWarning):
    """Base category for qfmin diagnostics emitted as warnings."""

    def __init__(self, message: str, value: float | None = None):
        super().__init__(message)
        self.value = value


class IllConditioningWarning(QfminWarning):
    """Kept singular values span too many orders of magnitude."""


class NarrowAngleWarning(QfminWarning):
    """A principal angle is close enough to zero to threaten stability."""


@dataclass(frozen=True)
class Diagnostic:
    """A machine-readable note attached to a result."""

    code: str
    message: str
    value: float | None = None
