"""Exception types shared across the library."""

from __future__ import annotations


class UnitalQubitError(Exception):
    """Base class for every error raised by this package."""


class NotHermitianError(UnitalQubitError):
    """Input matrix is not Hermitian within tolerance."""


class NoConvergenceError(UnitalQubitError):
    """Iterative eigensolver exhausted its sweep budget."""


class NotUnitaryError(UnitalQubitError):
    """Input matrix is not unitary within tolerance."""


class NotRotationError(UnitalQubitError):
    """Input matrix is not a proper rotation (orthogonal, det +1)."""


class NotPSDError(UnitalQubitError):
    """Matrix is not positive semidefinite; carries the most negative eigenvalue."""

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NotUnitalError(UnitalQubitError):
    """Map does not send the identity to the identity."""


class NotTracePreservingError(UnitalQubitError):
    """Map does not preserve traces."""


class NotHermitianPreservingError(UnitalQubitError):
    """Map does not preserve Hermitian matrices (non-Hermitian Choi matrix)."""


class NotChannelError(UnitalQubitError):
    """Map is not a valid quantum channel (fails CP, TP or unitality)."""


class CanonicalizationError(UnitalQubitError):
    """Canonical-form reduction failed its own residual check."""


class SumMismatchError(UnitalQubitError):
    """Majorization comparison between vectors with different totals."""


class PreconditionViolatedError(UnitalQubitError):
    """Interlacing / sum preconditions of a weight rebalancing were violated."""


class NotMajorizedError(UnitalQubitError):
    """Majorization fails; carries the first violated prefix (1-based)."""

    def __init__(self, message: str, violated_prefix: int):
        super().__init__(message)
        self.violated_prefix = violated_prefix


class OrderingViolatedError(UnitalQubitError):
    """Scaling vector does not satisfy the required axis ordering."""


class NotInTetrahedronError(UnitalQubitError):
    """Scaling vector lies outside the admissible tetrahedron."""


class NotInConeError(UnitalQubitError):
    """Scaling vector lies outside the ordered admissible cone."""


class BadCoefficientsError(UnitalQubitError):
    """Generator coefficients do not describe a valid channel."""


class ParseError(UnitalQubitError):
    """Malformed channel document; message carries the offending position."""
