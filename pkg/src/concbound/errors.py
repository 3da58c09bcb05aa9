"""Exception types shared across the package."""


class ConcboundError(Exception):
    """Base class for all package errors."""


class DimensionError(ConcboundError, ValueError):
    """Shape or bipartite-index mismatch."""


class ValidationError(ConcboundError, ValueError):
    """A physical invariant (hermiticity, trace, positivity, norm) is violated."""


class SizeLimitError(ConcboundError, ValueError):
    """Requested operation would exceed the configured dimension cap."""


class NumericalError(ConcboundError, RuntimeError):
    """An eigensolver or SVD failed to produce a usable result."""
