"""Exception types raised across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class DegenerateFieldError(ValueError):
    """Field magnitude is zero where a direction is required."""


class UndefinedPhaseError(ValueError):
    """Phase requested for a zero-length equatorial vector."""


class DegenerateReferenceError(ValueError):
    """Normalization reference coherence is zero."""


class InsufficientDataError(ValueError):
    """Too few samples for the requested statistic."""
