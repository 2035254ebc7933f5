"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured size bound."""


class InvariantViolation(AssertionError):
    """Raised when an internal consistency check fails (e.g. boundary of boundary != 0)."""
