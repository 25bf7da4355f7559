"""Exception types shared across the package."""


class BZError(Exception):
    """Base class for all package errors."""


class DomainError(BZError, ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(BZError):
    """A configured size or node budget was exceeded.

    ``partial`` carries whatever was built before the limit was hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class StabilizationError(BZError):
    """Window growth hit its ceiling before values settled."""

    def __init__(self, message, last_values=()):
        super().__init__(message)
        self.last_values = tuple(last_values)


class IntegrityError(BZError):
    """An internal consistency check failed; this indicates a bug."""


class EvaluationError(BZError):
    """Lazy evaluation exceeded its recursion or probe limits."""
