"""Exception hierarchy shared by all gsdyn modules."""


class GsdynError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GsdynError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ConfigurationError(GsdynError, ValueError):
    """A grid / search / CLI configuration is malformed or too coarse."""


class ResourceLimitError(GsdynError, RuntimeError):
    """A hard resource cap (degree, jet order, partition size) was exceeded."""


class BoundaryHitError(GsdynError, RuntimeError):
    """A numeric search ended on the boundary of its bracket; enlarge it."""


class VerificationError(GsdynError, RuntimeError):
    """An internally computed certificate failed its own consistency check."""


class InconclusiveError(GsdynError, RuntimeError):
    """The search terminated without a certifiable interior result."""
