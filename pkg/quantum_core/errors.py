"""Exception hierarchy shared by every package of the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit failures."""


class DimensionMismatchError(ToolkitError, ValueError):
    pass


class NotHermitianError(ToolkitError, ValueError):
    pass


class DomainError(ToolkitError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ModelError(ToolkitError, ValueError):
    """Inconsistent or unsupported model definition."""


class InconsistentDerivativeError(ToolkitError):
    """rho_prime has weight on the joint kernel of rho."""


class PropagationError(ToolkitError):
    """Integration aborted (bad grid, lost positivity, ...)."""


class TruncationLeakageError(PropagationError):
    pass


class ConfigError(ToolkitError):
    """Invalid run configuration; carries the offending field path."""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class BoundViolationError(ToolkitError):
    """A simulated QFI or QFI rate exceeded one of its upper bounds."""
