"""Exception hierarchy shared across the package."""


class SpinentError(Exception):
    """Base class for computational errors raised by this package."""


class ContractViolationError(SpinentError):
    """An input broke a numerical contract (Hermiticity, positivity, trace)."""


class DomainError(ContractViolationError):
    """A matrix function was applied outside its spectral domain."""


class BetaRangeError(SpinentError):
    """Requested inverse temperature is outside the safely computable range."""


class ClusterParseError(SpinentError):
    """A cluster configuration document could not be parsed or validated."""
