"""Exception types."""


class FDMError(Exception):
    """Base class for errors raised by fdmqubit."""


class PreconditionError(FDMError, ValueError):
    """A physical parameter or index violates a documented precondition."""


class UnsupportedConfigurationError(FDMError):
    """The requested combination is outside what the closed forms cover."""


class ConfigurationError(FDMError):
    """Numerical integration settings are unusable (e.g. step too coarse)."""
