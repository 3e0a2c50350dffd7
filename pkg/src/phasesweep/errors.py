"""Exception types shared across the package."""


class PhaseSweepError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(PhaseSweepError, ValueError):
    """Raised for non-finite angles, bad alphabets and malformed instances."""


class UndefinedBoostError(PhaseSweepError, ArithmeticError):
    """Raised when the SNR boost is requested but the direct path is zero."""


class SizeLimitError(PhaseSweepError, ValueError):
    """Raised when an exhaustive enumeration would exceed its configured limit."""


class ParseError(PhaseSweepError, ValueError):
    """Raised when an instance document cannot be decoded."""


class ConfigError(PhaseSweepError, ValueError):
    """Raised for an invalid benchmark configuration, before any work starts."""
