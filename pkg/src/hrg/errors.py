"""Exception types raised across the package."""


class HRGError(Exception):
    """Base class for every error raised by `hrg`."""


class DomainError(HRGError, ValueError):
    """An argument or parameter set lies outside an operation's domain."""


class InsufficientDataError(HRGError):
    """Too little data for an estimate (empty window, short tail, one sample)."""


class ConvergenceError(HRGError, ArithmeticError):
    """A quadrature failed to converge or its remainder bound was exceeded."""


class EnvelopeError(HRGError):
    """The accelerated generator could not build a usable envelope."""


class FormatError(HRGError):
    """A graph or positions file does not follow the `#hrg v1` format."""
