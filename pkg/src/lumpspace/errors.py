class LumpspaceError(Exception):
    """Base class for all errors raised by lumpspace."""


class UsageError(LumpspaceError, ValueError):
    """Bad arguments: wrong shapes, out-of-range parameters, invalid flags."""


class DomainError(LumpspaceError, ValueError):
    """The input lies outside the mathematical domain (e.g. a zero lift)."""


class NumericalError(LumpspaceError, ArithmeticError):
    """A numerical procedure failed: non-finite values, lost definiteness,
    unconverged quadrature."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
