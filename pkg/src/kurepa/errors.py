"""Exception hierarchy shared by every evaluator."""


class KurepaError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(KurepaError, ZeroDivisionError):
    """Argument lies on (within tolerance of) a pole of the function."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DomainError(KurepaError, ValueError):
    """Argument outside the domain where the chosen representation is valid."""


class BranchError(KurepaError, ValueError):
    """A branch other than arg(x) = +pi was requested on the negative real axis."""


class ConvergenceError(KurepaError, ArithmeticError):
    """An iterative method exhausted its budget without meeting its tolerance."""
