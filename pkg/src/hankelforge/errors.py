"""Exception hierarchy shared by all hankelforge modules."""


class HankelforgeError(Exception):
    """Base class for every error raised by the package."""


class DomainError(HankelforgeError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class OrderMismatchError(HankelforgeError, ValueError):
    pass


class InsufficientOrderError(HankelforgeError, ValueError):
    pass


class AmbiguousRegimeError(HankelforgeError, ValueError):
    """No boundary regime of the Schur parametrization applies."""


class PoleError(HankelforgeError, ArithmeticError):
    """A rational function was evaluated at (or numerically at) a pole."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class NearZeroDenominatorError(HankelforgeError, ArithmeticError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class HankelRangeError(HankelforgeError, IndexError):
    pass
