"""Exception hierarchy shared by all counting pipelines."""


class DimerError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimensions(DimerError, ValueError):
    pass


class InvalidSignClass(DimerError, ValueError):
    pass


class InexactDivision(DimerError, ArithmeticError):
    """A Gaussian-integer division left a remainder.

    Inside determinant elimination this means an algorithmic bug, never bad input.
    """


class SignCalibrationFailure(DimerError, ArithmeticError):
    pass


class PrecisionExhausted(DimerError, ArithmeticError):
    """A high-precision product did not land close enough to an integer."""


class SizeLimitExceeded(DimerError, ValueError):
    pass


class InvalidBoundary(DimerError, ValueError):
    pass


class InvalidCode(DimerError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ToleranceNotMet(DimerError, ArithmeticError):
    pass


# Errors that stem from the caller's arguments rather than from a failed computation.
USAGE_ERRORS = (InvalidDimensions, InvalidSignClass, SizeLimitExceeded, InvalidBoundary, InvalidCode)
