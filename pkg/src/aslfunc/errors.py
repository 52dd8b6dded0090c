"""Exception hierarchy shared by all modules."""


class ASLError(Exception):
    """Base class for every error raised by :mod:`aslfunc`."""


class NotPrime(ASLError, ValueError):
    pass


class EvenCharacteristic(ASLError, ValueError):
    pass


class SizeCapExceeded(ASLError):
    pass


class WorkLimitExceeded(ASLError):
    pass


class NotASubfield(ASLError, ValueError):
    pass


class ContextMismatch(ASLError, ValueError):
    pass


class ZeroParameter(ASLError, ValueError):
    pass


class EmptyEnsemble(ASLError, ValueError):
    pass


class NotRationalInteger(ASLError, ArithmeticError):
    """A cyclotomic number expected to lie in Z did not.

    ``coords`` holds the offending canonical coordinates.
    """

    def __init__(self, coords, message=None):
        self.coords = tuple(coords)
        super().__init__(message or f"not a rational integer: coords={self.coords}")


class FunctionalEquationViolated(ASLError, ArithmeticError):
    pass


class MismatchAt(ASLError, ArithmeticError):
    """Series coefficient from the L-polynomial disagrees with point counting."""

    def __init__(self, n, from_lpoly, from_points):
        self.n = n
        self.from_lpoly = from_lpoly
        self.from_points = from_points
        super().__init__(f"S_{n} mismatch: L-polynomial gives {from_lpoly}, "
                         f"point count gives {from_points}")
