"""Exception hierarchy shared by every module of the package."""


class CareError(Exception):
    """Base class for all errors raised by gadi_care."""


class NonSquare(CareError, ValueError):
    pass


class NonFinite(CareError, ValueError):
    pass


class DimensionMismatch(CareError, ValueError):
    pass


class SingularMatrix(CareError, ArithmeticError):
    pass


class TooLarge(CareError, ValueError):
    pass


class NoConvergence(CareError, ArithmeticError):
    pass


class NonHermitianData(CareError, ValueError):
    pass


class SingularInitialization(CareError, ArithmeticError):
    pass


class InvalidUserGuess(CareError, ValueError):
    pass


class SingularShift(SingularMatrix):
    """``alpha*I + A_k`` (or its adjoint) is numerically singular."""


class SingularLift(SingularMatrix):
    """The Kronecker-lifted Lyapunov operator is numerically singular."""


class UnstableInput(CareError, ValueError):
    """Some eigenvalue of ``A_k`` has nonpositive real part."""


class ParseError(CareError, ValueError):
    pass


class ShapeError(CareError, ValueError):
    pass


class HermitianViolation(NonHermitianData):
    pass


class BadId(CareError, ValueError):
    pass


class IndefiniteWeight(CareError, ValueError):
    """``Q`` has a clearly negative eigenvalue where ``Q >= 0`` is required."""
