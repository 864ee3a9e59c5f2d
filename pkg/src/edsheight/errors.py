"""Exception types shared across the package.

Everything derives from EdsError so callers can catch one class at the
boundary.  ValidationError covers bad user input (CLI exit code 1);
everything else is a computation failure (exit code 2).
"""


class EdsError(Exception):
    pass


class ValidationError(EdsError):
    """User-supplied data is malformed or inconsistent."""


class ParseError(ValidationError):
    pass


class NotMonic(ValidationError):
    pass


class NotSquarefree(ValidationError):
    pass


class ZeroDegree(ValidationError):
    pass


class FieldMismatch(ValidationError):
    pass


class NonIntegralCoefficients(ValidationError):
    pass


class SingularCurve(ValidationError):
    pass


class PointNotOnCurve(ValidationError):
    pass


class PointNotIntegral(ValidationError):
    pass


class ZeroInput(ValidationError):
    pass


class NotPowerOfTwo(ValidationError):
    pass


class EqualIndices(ValidationError):
    pass


class ZeroScalar(ValidationError):
    pass


class PrimeDoesNotDivideD(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class ComputationError(EdsError):
    pass


class DivisionByZero(ComputationError):
    pass


class InexactDivision(ComputationError):
    pass


class PrecisionUnreachable(ComputationError):
    pass


class PrecisionLoss(ComputationError):
    pass


class TorsionPoint(ComputationError):
    """The point has finite order; its canonical height is 0."""


class TorsionPoint2(TorsionPoint):
    """psi_2 vanishes at the point (2-torsion)."""


class ZeroTerm(ComputationError):
    """A sequence term needed with a nonzero value turned out to be 0."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"term at index {index} is zero")


class NonIntegralTerms(ComputationError):
    pass
