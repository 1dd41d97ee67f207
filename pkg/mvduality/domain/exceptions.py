"""Domain exceptions"""

from typing import Sequence, Tuple


class DomainException(Exception):
    """Base domain exception"""

    pass


class ValidationException(DomainException):
    """Invalid input: malformed data or violated preconditions"""

    pass


class IncompatibleChainsError(ValidationException):
    """Chain values with different denominators were combined"""

    pass


class NoEmbeddingError(ValidationException):
    """L_{t+1} does not embed into L_{n+1} (t does not divide n)"""

    pass


class IndexOutOfRangeError(ValidationException):
    """An operator or block index is outside its range"""

    pass


class AlgebraMismatchError(ValidationException):
    """Elements of different Boolean algebras were combined"""

    pass


class MalformedAlgebraError(ValidationException):
    """Operation tables are not well formed"""

    pass


class ParseError(ValidationException):
    """Interchange text could not be parsed"""

    pass


class ImproperFilterError(ValidationException):
    """The improper filter was used where a proper one is required"""

    pass


class NotNValuedError(ValidationException):
    """The algebra is not (n+1)-valued for the requested n"""

    pass


class EmptyPrimeFamilyError(ValidationException):
    """No prime filter has the requested quotient chain"""

    pass


class NoWitnessError(ValidationException):
    """A carrier search ended without a witness"""

    pass


class MalformedFilterMapError(ValidationException):
    """A filter map is defined on something other than Div(n)"""

    pass


class InvalidObjectError(ValidationException):
    """A filter map violates the object conditions"""

    pass


class NotInSubalgebraError(ValidationException):
    """A monotone tuple fails some block condition"""

    def __init__(self, message: str, violations: Sequence[Tuple[int, int]] = ()):
        super().__init__(message)
        self.violations = list(violations)


class NotHomomorphismError(ValidationException):
    """A map does not preserve the operations"""

    pass


class MorphismConditionError(ValidationException):
    """A Boolean homomorphism does not respect the filter maps"""

    pass


class ValuedMapError(ValidationException):
    """A valued map leaves L_{d+1} on h(d)"""

    def __init__(self, message: str, point: int, divisor: int):
        super().__init__(message)
        self.point = point
        self.divisor = divisor


class VerificationError(DomainException):
    """A construction failed its own re-check"""

    def __init__(self, message: str, counterexample: str = ""):
        super().__init__(message)
        self.counterexample = counterexample


class SkeletonError(VerificationError):
    """Idempotents do not form a Boolean algebra"""

    pass


class ClosureError(VerificationError):
    """A subalgebra candidate is not closed under the operations"""

    pass
