"""Exception types shared across the package."""


class KuelshError(Exception):
    """Base class for all mathematical errors raised by this package."""


class NonPrimeCharacteristic(KuelshError):
    pass


class ReducibleModulus(KuelshError):
    pass


class DimensionMismatch(KuelshError):
    pass


class AmbientMismatch(KuelshError):
    pass


class NotASubspace(KuelshError):
    pass


class FieldMismatch(KuelshError):
    pass


class DegenerateForm(KuelshError):
    pass


class WellDefinednessViolation(KuelshError):
    pass


class NotUnital(KuelshError):
    pass


class NotACycle(KuelshError):
    pass


class NotACocycle(KuelshError):
    pass


class AlgebraMismatch(KuelshError):
    pass


class TooLargeToEnumerate(KuelshError):
    pass


class NotSymmetric(KuelshError):
    pass


class BudgetExceeded(KuelshError):
    pass


class ValidationFailure(KuelshError):
    pass
