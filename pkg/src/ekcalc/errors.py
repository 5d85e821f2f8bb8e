"""Exception types raised across the package."""


class EkCalcError(ValueError):
    pass


class NotPrime(EkCalcError):
    pass


class DuplicateGenerator(EkCalcError):
    pass


class ParityViolation(EkCalcError):
    pass


class NonConnective(EkCalcError):
    pass


class AmbientMismatch(EkCalcError):
    pass


class DimensionMismatch(EkCalcError):
    pass


class BetaAtTwo(EkCalcError):
    pass


class IndexOutOfRange(EkCalcError):
    pass


class EvenSphere(EkCalcError):
    pass


class DegreeCapExceeded(EkCalcError):
    pass


class InhomogeneousRelation(EkCalcError):
    pass
