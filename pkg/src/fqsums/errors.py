"""Exception hierarchy shared by every module of the package."""


class FqSumsError(ValueError):
    """Base class for domain errors raised by fqsums."""


class NotPrime(FqSumsError):
    pass


class Reducible(FqSumsError):
    pass


class TooLarge(FqSumsError):
    pass


class NoPrimitiveModulus(FqSumsError):
    pass


class DivisionByZero(FqSumsError, ZeroDivisionError):
    pass


class ZeroArgument(FqSumsError):
    pass


class BadSubfield(FqSumsError):
    pass


class NotDivisor(FqSumsError):
    pass


class PrimeMismatch(FqSumsError):
    pass


class ConstantPolynomial(FqSumsError):
    pass


class BranchMismatch(FqSumsError):
    pass


class BadExponents(FqSumsError):
    pass


class NonIntegerResult(FqSumsError):
    """An exact count came out non-integral; always an internal bug."""


class NonDivisible(FqSumsError):
    """|E_k| was not a multiple of k; always an internal bug."""


class BadCheckSet(FqSumsError):
    pass


class ZeroCodeword(FqSumsError):
    pass


class ShapeMismatch(FqSumsError):
    pass


class ConfigError(FqSumsError):
    pass


class ParseError(FqSumsError):
    pass
