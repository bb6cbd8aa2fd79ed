"""Exception hierarchy shared by every module of the package."""


class UmbralError(ValueError):
    """Base class for all errors raised by :mod:`umbral`."""


# series / polynomial arithmetic
class ZeroConstantTerm(UmbralError):
    pass


class NonzeroInnerConstant(UmbralError):
    pass


class NotReversible(UmbralError):
    pass


class BadConstantTerm(UmbralError):
    pass


class ZeroDilation(UmbralError):
    pass


class OrderTooLow(UmbralError):
    pass


# functionals
class BadExponent(UmbralError):
    pass


class UnsupportedDilatePower(UmbralError):
    pass


class BadModulus(UmbralError):
    pass


class EmptyMixture(UmbralError):
    pass


class ZeroDenominator(UmbralError):
    pass


class TailNotConvergent(UmbralError):
    pass


# sequences and families
class NotInvertible(UmbralError):
    pass


class NotInversePair(UmbralError):
    pass


class BadParams(UmbralError):
    pass


class UnsupportedFamily(UmbralError):
    pass


# numerics
class DomainError(UmbralError):
    pass


class TruncationFailure(UmbralError):
    pass


class NoConvergence(UmbralError):
    pass


class RayDivergence(UmbralError):
    pass


# spec files
class ParseError(UmbralError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(UmbralError):
    pass
