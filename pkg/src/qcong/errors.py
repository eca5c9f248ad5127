"""Exception hierarchy for qcong."""


class QCongError(Exception):
    """Base class for all qcong errors."""


class NotDivisible(QCongError, ArithmeticError):
    pass


class ZeroDenominator(QCongError, ZeroDivisionError):
    pass


class DivideByZeroPoly(QCongError, ZeroDivisionError):
    pass


class PoleAtPoint(QCongError, ZeroDivisionError):
    pass


class UnresolvedSymbol(QCongError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unresolved symbol {self.name!r}"


class DenominatorIdenticallyZero(QCongError, ZeroDivisionError):
    pass


class UnsupportedFactor(QCongError, ValueError):
    """A binomial factor outside what the exact factorizer can split."""


class ClaimSyntaxError(QCongError, SyntaxError):
    def __init__(self, message, line=None, column=None, source=None):
        self.msg_text = message
        self.line = line
        self.column = column
        self.source_name = source
        super().__init__(message)

    def __str__(self):
        where = ""
        if self.source_name:
            where += f"{self.source_name}:"
        if self.line is not None:
            where += f"{self.line}:{self.column}: "
        elif where:
            where += " "
        return f"{where}{self.msg_text}"


class ValidationError(QCongError, ValueError):
    pass


class SideConditionViolated(ValidationError):
    pass


class NonIntegralBound(ValidationError):
    pass


class DuplicateClaim(QCongError, ValueError):
    pass


class NonTruncatable(QCongError, ValueError):
    pass


class PoleBeforeTruncation(QCongError, ZeroDivisionError):
    pass


class PrimeConditionViolated(SideConditionViolated):
    pass


class NotPadicInteger(QCongError, ValueError):
    pass
