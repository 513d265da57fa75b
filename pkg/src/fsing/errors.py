"""Exception hierarchy shared across the package."""


class FsingError(Exception):
    """Base class for all package errors."""


class ZeroInverse(FsingError, ZeroDivisionError):
    pass


class NonPrimeCharacteristic(FsingError, ValueError):
    pass


class ZeroPolynomial(FsingError, ValueError):
    pass


class NonHomogeneous(FsingError, ValueError):
    pass


class ExponentOverflow(FsingError, OverflowError):
    pass


class UnitIdeal(FsingError, ValueError):
    pass


class CapExceeded(FsingError):
    """A configurable work budget was exhausted; callers report "unknown"."""


class PairCapExceeded(CapExceeded):
    pass


class DimensionCapExceeded(CapExceeded):
    pass


class LiftFailure(FsingError):
    """A chain-map lift did not exist. Over free modules this signals a bug."""


class WindowTooSmall(FsingError, ValueError):
    pass


class NotStabilized(FsingError):
    pass


class PreconditionViolated(FsingError, ValueError):
    pass


class ParseError(FsingError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class UnknownFixture(FsingError, KeyError):
    pass


class NotRegular(FsingError, ValueError):
    pass
