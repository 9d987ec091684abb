"""Exception hierarchy shared by every module."""


class ConcatBlockingError(Exception):
    """Base class for all library errors."""


class NotPrime(ConcatBlockingError, ValueError):
    pass


class Overflow(ConcatBlockingError, ValueError):
    pass


class DivisionByZero(ConcatBlockingError, ZeroDivisionError):
    pass


class LogOfZero(ConcatBlockingError, ValueError):
    pass


class TooLarge(ConcatBlockingError):
    """An enumeration guard was exceeded."""


class BadParams(ConcatBlockingError, ValueError):
    pass


class BadDim(BadParams):
    pass


class DomainError(ConcatBlockingError, ValueError):
    pass


class LengthTooLong(BadParams):
    pass


class RankDeficient(ConcatBlockingError, ValueError):
    pass


class ValueOutOfRange(ConcatBlockingError, ValueError):
    pass


class GmatSyntaxError(ConcatBlockingError, ValueError):
    """Malformed ``.gmat`` or ``.pts`` text."""


class FieldMismatch(ConcatBlockingError, ValueError):
    pass


class NotFound(ConcatBlockingError):
    pass


class NotSpanning(ConcatBlockingError, ValueError):
    pass


class DegenerateColumn(ConcatBlockingError, ValueError):
    pass


class ZeroCodeword(ConcatBlockingError, ValueError):
    pass
