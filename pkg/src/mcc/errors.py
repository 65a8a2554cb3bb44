"""Exception hierarchy shared by every module."""


class MccError(Exception):
    """Base class for all errors raised by the package."""


class DivisionByZero(MccError, ZeroDivisionError):
    pass


class NotPolynomial(MccError, ArithmeticError):
    """A rational function expected to be a polynomial has a nonconstant denominator.

    ``value`` is the reduced offending function, ``remainder`` is the integer
    pseudo-remainder of its numerator modulo its denominator.
    """

    def __init__(self, value, remainder):
        self.value = value
        self.remainder = remainder
        super().__init__(f"not a polynomial: {value} (remainder {remainder})")


class InvalidRange(MccError, ValueError):
    pass


class PoleAtPoint(MccError, ZeroDivisionError):
    pass


class InvalidDimension(MccError, ValueError):
    pass


class ParseError(MccError, ValueError):
    """Raised by the text parsers; ``offset`` is a byte offset into the input."""

    def __init__(self, offset: int, expected, text: str = ""):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        self.text = text
        found = text[offset:offset + 10] if offset < len(text) else "end of input"
        super().__init__(
            f"at offset {offset}: expected one of {', '.join(self.expected)}; found {found!r}"
        )


class UnsupportedIndex(MccError, ValueError):
    pass


class UnsupportedR(MccError, ValueError):
    pass


class NoFreeSlot(MccError, ValueError):
    pass


class MultipleFreeSlots(MccError, ValueError):
    pass


class DegreeMismatch(MccError, ValueError):
    pass


class AllFormsZero(MccError, ValueError):
    pass


class AlreadySemistable(MccError, ValueError):
    pass


class ZeroQuotient(MccError, ValueError):
    pass


class TooManyGenerators(MccError, ValueError):
    pass


class InvalidModel(MccError, ValueError):
    pass
