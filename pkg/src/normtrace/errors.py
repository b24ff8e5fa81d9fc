"""Exception hierarchy shared by every module of the package."""


class NormTraceError(Exception):
    """Base class for all errors raised by normtrace."""


class NotPrime(NormTraceError, ValueError):
    pass


class LevelMismatch(NormTraceError, TypeError):
    pass


class DivisionByZero(NormTraceError, ZeroDivisionError):
    pass


class ZeroArgument(NormTraceError, ValueError):
    pass


class ZeroAlpha(ZeroArgument):
    pass


class ZeroU(ZeroArgument):
    pass


class SearchExhausted(NormTraceError, RuntimeError):
    """No irreducible/primitive element found; cannot happen for valid input."""


class ScaleExceeded(NormTraceError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} exceeds enumeration cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class TrivialCharacter(NormTraceError, ValueError):
    pass


class EvenCharacteristic(NormTraceError, ValueError):
    pass


class RoundingTooLarge(NormTraceError, ArithmeticError):
    """A floating character-sum evaluation is too far from an integer."""

    def __init__(self, value, residual, limit):
        super().__init__(f"value {value!r}: rounding residual {residual:.3e} >= {limit:.3e}")
        self.value = value
        self.residual = residual
        self.limit = limit


class NonIntegerResult(NormTraceError, ArithmeticError):
    pass


class DivisibilityViolation(NormTraceError, ArithmeticError):
    pass
