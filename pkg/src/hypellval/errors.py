"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI:
  2 -- bad input (InputError subclasses)
  3 -- precision exhausted after the retry ladder
  4 -- internal invariant breach
"""


class HypellvalError(Exception):
    pass


# --- input / construction errors (CLI exit code 2) ---

class InputError(HypellvalError):
    pass


class NotPrime(InputError):
    pass


class DegreeOutOfRange(InputError):
    pass


class PrecisionTooSmall(InputError):
    pass


class PolySyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class XInDenominator(InputError):
    pass


class NotAPolynomialInX(InputError):
    pass


class NotSquareFree(InputError):
    pass


class CharTooSmall(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


# --- arithmetic errors ---

class FieldMismatch(HypellvalError):
    pass


class ZeroPolynomial(HypellvalError):
    pass


class NoEmbedding(HypellvalError):
    pass


class DivisionByZero(HypellvalError):
    pass


class PrecisionExhausted(HypellvalError):
    """A valuation or residue could not be determined at current precision."""


class NegativeValuation(HypellvalError):
    pass


class NotIrreducible(HypellvalError):
    pass


class WildRamification(HypellvalError):
    pass


class OrderMismatch(HypellvalError):
    pass


class NotSimpleRoot(HypellvalError):
    pass


class NotPrimitive(HypellvalError):
    pass


class EmptyHull(HypellvalError):
    pass


# --- pipeline errors ---

class NotPurelyInseparable(HypellvalError):
    pass


class NotAFactor(HypellvalError):
    pass


class DepthExceeded(HypellvalError):
    """Safety cap breached; signals a bug, not an input problem."""


class InternalInconsistency(HypellvalError):
    """An element that must be a unit (or an exact zero) failed its check."""
