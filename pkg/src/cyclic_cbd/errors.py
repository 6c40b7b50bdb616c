"""Exception hierarchy.

Malformed input raises :class:`ParseError`, invalid systems
:class:`ValidationError`, measure precondition failures :class:`MeasureError`
and solver trouble :class:`SolverError`. The CLI maps these onto distinct exit
codes.
"""


class CbdError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CbdError, ValueError):
    """Malformed input document: bad syntax, wrong types, unknown fields."""


class ValidationError(CbdError, ValueError):
    pass


class RankTooSmall(ValidationError):
    pass


class OutOfRange(ValidationError):
    def __init__(self, field, value):
        super().__init__(f"{field}={value!r} is outside [0, 1]")
        self.field = field
        self.value = value


class FrechetViolation(ValidationError):
    def __init__(self, context, side, value, bound):
        rel = "<" if side == "lower" else ">"
        super().__init__(
            f"context {context}: bunch product {value!r} {rel} {side} Frechet bound {bound!r}"
        )
        self.context = context
        self.side = side


class EmptyContext(ValidationError):
    pass


class TooManyVariables(ValidationError):
    pass


class RankTooLarge(ValidationError):
    pass


class BadRank(ValidationError):
    pass


class MeasureError(CbdError, ValueError):
    pass


class EmptyVector(MeasureError):
    pass


class NotContextual(MeasureError):
    pass


class IsContextual(MeasureError):
    pass


class DegenerateBox(MeasureError):
    """The circumscribing box is flat because some variable is deterministic."""


class OutsideBox(MeasureError):
    pass


class BadExponent(MeasureError):
    pass


class EvenVertex(MeasureError):
    pass


class BadDelta(MeasureError):
    pass


class SamplesTooFew(CbdError, ValueError):
    pass


class SolverError(CbdError, RuntimeError):
    pass


class NumericalFailure(SolverError):
    pass


class Unbounded(SolverError):
    pass
