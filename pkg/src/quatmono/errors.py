"""Exception hierarchy shared by every quatmono module."""


class QuatMonoError(Exception):
    """Base class for all library errors."""


class SingularError(QuatMonoError, ArithmeticError):
    """Element of H(C) has no two-sided inverse."""


class DegeneratePencil(QuatMonoError):
    """The defining system of a degeneracy line has a plane of solutions."""


class ParseError(QuatMonoError, ValueError):
    """Expression source could not be parsed.

    ``offset`` is the byte offset into the UTF-8 encoded source.
    """

    def __init__(self, message, source="", offset=0):
        self.source = source
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})")


class ExprSyntaxError(ParseError):
    pass


class UnknownFunction(ParseError):
    pass


class NonIntegerExponent(ParseError):
    pass


class EvaluationError(QuatMonoError, ArithmeticError):
    pass


class PoleError(EvaluationError, ZeroDivisionError):
    """Divisor modulus fell below the pole threshold."""


class RadiusExceeded(EvaluationError):
    """Power series requested at or beyond its radius of convergence."""


class NotHMonogenic(QuatMonoError):
    pass


class RankDeficientFrame(QuatMonoError):
    pass


class FrameMismatch(QuatMonoError, ValueError):
    pass


class DegenerateTriangle(QuatMonoError, ValueError):
    pass


class EmptySampleSet(QuatMonoError):
    pass


class NotAnalyticMap(QuatMonoError, TypeError):
    """Operation needs analytic F_k but the map only has raw components."""
