"""Exception types shared across the library."""


class LogdivError(Exception):
    """Base class for all library errors."""


class AmbientMismatch(LogdivError):
    """Operands live in different ambient rings or modules."""


class ShapeError(LogdivError):
    """Matrix or vector has the wrong shape for the requested operation."""


class InvalidDivisor(LogdivError):
    """The defining equation is zero, constant, or not reduced."""


class InvalidArgument(LogdivError):
    """An argument violates a documented precondition."""


class NotInSpan(LogdivError):
    """Lifting an element over the given generators failed."""


class IntegrabilityViolation(LogdivError):
    """Connection matrices do not satisfy the curvature identity."""


class DenominatorEscape(LogdivError):
    """A non-logarithmic field applied to an h-denominator fraction."""


class ParseError(LogdivError):
    """Malformed polynomial or operator text."""
