"""Exception types shared across the package."""


class AmbError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AmbError):
    """Syntax error with source position and the tokens that were expected."""

    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        suffix = ""
        if self.expected:
            suffix = " (expected %s)" % ", ".join(self.expected)
        super().__init__("%d:%d: %s%s" % (line, col, message, suffix))


class OpenTermError(AmbError):
    """An operation that requires a closed program met a free variable."""


class NonRegularTypeError(AmbError):
    """A type failed the regularity check where a regular type is required."""


class TypeSynthesisError(AmbError):
    """The bidirectional checker could not synthesize a type for a subterm."""


class BudgetError(AmbError):
    """A search exceeded its configured node budget."""


class FuelExhaustedError(AmbError):
    """A run stopped on fuel before producing the requested output.

    Carries whatever partial output was decoded so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class MalformedOutputError(AmbError):
    """Decoding met a node that cannot be part of a well-formed digit stream."""


class OutOfRangeError(AmbError):
    """A rational argument fell outside the unit interval."""


class InvalidPickError(AmbError):
    """A scheduler pick named an action that is not available at its locus."""


class UnfairScheduleError(AmbError):
    """An explicit schedule starved a live choice side beyond its window."""
