"""Exception hierarchy shared by every qtrans module."""


class QtransError(Exception):
    """Base class for all library errors."""


class ParseError(QtransError, ValueError):
    """Malformed expression text.  ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DimensionError(QtransError, ValueError):
    """Arity or shape mismatch between operands."""


class NotQuasiTranslationError(QtransError, ValueError):
    """An operation that requires a quasi-translation received something else."""


class VerificationError(QtransError, AssertionError):
    """A mathematical self-check failed.

    Every operation re-verifies its output by an independent route; this is
    raised when the two routes disagree, which indicates either a bug or an
    input that violates a stated precondition.
    """


class DegreeCapExceeded(QtransError):
    """A bounded search ran out of degrees without settling the question."""
