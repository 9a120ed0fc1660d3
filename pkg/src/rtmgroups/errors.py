"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RTMError(Exception):
    """Base class for all library errors."""


class ValidationError(RTMError):
    """A local rule table violates one of its structural invariants."""


class MissingEntry(ValidationError):
    pass


class DuplicateEntry(ValidationError):
    pass


class SymbolOutOfRange(ValidationError):
    pass


class StateOutOfRange(ValidationError):
    pass


class DimsMismatch(RTMError):
    pass


class NotReversible(RTMError):
    """Raised when an operation needs a bijective machine.

    ``witness`` optionally holds two distinct configurations with equal image.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotBijective(RTMError):
    pass


class NotClassical(RTMError):
    pass


class NotRFA(RTMError):
    pass


class NotOneDimensional(RTMError):
    pass


class NotOblivious(RTMError):
    pass


class PeriodTooSmall(RTMError):
    pass


class RadiusBound(RTMError):
    pass


class NotAControlled3Cycle(RTMError):
    pass


class ParityObstruction(RTMError):
    pass


class EmptyPattern(RTMError):
    pass


class RTMSyntaxError(RTMError):
    """Parse failure in a text document, with 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
