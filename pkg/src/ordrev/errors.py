"""Exception hierarchy for ordrev.

Validation errors inherit ValueError as well, so callers that only care about
"bad input" can catch the builtin.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into the DSL input text."""
    start: int
    end: int

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end}


class OrdrevError(Exception):
    """Base class for every error raised by ordrev."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.message} (bytes {self.span.start}-{self.span.end})"


class MalformedCNF(OrdrevError, ValueError):
    """Term list is not a Cantor normal form (exponent order or zero coefficient)."""


class InvalidPresentation(OrdrevError, ValueError):
    """A chain entry or multiset violates its structural invariants."""


class EmptyFamily(OrdrevError, ValueError):
    """A family presentation has no entries."""


class ZeroOrdinal(OrdrevError, ValueError):
    """A chain would have order type 0."""


class ZeroValue(OrdrevError, ValueError):
    """A natural-number multiset would contain 0."""


class OrientationMixed(OrdrevError, ValueError):
    """Infinite chains of the wrong (or of both) orientations were supplied."""


class NotLimit(OrdrevError, ValueError):
    """An ordinal expected to be a limit ordinal is 0 or a successor."""


class AlphaTooBig(OrdrevError, ValueError):
    """The prefix ordinal exceeds the ordinal it should embed into."""


class NotNonReversible(OrdrevError, ValueError):
    """A witness was requested for a reversible verdict."""


class ParseError(OrdrevError, ValueError):
    """DSL input could not be parsed."""

    def __init__(
        self,
        message: str,
        span: SourceSpan | None = None,
        expected: frozenset[str] = frozenset(),
    ):
        super().__init__(message, span)
        self.expected = expected

    def __str__(self) -> str:
        text = super().__str__()
        if self.expected:
            text += f"; expected one of: {', '.join(sorted(self.expected))}"
        return text


class InvariantViolation(OrdrevError, RuntimeError):
    """Two independent computations disagreed. Indicates a bug."""
