"""
Exception hierarchy for ppgroup.
Partial actions signal "undefined" by returning None; everything below is raised
when a caller asked for something that cannot be done.
"""
from typing import List, Optional


class PPGroupError(Exception):
    """Base class for all errors raised by ppgroup."""


class WordParseError(PPGroupError, ValueError):
    """Raised on malformed word, sequence or B-word text."""

    def __init__(self, text: str, position: int, expected: List[str], detail: Optional[str] = None):
        self.text = text
        self.position = position
        self.expected = list(expected)
        self.detail = detail
        message = f"parse error at position {position} in {text!r}: expected {' or '.join(self.expected)}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class UndefinedActionError(PPGroupError):
    """A partial action on a finite word was required but is undefined."""


class RuleApplicationError(PPGroupError):
    """A derivation rule was applied where its side condition fails."""


class InsufficientDepthError(PPGroupError):
    """The Y-part is too shallow to commute an X-word past it."""


class DerivationLimitExceeded(PPGroupError):
    """The rewrite engine ran out of its step budget."""


class NotSufficientlyExpandedError(PPGroupError):
    """A witness was requested for a form that is not sufficiently expanded."""


class NoWitnessError(PPGroupError):
    """No non-F witness exists (the form is an X-word, or has an X-part when a pure Y-word was required)."""


class BWordError(PPGroupError):
    """An advancement is impossible or a forbidden potential cancellation is present."""


class DiagramError(PPGroupError):
    """An impossible operation on a labeled tree or tree diagram."""


class AlphabetError(PPGroupError):
    """A letter cannot be written over the requested finite alphabet."""


class SearchLimitExceeded(PPGroupError):
    """A breadth-first search exhausted its state budget."""


class CrossCheckError(PPGroupError):
    """Pointwise sampling disagrees with an exact result."""


class TerminationMeasureError(PPGroupError):
    """An expansion step failed to decrease the termination measure."""
