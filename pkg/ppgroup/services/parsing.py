"""
Text syntax shared by the command line and the tests.
- Words: terms like `x`, `y[10]^-2`, `a`, `b^3`, `c`, applied left to right; `e` is the empty word.
- Finite binary words: bit strings, `e` for the empty word.
- Eventually periodic sequences: `pre(period)`, e.g. `10(01)`, `(0)`.
- B-words: symbols `0 1 y Y` with `Y` standing for y⁻¹.
"""

import logging
import re
from typing import List

from ppgroup.exceptions import WordParseError
from ppgroup.services.action import ABC_GENERATORS, Generator, GeneratorKind, Letter, SWord
from ppgroup.services.sequences import EventuallyPeriodicSeq, FiniteWord

logger = logging.getLogger(__name__)

_TERM_START = ["'x'", "'y'", "'a'", "'b'", "'c'"]
_EXPONENT = re.compile(r"\^(-?\d+)")
_BITS = re.compile(r"[01]*")


def parse_word(text: str) -> SWord:
    """Parse a word; raises WordParseError naming the position and the expected tokens."""
    stripped = text.strip()
    if stripped in ("", "e"):
        return SWord()
    letters: List[Letter] = []
    position = 0
    length = len(text)
    while True:
        while position < length and text[position].isspace():
            position += 1
        if position >= length:
            break
        head = text[position]
        if head in ABC_GENERATORS:
            generator = ABC_GENERATORS[head]
            position += 1
        elif head in ("x", "y"):
            kind = GeneratorKind.X if head == "x" else GeneratorKind.Y
            position += 1
            subscript = ""
            if position < length and text[position] == "[":
                close = text.find("]", position)
                if close < 0:
                    raise WordParseError(text, length, ["']'"], "unterminated subscript")
                body = text[position + 1:close]
                if body == "e":
                    body = ""
                if not _BITS.fullmatch(body):
                    bad = position + 1 + next(i for i, ch in enumerate(body) if ch not in "01")
                    raise WordParseError(text, bad, ["'0'", "'1'", "']'"], "subscripts are binary words")
                subscript = body
                position = close + 1
            generator = Generator(kind, subscript)
        else:
            raise WordParseError(text, position, _TERM_START)
        exponent = 1
        if position < length and text[position] == "^":
            match = _EXPONENT.match(text, position)
            if match is None:
                raise WordParseError(text, position + 1, ["integer exponent"])
            exponent = int(match.group(1))
            if exponent == 0:
                raise WordParseError(text, match.start(1), ["nonzero exponent"])
            position = match.end()
        letters.append((generator, exponent))
    logger.debug(f"Parsed {text!r} into {len(letters)} letters.")
    return SWord(tuple(letters))


def parse_finite_word(text: str) -> FiniteWord:
    stripped = text.strip()
    if stripped == "e":
        return ""
    for index, ch in enumerate(stripped):
        if ch not in "01":
            raise WordParseError(text, index, ["'0'", "'1'"], "finite words are bit strings, 'e' for empty")
    return stripped


def parse_sequence(text: str) -> EventuallyPeriodicSeq:
    """`pre(period)`; the preperiod may be empty or `e`."""
    stripped = text.strip()
    open_at = stripped.find("(")
    if open_at < 0:
        raise WordParseError(text, len(stripped), ["'('"], "sequences need a parenthesised period")
    if not stripped.endswith(")"):
        raise WordParseError(text, len(stripped), ["')'"])
    pre = stripped[:open_at]
    period = stripped[open_at + 1:-1]
    if pre == "e":
        pre = ""
    for index, ch in enumerate(pre):
        if ch not in "01":
            raise WordParseError(text, index, ["'0'", "'1'", "'('"])
    if not period:
        raise WordParseError(text, open_at + 1, ["'0'", "'1'"], "the period must be nonempty")
    for index, ch in enumerate(period):
        if ch not in "01":
            raise WordParseError(text, open_at + 1 + index, ["'0'", "'1'", "')'"])
    return EventuallyPeriodicSeq(pre, period)


def parse_bword(text: str) -> str:
    stripped = text.strip()
    for index, ch in enumerate(stripped):
        if ch not in "01yY":
            raise WordParseError(text, index, ["'0'", "'1'", "'y'", "'Y'"])
    return stripped
