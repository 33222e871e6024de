"""
Presentations of the group: the relation families, the two finite presentations,
and the definitions of every generator as a word over a finite alphabet.

- f_word / conjugating_element: breadth-first search over the partial action of {x, x[1]}.
- expand_to_finite_generators: rewrites x_s, y_s over {x, x[1], y[0], y[1], y[10]} or {a, b, c}.
- relation_instances / nine_relations: the relations, as (lhs, rhs) pairs of words;
  corrected_nine_relations applies the abc-form errata.
"""

import logging
from collections import deque
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from ppgroup.exceptions import AlphabetError, SearchLimitExceeded, UndefinedActionError
from ppgroup.services.action import Generator, SWord, partial_apply_finite, partial_apply_word
from ppgroup.services.parsing import parse_word
from ppgroup.services.rewrite import EXPANSION_CHILDREN
from ppgroup.services.sequences import (
    FiniteWord,
    check_word,
    is_constant,
    is_incompatible,
    lex_compare,
    render_word,
    words_up_to,
)
from ppgroup.services.settings_manager import get_setting

logger = logging.getLogger(__name__)

Relation = Tuple[SWord, SWord]


class Alphabet(Enum):
    FIVE = "five"
    THREE = "three"


class RelationForm(Enum):
    XY = "xy"
    ABC = "abc"


# Breadth-first search order: x < x^-1 < x[1] < x[1]^-1.
F_MOVES: Tuple[Tuple[Generator, int], ...] = (
    (Generator.x(""), 1),
    (Generator.x(""), -1),
    (Generator.x("1"), 1),
    (Generator.x("1"), -1),
)

_XY_NINE = (
    ("x[1] x^-2 x[1] x", "x^-1 x[1] x x[1] x^-1"),
    ("x[1] x^-3 x[1] x^2", "x^-2 x[1] x^2 x[1] x^-1"),
    ("y[10] x[0]", "x[0] y[10]"),
    ("y[10] x[01]", "x[01] y[10]"),
    ("y[10] x[11]", "x[11] y[10]"),
    ("y[10] x[111]", "x[111] y[10]"),
    ("y[01] y[10]", "y[10] y[01]"),
    ("y[001] y[10]", "y[10] y[001]"),
    ("y[10]", "x[10] y[100] y[1010]^-1 y[1011]"),
)

_ABC_NINE = (
    ("b a^-2 b a", "a^-1 b a b a^-1"),
    ("b a^-1 a^-2 b a^2", "a^-2 b a^2 b a^-1"),
    ("c a^2 b^-1 a^-1", "a^2 b^-1 a^-1 c"),
    ("c b^2 a^-1 b a b", "b^2 a^-1 b a b c"),
    ("c a^-1 b a", "a^-1 b a c"),
    ("c a^-2 b a^2", "a^-2 b a^2 c"),
    ("c a c a^-1", "a c a^-1 c"),
    ("c a^2 c a^-2", "a^2 c a^-2 c"),
    ("c", "b^2 a^-1 b^-1 a c b^-2 a b^-1 c^-1 b a^-1 b a b^-1 a b^-1 c b a^-1 b a^-1"),
)

# 1-based numbers of the transcribed abc relations that fail; 9 is respelled from the xy form.
ABC_NINE_ERRATA = (4, 9)
_ABC_NINE_ERRATA = {
    4: ("c a b^2 a^-1 b^-1 a b^-1 a^-1", "a b^2 a^-1 b^-1 a b^-1 a^-1 c"),
}


def _word_of_moves(moves: List[Tuple[Generator, int]]) -> SWord:
    return SWord(tuple(moves)).reduced()


@lru_cache(maxsize=None)
def f_word(s: FiniteWord) -> SWord:
    """
    The shortest word f in {x, x[1]} with ⟨10⟩.f = s under the partial action,
    ties broken by the move order x, x^-1, x[1], x[1]^-1.
    """
    check_word(s)
    if is_constant(s):
        raise UndefinedActionError(f"no word in x, x[1] maps 10 to the constant word {render_word(s)}")
    limit = get_setting("bfs_state_limit")
    parents: Dict[FiniteWord, Optional[Tuple[FiniteWord, Tuple[Generator, int]]]] = {"10": None}
    queue = deque(["10"])
    while queue:
        current = queue.popleft()
        if current == s:
            break
        for generator, sign in F_MOVES:
            image = partial_apply_finite(current, generator, sign)
            if image is None or image in parents:
                continue
            parents[image] = (current, (generator, sign))
            queue.append(image)
        if len(parents) > limit:
            raise SearchLimitExceeded(f"f_word({render_word(s)}) visited more than {limit} words")
    if s not in parents:
        raise UndefinedActionError(f"10 cannot be moved to {render_word(s)}")
    moves: List[Tuple[Generator, int]] = []
    node = s
    while parents[node] is not None:
        node, move = parents[node]
        moves.append(move)
    moves.reverse()
    logger.debug(f"f_word({render_word(s)}) has {len(moves)} letters after visiting {len(parents)} words")
    return _word_of_moves(moves)


@lru_cache(maxsize=None)
def conjugating_element(u: FiniteWord, v: FiniteWord) -> Tuple[SWord, FiniteWord, FiniteWord]:
    """
    For incompatible u <_lex v, an X-word g with s.g = u and t.g = v where s, t have
    length at most 3. Searches from (u, v) until both words are short, then inverts the path.
    """
    check_word(u)
    check_word(v)
    if not is_incompatible(u, v):
        raise ValueError(f"{render_word(u)} and {render_word(v)} are not incompatible")
    if not lex_compare(u, v).is_less:
        raise ValueError(f"expected {render_word(u)} <lex {render_word(v)}")
    limit = get_setting("bfs_state_limit")
    start = (u, v)
    parents: Dict[Tuple[str, str], Optional[Tuple[Tuple[str, str], Tuple[Generator, int]]]] = {start: None}
    queue = deque([start])
    found: Optional[Tuple[str, str]] = None
    while queue:
        current = queue.popleft()
        if len(current[0]) <= 3 and len(current[1]) <= 3:
            found = current
            break
        for generator, sign in F_MOVES:
            first = partial_apply_finite(current[0], generator, sign)
            second = partial_apply_finite(current[1], generator, sign)
            if first is None or second is None:
                continue
            pair = (first, second)
            if pair in parents:
                continue
            parents[pair] = (current, (generator, sign))
            queue.append(pair)
        if len(parents) > limit:
            raise SearchLimitExceeded(f"conjugating_element visited more than {limit} pairs")
    if found is None:
        raise SearchLimitExceeded(f"no short pair reachable from ({render_word(u)}, {render_word(v)})")
    moves: List[Tuple[Generator, int]] = []
    node = found
    while parents[node] is not None:
        node, move = parents[node]
        moves.append(move)
    moves.reverse()
    path = _word_of_moves(moves)
    return ~path, found[0], found[1]


def conjugate_x_through(s: FiniteWord, g: SWord) -> Generator:
    """x_{s.g}, the generator with x_s g = g x_{s.g}."""
    if not g.is_x_word:
        raise ValueError(f"{g} is not an X-word")
    image = partial_apply_word(s, g)
    if image is None:
        raise UndefinedActionError(f"{render_word(s)}.({g}) is undefined")
    return Generator.x(image)


def y_class_representative(s: FiniteWord) -> FiniteWord:
    """Which of ε, ⟨0⟩, ⟨1⟩, ⟨10⟩ indexes the y-generator F-conjugate to y_s."""
    check_word(s)
    if not s:
        return ""
    if is_constant(s):
        return s[0]
    return "10"


def is_s0_word(word: SWord) -> bool:
    """True when no y-letter has a constant subscript."""
    return all(not (g.is_y and is_constant(g.subscript)) for g, _ in word.letters)


def _x(subscript: str, exponent: int = 1) -> SWord:
    return SWord.x(subscript, exponent)


def _y(subscript: str, exponent: int = 1) -> SWord:
    return SWord.y(subscript, exponent)


@lru_cache(maxsize=None)
def _definition(generator: Generator) -> SWord:
    """generator as a word over x, x[1], y[0], y[1], y[10]."""
    s = generator.subscript
    if generator.is_x:
        if s in ("", "1"):
            return SWord.of(generator)
        if s == "0":
            return _x("", 2) * _x("1", -1) * _x("", -1)
        if s == "10":
            return _x("1", 2) * _x("", -1) * _x("1", -1) * _x("") * _x("1", -1)
        if set(s) == {"0"}:
            n = len(s) - 1
            return _x("", n) * _definition(Generator.x("0")) * _x("", -n)
        if set(s) == {"1"}:
            n = len(s) - 1
            return _x("", -n) * _x("1") * _x("", n)
        f = f_word(s)
        return ~f * _definition(Generator.x("10")) * f
    if s in ("0", "1", "10"):
        return SWord.of(generator)
    if s == "":
        return _x("") * _y("0") * _y("10", -1) * _definition(Generator.y("11"))
    if set(s) == {"0"}:
        n = len(s) - 1
        return _x("", n) * _y("0") * _x("", -n)
    if set(s) == {"1"}:
        n = len(s) - 1
        return _x("", -n) * _y("1") * _x("", n)
    f = f_word(s)
    return ~f * _y("10") * f


def expand_to_finite_generators(word: SWord, alphabet: Union[Alphabet, str] = Alphabet.FIVE) -> SWord:
    """
    Rewrites every letter by its definition over the finite alphabet. The three-letter
    alphabet {a, b, c} = {x, x[1], y[10]} only reaches words without constant y-subscripts.
    """
    alphabet = Alphabet(alphabet)
    if alphabet is Alphabet.THREE and not is_s0_word(word):
        bad = [str(g) for g, _ in word.letters if g.is_y and is_constant(g.subscript)]
        raise AlphabetError(f"{', '.join(bad)} cannot be written over a, b, c")
    pieces = [_definition(g) ** n for g, n in word.letters]
    return SWord.concat(pieces).reduced()


def relation_instances(family: int, bound: int) -> List[Relation]:
    """
    All instances of relation family 1..5 with subscripts of length ≤ bound:
      1. x_s^2 = x_{s0} x_s x_{s1}
      2. x_t x_s = x_s x_{t.x_s}      (t.x_s defined)
      3. y_t x_s = x_s y_{t.x_s}      (t.x_s defined)
      4. y_s y_t = y_t y_s            (s, t incompatible)
      5. y_s = x_s y_{s0} y_{s10}^-1 y_{s11}
    """
    if family not in (1, 2, 3, 4, 5):
        raise ValueError(f"relation families are numbered 1 to 5, got {family}")
    if not 0 <= bound <= 8:
        raise ValueError(f"subscript bound must lie in 0..8, got {bound}")
    words = words_up_to(bound)
    relations: List[Relation] = []
    if family == 1:
        for s in words:
            relations.append((_x(s, 2), _x(s + "0") * _x(s) * _x(s + "1")))
    elif family in (2, 3):
        make = _x if family == 2 else _y
        for s in words:
            for t in words:
                image = partial_apply_finite(t, Generator.x(s), 1)
                if image is None:
                    continue
                relations.append((make(t) * _x(s), _x(s) * make(image)))
    elif family == 4:
        for s in words:
            for t in words:
                if is_incompatible(s, t):
                    relations.append((_y(s) * _y(t), _y(t) * _y(s)))
    else:
        for s in words:
            rhs = SWord.concat([_x(s)] + [_y(s + suffix, sign) for suffix, sign in EXPANSION_CHILDREN[1]])
            relations.append((_y(s), rhs))
    logger.debug(f"Family {family} has {len(relations)} instances up to length {bound}")
    return relations


def nine_relations(form: Union[RelationForm, str] = RelationForm.XY) -> List[Relation]:
    """The nine relations exactly as transcribed; see corrected_nine_relations for the abc form."""
    form = RelationForm(form)
    table = _XY_NINE if form is RelationForm.XY else _ABC_NINE
    return [(parse_word(lhs), parse_word(rhs)) for lhs, rhs in table]


def _abc_erratum(number: int) -> Relation:
    if number in _ABC_NINE_ERRATA:
        lhs, rhs = _ABC_NINE_ERRATA[number]
        return parse_word(lhs), parse_word(rhs)
    lhs, rhs = nine_relations(RelationForm.XY)[number - 1]
    return expand_to_finite_generators(lhs, Alphabet.THREE), expand_to_finite_generators(rhs, Alphabet.THREE)


def corrected_nine_relations(form: Union[RelationForm, str] = RelationForm.XY) -> List[Relation]:
    """
    The nine relations with the abc-form errata applied. Relations 4 and 9 of the
    transcribed abc list do not hold: 4 gets the abc spelling of x[01], and 9 is the
    xy relation 9 spelled over {a, b, c}. The xy form needs no correction.
    """
    relations = nine_relations(form)
    if RelationForm(form) is RelationForm.XY:
        return relations
    return [
        _abc_erratum(number) if number in ABC_NINE_ERRATA else relation
        for number, relation in enumerate(relations, start=1)
    ]


def support_disjoint(first: SWord, second: SWord) -> bool:
    """Every subscript of `first` is incompatible with every subscript of `second`."""
    return all(
        is_incompatible(g.subscript, h.subscript)
        for g, _ in first.letters
        for h, _ in second.letters
    )


def commuting_split(lhs: SWord, rhs: SWord) -> Optional[Tuple[SWord, SWord]]:
    """(P, Q) when lhs = P·Q and rhs = Q·P letter for letter."""
    letters, other = lhs.letters, rhs.letters
    if len(letters) != len(other):
        return None
    for k in range(1, len(letters)):
        if letters[k:] + letters[:k] == other:
            return SWord(letters[:k]), SWord(letters[k:])
    return None


def commutation_flag(lhs: SWord, rhs: SWord) -> Optional[bool]:
    """None unless lhs = P·Q and rhs = Q·P; then whether P and Q have disjoint supports."""
    split = commuting_split(lhs, rhs)
    return None if split is None else support_disjoint(*split)


def annotated_nine_relations(form: Union[RelationForm, str] = RelationForm.XY) -> List[Tuple[SWord, SWord, Optional[bool]]]:
    """
    The corrected nine relations with a disjoint-support flag for each commutation (None for the
    two others). Flags are read off the xy form, where subscripts show the supports.
    """
    flags = [commutation_flag(lhs, rhs) for lhs, rhs in nine_relations(RelationForm.XY)]
    return [(lhs, rhs, flag) for (lhs, rhs), flag in zip(corrected_nine_relations(form), flags)]
