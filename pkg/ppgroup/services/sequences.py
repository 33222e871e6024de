"""
Finite and eventually periodic binary sequences.
- Finite words are plain strings over "01"; the empty word is "".
- Infinite sequences are eventually periodic pairs kept in canonical form,
  so value equality is structural equality.
- Lexicographic order in which a proper extension counts as smaller.
- Prefix sets (leaf sets of finite binary trees), dominance and minimal covers.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Tuple

logger = logging.getLogger(__name__)

FiniteWord = str

BITS = frozenset("01")


def check_word(word: str) -> FiniteWord:
    """Returns `word` unchanged if it is a binary word, raises ValueError otherwise."""
    if not BITS.issuperset(word):
        raise ValueError(f"not a binary word: {word!r}")
    return word


def is_prefix(s: FiniteWord, t: FiniteWord) -> bool:
    """s ⊆ t."""
    return t.startswith(s)


def is_proper_prefix(s: FiniteWord, t: FiniteWord) -> bool:
    """s ⊂ t."""
    return len(s) < len(t) and t.startswith(s)


def is_incompatible(s: FiniteWord, t: FiniteWord) -> bool:
    return not (t.startswith(s) or s.startswith(t))


def is_constant(s: FiniteWord) -> bool:
    """True for the empty word and for words using a single digit."""
    return len(set(s)) <= 1


def complement(s: FiniteWord) -> FiniteWord:
    return s.translate(str.maketrans("01", "10"))


def render_word(s: FiniteWord) -> str:
    return s if s else "e"


class LexOrder(Enum):
    """
    Outcome of lex_compare. The two *_EXTENSION members mark the comparable case,
    where one word strictly extends the other; the extension is the smaller one.
    """
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    LESS_BY_EXTENSION = "less-by-extension"
    GREATER_BY_EXTENSION = "greater-by-extension"

    @property
    def sign(self) -> int:
        if self in (LexOrder.LESS, LexOrder.LESS_BY_EXTENSION):
            return -1
        if self is LexOrder.EQUAL:
            return 0
        return 1

    @property
    def is_less(self) -> bool:
        return self.sign < 0

    @property
    def comparable(self) -> bool:
        """True when one word is a proper prefix of the other."""
        return self in (LexOrder.LESS_BY_EXTENSION, LexOrder.GREATER_BY_EXTENSION)


def lex_compare(s: FiniteWord, t: FiniteWord) -> LexOrder:
    if s == t:
        return LexOrder.EQUAL
    if s.startswith(t):
        return LexOrder.LESS_BY_EXTENSION
    if t.startswith(s):
        return LexOrder.GREATER_BY_EXTENSION
    for a, b in zip(s, t):
        if a != b:
            return LexOrder.LESS if a < b else LexOrder.GREATER
    raise AssertionError("unreachable")


def lex_key(s: FiniteWord) -> Tuple[int, ...]:
    """Sort key realizing <_lex: a terminator larger than both digits puts extensions first."""
    return tuple(int(c) for c in s) + (2,)


def lex_sorted(words: Iterable[FiniteWord]) -> List[FiniteWord]:
    return sorted(words, key=lex_key)


def _primitive_root(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    """
    The infinite sequence preperiod·period·period·…, stored canonically:
    primitive period and shortest preperiod.
    """
    preperiod: str
    period: str

    def __post_init__(self):
        check_word(self.preperiod)
        check_word(self.period)
        if not self.period:
            raise ValueError("period must be nonempty")
        pre, per = self.preperiod, _primitive_root(self.period)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def constant(cls, digit: str) -> "EventuallyPeriodicSeq":
        return cls("", digit)

    def __str__(self) -> str:
        return f"{self.preperiod}({self.period})"

    def digit(self, index: int) -> str:
        if index < len(self.preperiod):
            return self.preperiod[index]
        return self.period[(index - len(self.preperiod)) % len(self.period)]

    def prefix(self, length: int) -> FiniteWord:
        return "".join(self.digit(i) for i in range(length))

    def startswith(self, word: FiniteWord) -> bool:
        return self.prefix(len(word)) == word

    def drop(self, count: int) -> "EventuallyPeriodicSeq":
        """The tail after the first `count` digits."""
        if count <= len(self.preperiod):
            return EventuallyPeriodicSeq(self.preperiod[count:], self.period)
        k = (count - len(self.preperiod)) % len(self.period)
        return EventuallyPeriodicSeq("", self.period[k:] + self.period[:k])

    def prepend(self, word: FiniteWord) -> "EventuallyPeriodicSeq":
        return EventuallyPeriodicSeq(word + self.preperiod, self.period)

    def complement(self) -> "EventuallyPeriodicSeq":
        return EventuallyPeriodicSeq(complement(self.preperiod), complement(self.period))

    @property
    def constant_tail(self) -> Optional[str]:
        """The digit d if the sequence ends in d̄, else None."""
        return self.period if len(self.period) == 1 else None

    @property
    def size(self) -> int:
        return len(self.preperiod) + len(self.period)


def tail_equivalent(xi: EventuallyPeriodicSeq, eta: EventuallyPeriodicSeq) -> bool:
    """Some suffix of xi equals some suffix of eta: the primitive periods agree up to rotation."""
    if len(xi.period) != len(eta.period):
        return False
    return eta.period in xi.period + xi.period


def is_prefix_set(words: Iterable[FiniteWord]) -> bool:
    """Leaf condition: the words are exactly the leaves of a finite rooted binary tree."""
    members = set(words)
    if len(members) == 0:
        return False
    return _is_leaf_set(members, "")


def _is_leaf_set(members: set, base: str) -> bool:
    if base in members:
        return len(members) == 1
    zero = {w for w in members if w.startswith(base + "0")}
    one = {w for w in members if w.startswith(base + "1")}
    if not zero or not one or len(zero) + len(one) != len(members):
        return False
    return _is_leaf_set(zero, base + "0") and _is_leaf_set(one, base + "1")


@dataclass(frozen=True)
class PrefixSet:
    """An element of the tree set: a maximal antichain of binary words, stored sorted."""
    members: Tuple[FiniteWord, ...] = field(default=("",))

    def __post_init__(self):
        words = tuple(lex_sorted(set(self.members)))
        if not is_prefix_set(words):
            raise ValueError(f"not a prefix set: {sorted(self.members)}")
        object.__setattr__(self, "members", words)

    @classmethod
    def of(cls, words: Iterable[FiniteWord]) -> "PrefixSet":
        return cls(tuple(words))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[FiniteWord]:
        return iter(self.members)

    def __contains__(self, word: object) -> bool:
        return word in self.members

    def index(self, word: FiniteWord) -> int:
        return self.members.index(word)

    def vertices(self) -> List[FiniteWord]:
        """All vertices of the tree (prefixes of members), in lex order."""
        return lex_sorted({w[:i] for w in self.members for i in range(len(w) + 1)})

    def internal_vertices(self) -> List[FiniteWord]:
        return lex_sorted({w[:i] for w in self.members for i in range(len(w))})

    def leaf_over(self, word: FiniteWord) -> Optional[FiniteWord]:
        """The member that is a prefix of `word`, if any."""
        for member in self.members:
            if word.startswith(member):
                return member
        return None

    def split(self, leaf: FiniteWord) -> "PrefixSet":
        """Hang a caret below `leaf`."""
        if leaf not in self.members:
            raise ValueError(f"{leaf!r} is not a leaf")
        return PrefixSet(tuple(w for w in self.members if w != leaf) + (leaf + "0", leaf + "1"))

    def __str__(self) -> str:
        return "{" + ", ".join(render_word(w) for w in self.members) + "}"


def dominates(big: PrefixSet, small: PrefixSet) -> bool:
    """True iff every element of `small` has an extension in `big`."""
    return all(any(t.startswith(s) for t in big) for s in small)


def minimal_cover(words: Iterable[FiniteWord]) -> PrefixSet:
    """The dominance-minimal prefix set in which every given word has an extension."""
    internal = {w[:i] for w in words for i in range(len(w))}
    if not internal:
        return PrefixSet(("",))
    leaves = {v + d for v in internal for d in "01" if v + d not in internal}
    return PrefixSet(tuple(leaves))


def words_up_to(max_length: int) -> List[FiniteWord]:
    """All binary words of length ≤ max_length, shortest first."""
    words = [""]
    frontier = [""]
    for _ in range(max_length):
        frontier = [w + d for w in frontier for d in "01"]
        words.extend(frontier)
    return words
