"""
The generators x_s and y_s acting on eventually periodic binary sequences.
- Generator / SWord: formal words over the localized generators.
- Transducer tables for x and y; y is a two-state machine whose states are y and y⁻¹.
- Exact application to sequences (with cycle detection) and the partial action of
  x_s on finite words.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ppgroup.services.sequences import (
    EventuallyPeriodicSeq,
    FiniteWord,
    check_word,
    is_incompatible,
)

logger = logging.getLogger(__name__)

# (consumed input, emitted output, next state). Rows of a state form a complete prefix code.
Rule = Tuple[str, str, Optional[int]]

Y_RULES: Dict[int, Tuple[Rule, ...]] = {
    +1: (("00", "0", +1), ("01", "10", -1), ("1", "11", +1)),
    -1: (("0", "00", -1), ("10", "01", +1), ("11", "1", -1)),
}

# x is one step of y followed by copying the rest (state None).
X_RULES: Dict[int, Tuple[Rule, ...]] = {
    sign: tuple((needed, emitted, None) for needed, emitted, _ in rules)
    for sign, rules in Y_RULES.items()
}


class GeneratorKind(Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class Generator:
    kind: GeneratorKind
    subscript: FiniteWord = ""

    def __post_init__(self):
        check_word(self.subscript)

    @classmethod
    def x(cls, subscript: FiniteWord = "") -> "Generator":
        return cls(GeneratorKind.X, subscript)

    @classmethod
    def y(cls, subscript: FiniteWord = "") -> "Generator":
        return cls(GeneratorKind.Y, subscript)

    @property
    def is_x(self) -> bool:
        return self.kind is GeneratorKind.X

    @property
    def is_y(self) -> bool:
        return self.kind is GeneratorKind.Y

    def render(self, abc: bool = False) -> str:
        if abc and self in ABC_NAMES:
            return ABC_NAMES[self]
        if not self.subscript:
            return self.kind.value
        return f"{self.kind.value}[{self.subscript}]"

    def __str__(self) -> str:
        return self.render()


ABC_GENERATORS: Dict[str, Generator] = {
    "a": Generator.x(""),
    "b": Generator.x("1"),
    "c": Generator.y("10"),
}
ABC_NAMES: Dict[Generator, str] = {g: name for name, g in ABC_GENERATORS.items()}

Letter = Tuple[Generator, int]


@dataclass(frozen=True)
class SWord:
    """
    A finite sequence of (generator, nonzero exponent) pairs, read left to right as
    successive applications. Adjacent letters are kept apart until reduced() is called.
    """
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((g, int(n)) for g, n in self.letters)
        for _, n in letters:
            if n == 0:
                raise ValueError("exponents must be nonzero")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, generator: Generator, exponent: int = 1) -> "SWord":
        return cls(((generator, exponent),))

    @classmethod
    def x(cls, subscript: FiniteWord = "", exponent: int = 1) -> "SWord":
        return cls.of(Generator.x(subscript), exponent)

    @classmethod
    def y(cls, subscript: FiniteWord = "", exponent: int = 1) -> "SWord":
        return cls.of(Generator.y(subscript), exponent)

    @classmethod
    def concat(cls, words: Iterable["SWord"]) -> "SWord":
        letters: List[Letter] = []
        for word in words:
            letters.extend(word.letters)
        return cls(tuple(letters))

    def __mul__(self, other: "SWord") -> "SWord":
        return SWord(self.letters + other.letters)

    def __invert__(self) -> "SWord":
        return SWord(tuple((g, -n) for g, n in reversed(self.letters)))

    def __pow__(self, exponent: int) -> "SWord":
        base = self if exponent >= 0 else ~self
        return SWord(base.letters * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    @property
    def length(self) -> int:
        """Total number of generator occurrences, counting exponents."""
        return sum(abs(n) for _, n in self.letters)

    def reduced(self) -> "SWord":
        """Free reduction: merge adjacent equal generators and drop zero exponents."""
        stack: List[Letter] = []
        for g, n in self.letters:
            if stack and stack[-1][0] == g:
                total = stack[-1][1] + n
                stack.pop()
                if total:
                    stack.append((g, total))
            else:
                stack.append((g, n))
        return SWord(tuple(stack))

    def unit_letters(self) -> List[Tuple[Generator, int]]:
        """Letters expanded to exponents ±1."""
        units = []
        for g, n in self.letters:
            sign = 1 if n > 0 else -1
            units.extend([(g, sign)] * abs(n))
        return units

    def generators(self) -> List[Generator]:
        return sorted({g for g, _ in self.letters}, key=lambda g: (g.kind.value, g.subscript))

    @property
    def is_x_word(self) -> bool:
        return all(g.is_x for g, _ in self.letters)

    @property
    def is_y_word(self) -> bool:
        return all(g.is_y for g, _ in self.letters)

    def render(self, abc: bool = False) -> str:
        if not self.letters:
            return "e"
        parts = []
        for g, n in self.letters:
            name = g.render(abc)
            parts.append(name if n == 1 else f"{name}^{n}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()


def _matches(seq: EventuallyPeriodicSeq, position: int, needed: str) -> bool:
    return all(seq.digit(position + i) == ch for i, ch in enumerate(needed))


def transduce(seq: EventuallyPeriodicSeq, table: Dict[int, Tuple[Rule, ...]], state: int) -> EventuallyPeriodicSeq:
    """
    Run a prefix-code transducer over an eventually periodic input. Once the preperiod
    is consumed, the pair (state, position within the period) determines the future,
    so the first repeated pair closes the output period.
    """
    out: List[str] = []
    written = 0
    position = 0
    seen: Dict[Tuple[int, int], int] = {}
    pre_len, per_len = len(seq.preperiod), len(seq.period)
    current: Optional[int] = state
    while True:
        if current is None:
            rest = seq.drop(position)
            return EventuallyPeriodicSeq("".join(out) + rest.preperiod, rest.period)
        if position >= pre_len:
            key = (current, (position - pre_len) % per_len)
            if key in seen:
                text = "".join(out)
                start = seen[key]
                return EventuallyPeriodicSeq(text[:start], text[start:])
            seen[key] = written
        for needed, emitted, following in table[current]:
            if _matches(seq, position, needed):
                out.append(emitted)
                written += len(emitted)
                position += len(needed)
                current = following
                break
        else:
            raise AssertionError(f"transducer table is not a complete prefix code in state {current}")


def apply_x(seq: EventuallyPeriodicSeq, sign: int) -> EventuallyPeriodicSeq:
    return transduce(seq, X_RULES, 1 if sign > 0 else -1)


def apply_y(seq: EventuallyPeriodicSeq, sign: int) -> EventuallyPeriodicSeq:
    return transduce(seq, Y_RULES, 1 if sign > 0 else -1)


def apply_generator(generator: Generator, exponent: int, seq: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq:
    """generator^exponent acting on seq; sequences not extending the subscript are fixed."""
    s = generator.subscript
    if exponent == 0 or not seq.startswith(s):
        return seq
    primitive = apply_x if generator.is_x else apply_y
    sign = 1 if exponent > 0 else -1
    tail = seq.drop(len(s))
    for _ in range(abs(exponent)):
        tail = primitive(tail, sign)
    return tail.prepend(s)


def evaluate(word: SWord, seq: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq:
    for generator, exponent in word.letters:
        seq = apply_generator(generator, exponent, seq)
    return seq


def partial_apply_finite(t: FiniteWord, generator: Generator, sign: int) -> Optional[FiniteWord]:
    """
    t.x_s^{±1} on a finite word, or None when t is too short to determine the image
    (t a prefix of s, or t stripped of s one of the ambiguous short cases).
    """
    if not generator.is_x:
        raise ValueError("the partial action on finite words is defined for x-generators only")
    s = generator.subscript
    if is_incompatible(t, s):
        return t
    if not t.startswith(s):
        return None
    rest = t[len(s):]
    for needed, emitted, _ in X_RULES[1 if sign > 0 else -1]:
        if rest.startswith(needed):
            return s + emitted + rest[len(needed):]
    return None


def partial_apply_word(t: FiniteWord, word: SWord) -> Optional[FiniteWord]:
    """t.w for an X-word w, letter by letter; None as soon as a step is undefined."""
    current: Optional[FiniteWord] = t
    for generator, sign in word.unit_letters():
        current = partial_apply_finite(current, generator, sign)
        if current is None:
            return None
    return current