"""
Derivations between words over x_s and y_s.

Responsibilities:
- The single-step substitutions (derive_step) and the StandardForm value type.
- RewriteService: derives standard forms of any requested depth, pushes X-words
  to the front, and expands forms until they are sufficiently expanded.
- Exposure of subscripts and the termination Measure used while expanding.

Every macro step of RewriteService is a chain of the substitutions that derive_step
implements; with tracing on, each macro step leaves one `rule=<id> at=<index> word=<form>` line.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from ppgroup.exceptions import (
    DerivationLimitExceeded,
    InsufficientDepthError,
    RuleApplicationError,
    TerminationMeasureError,
)
from ppgroup.services.action import Generator, Letter, SWord, partial_apply_finite
from ppgroup.services.sequences import (
    FiniteWord,
    check_word,
    is_incompatible,
    is_prefix,
    is_proper_prefix,
    lex_key,
    lex_sorted,
    minimal_cover,
    render_word,
)
from ppgroup.services.settings_manager import get_setting

logger = logging.getLogger(__name__)

YEntry = Tuple[FiniteWord, int]

# y_s^{±1} = x_s^{±1} followed by these y-letters below s.
EXPANSION_CHILDREN: Dict[int, Tuple[Tuple[str, int], ...]] = {
    +1: (("0", +1), ("10", -1), ("11", +1)),
    -1: (("00", -1), ("01", +1), ("1", -1)),
}


class RewriteRule(Enum):
    YX = "yx"
    EXPAND = "expand"
    EXPAND_INVERSE = "expand_inv"
    COMMUTE = "commute"
    SPLIT = "split"
    MERGE = "merge"
    CANCEL = "cancel"


def _sign(n: int) -> int:
    return 1 if n > 0 else -1


@dataclass(frozen=True)
class StandardForm:
    """
    An X-word followed by a Y-word. The Y-part holds one entry per subscript and is
    kept in ascending <_lex order, which puts every y_t before y_s whenever s ⊂ t.
    """
    x_part: SWord = field(default_factory=SWord)
    y_part: Tuple[YEntry, ...] = ()

    def __post_init__(self):
        if not self.x_part.is_x_word:
            raise ValueError("the X-part of a standard form may only contain x-generators")
        entries = tuple((check_word(s), int(n)) for s, n in self.y_part)
        seen = set()
        for s, n in entries:
            if n == 0:
                raise ValueError("Y-part exponents must be nonzero")
            if s in seen:
                raise ValueError(f"subscript {render_word(s)} occurs twice in the Y-part")
            seen.add(s)
        for i, (s, _) in enumerate(entries):
            for t, _ in entries[i + 1:]:
                if is_proper_prefix(s, t):
                    raise ValueError(f"y[{render_word(t)}] must come before y[{render_word(s)}]")
        object.__setattr__(self, "y_part", entries)

    @classmethod
    def from_parts(cls, x_letters: Iterable[Letter], y: Mapping[FiniteWord, int]) -> "StandardForm":
        """Builds the canonical form: X-letters freely reduced, Y-part in lex order."""
        return cls(
            SWord(tuple(x_letters)).reduced(),
            tuple((s, y[s]) for s in lex_sorted(y) if y[s]),
        )

    @classmethod
    def from_word(cls, word: SWord) -> "StandardForm":
        """Reads a word that already has the X-then-Y shape; raises ValueError otherwise."""
        letters = list(word.letters)
        split = 0
        while split < len(letters) and letters[split][0].is_x:
            split += 1
        tail = letters[split:]
        if any(g.is_x for g, _ in tail):
            raise ValueError(f"{word} has an x-generator after its Y-part starts")
        return cls(SWord(tuple(letters[:split])), tuple((g.subscript, n) for g, n in tail))

    @property
    def subscripts(self) -> List[FiniteWord]:
        return [s for s, _ in self.y_part]

    def y_dict(self) -> Dict[FiniteWord, int]:
        return dict(self.y_part)

    def exponent(self, s: FiniteWord) -> int:
        return self.y_dict().get(s, 0)

    @property
    def depth(self) -> Union[int, float]:
        """Length of the shortest y-subscript; math.inf for an X-word."""
        if not self.y_part:
            return math.inf
        return min(len(s) for s, _ in self.y_part)

    @property
    def is_x_word(self) -> bool:
        return not self.y_part

    def y_word(self) -> SWord:
        return SWord(tuple((Generator.y(s), n) for s, n in self.y_part))

    def to_word(self) -> SWord:
        return self.x_part * self.y_word()

    def render(self, abc: bool = False) -> str:
        return f"{self.x_part.render(abc)} | {self.y_word().render(abc)}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Measure:
    """
    Termination measure of a standard form: the size of the minimal cover of its
    subscripts, then the exponents read from the lex-greatest subscript down.
    """
    tree_size: int
    exponents: Tuple[YEntry, ...]

    @classmethod
    def of(cls, form: StandardForm) -> "Measure":
        ordered = sorted(form.y_part, key=lambda entry: lex_key(entry[0]), reverse=True)
        return cls(len(minimal_cover(form.subscripts)), tuple(ordered))

    @property
    def exponent_profile(self) -> Dict[FiniteWord, int]:
        return {s: abs(n) for s, n in self.exponents}

    def precedes(self, other: "Measure") -> bool:
        """self ◁ other."""
        if self.tree_size != other.tree_size:
            return self.tree_size < other.tree_size
        mine, theirs = dict(self.exponents), dict(other.exponents)
        for s in sorted(set(mine) | set(theirs), key=lex_key, reverse=True):
            a, b = mine.get(s, 0), theirs.get(s, 0)
            if a != b:
                return abs(a) < abs(b)
        return False


def derive_step(word: SWord, rule: Union[RewriteRule, str], position: int, amount: Optional[int] = None) -> SWord:
    """
    Applies one substitution at letter index `position`.

    Args:
        word: The word to rewrite. Letters are not merged implicitly.
        rule: A RewriteRule or its id ("yx", "expand", "expand_inv", "commute",
            "split", "merge", "cancel").
        position: Index of the (first) letter the substitution reads.
        amount: For "split" only, the exponent kept in the left part.

    Returns:
        The rewritten word. RuleApplicationError when the side condition fails.
    """
    rule = RewriteRule(rule)
    letters = list(word.letters)
    if not 0 <= position < len(letters):
        raise RuleApplicationError(f"position {position} is outside {word}")

    def failed(reason: str) -> RuleApplicationError:
        return RuleApplicationError(f"{rule.value} at {position} in {word}: {reason}")

    def pair() -> Tuple[Letter, Letter]:
        if position + 1 >= len(letters):
            raise failed("needs a second letter")
        return letters[position], letters[position + 1]

    g, n = letters[position]
    span = 1
    if rule is RewriteRule.YX:
        (g, n), (h, m) = pair()
        if not (g.is_y and h.is_x and abs(m) == 1):
            raise failed("expects y_t^i followed by x_s^{±1}")
        image = partial_apply_finite(g.subscript, h, m)
        if image is None:
            raise failed(f"{render_word(g.subscript)}.{h}^{m} is undefined")
        replacement = [(h, m), (Generator.y(image), n)]
        span = 2
    elif rule in (RewriteRule.EXPAND, RewriteRule.EXPAND_INVERSE):
        sign = 1 if rule is RewriteRule.EXPAND else -1
        if not (g.is_y and n == sign):
            raise failed(f"expects y_s^{sign}")
        s = g.subscript
        replacement = [(Generator.x(s), sign)]
        replacement += [(Generator.y(s + suffix), child) for suffix, child in EXPANSION_CHILDREN[sign]]
    elif rule is RewriteRule.COMMUTE:
        (g, n), (h, m) = pair()
        if not (g.is_y and h.is_y and is_incompatible(g.subscript, h.subscript)):
            raise failed("only y-letters with incompatible subscripts commute")
        replacement = [(h, m), (g, n)]
        span = 2
    elif rule is RewriteRule.SPLIT:
        if amount is None or amount == 0 or _sign(amount) != _sign(n) or abs(amount) >= abs(n):
            raise failed(f"cannot split exponent {n} as {amount} + {None if amount is None else n - amount}")
        replacement = [(g, amount), (g, n - amount)]
    elif rule is RewriteRule.MERGE:
        (g, n), (h, m) = pair()
        if g != h or _sign(n) != _sign(m):
            raise failed("merging needs equal generators with exponents of the same sign")
        replacement = [(g, n + m)]
        span = 2
    else:
        (g, n), (h, m) = pair()
        if g != h or n + m != 0:
            raise failed("cancellation needs g^i g^-i")
        replacement = []
        span = 2
    return SWord(tuple(letters[:position] + replacement + letters[position + span:]))


def exposure_witness(s: FiniteWord, form: StandardForm) -> Optional[FiniteWord]:
    """
    A word u ⊇ s such that every subscript of the form compatible with u is a prefix
    of s, or None when s is not exposed.
    """
    if s not in form.y_dict():
        raise ValueError(f"y[{render_word(s)}] does not occur in {form}")
    below = {t for t in form.subscripts if is_proper_prefix(s, t)}

    def search(v: FiniteWord) -> Optional[FiniteWord]:
        if v != s and v in below:
            return None
        if not any(is_proper_prefix(v, t) for t in below):
            return v
        for digit in "01":
            found = search(v + digit)
            if found is not None:
                return found
        return None

    return search(s)


def is_exposed(s: FiniteWord, form: StandardForm) -> bool:
    return exposure_witness(s, form) is not None


def offending_subscripts(form: StandardForm) -> List[FiniteWord]:
    """Subscripts violating the sufficiently expanded condition."""
    present = form.y_dict()
    offending = []
    for s, n in form.y_part:
        needed = s + ("0" if n > 0 else "1")
        if needed not in present and not is_exposed(s, form):
            offending.append(s)
    return offending


def is_sufficiently_expanded(form: StandardForm) -> bool:
    return not offending_subscripts(form)


def push_threshold(xword: SWord) -> int:
    """Y-part depth from which every letter of xword can be pushed to the front."""
    units = xword.unit_letters()
    if not units:
        return 0
    return max(len(g.subscript) for g, _ in units) + len(units) + 1


class RewriteService:
    """
    Runs derivations on a working copy: the X-letters as a list and the Y-part as a
    dict keyed by subscript. Clearing y_r means expanding it until its exponent is 0,
    after first clearing the letter that blocks the push of x_r.
    """

    def __init__(self, max_steps: Optional[int] = None, keep_trace: bool = False):
        self.max_steps = max_steps if max_steps is not None else get_setting("max_rewrite_steps")
        self.keep_trace = keep_trace
        self.trace: List[str] = []
        self.steps = 0
        self._x: List[Letter] = []
        self._y: Dict[FiniteWord, int] = {}

    # --- bookkeeping -----------------------------------------------------

    def _load(self, form: StandardForm) -> None:
        self._x = list(form.x_part.letters)
        self._y = form.y_dict()

    def _form(self) -> StandardForm:
        return StandardForm.from_parts(self._x, self._y)

    def _record(self, rule: RewriteRule, subscript: Optional[FiniteWord] = None, count: int = 1) -> None:
        self.steps += count
        if self.steps > self.max_steps:
            raise DerivationLimitExceeded(f"derivation exceeded {self.max_steps} steps")
        if not self.keep_trace:
            return
        at = len(self._x) - 1
        if subscript is not None and subscript in self._y:
            at = len(self._x) + lex_sorted(self._y).index(subscript)
        self.trace.append(f"rule={rule.value} at={max(at, 0)} word={self._form().render()}")

    # --- primitive moves -------------------------------------------------

    def _append_x_letter(self, generator: Generator, sign: int) -> Optional[RewriteRule]:
        """Appends to the X-part; MERGE or CANCEL when it combined with the last letter."""
        if self._x and self._x[-1][0] == generator:
            total = self._x.pop()[1] + sign
            if total:
                self._x.append((generator, total))
                return RewriteRule.MERGE
            return RewriteRule.CANCEL
        self._x.append((generator, sign))
        return None

    def _record_push(self, crossed: int, combined: Optional[RewriteRule]) -> None:
        if crossed:
            self._record(RewriteRule.YX, count=crossed + (1 if combined else 0))
        elif combined:
            self._record(combined)

    def _merge_y(self, t: FiniteWord, n: int) -> RewriteRule:
        present = t in self._y
        total = self._y.get(t, 0) + n
        if total:
            self._y[t] = total
            return RewriteRule.MERGE if present else RewriteRule.COMMUTE
        self._y.pop(t, None)
        return RewriteRule.CANCEL

    def _add_y(self, t: FiniteWord, n: int) -> None:
        rule = self._merge_y(t, n)
        self._record(rule, t if rule is not RewriteRule.CANCEL else None)

    def _cross(self, s: FiniteWord, sign: int, keep_prefixes: bool) -> int:
        """Moves x_s^sign from behind the Y-part to its front; returns the number of y-letters crossed."""
        generator = Generator.x(s)
        moved: Dict[FiniteWord, int] = {}
        crossed = 0
        for t, n in self._y.items():
            if keep_prefixes and is_prefix(t, s):
                moved[t] = n
                continue
            image = partial_apply_finite(t, generator, sign)
            if image is None:
                raise InsufficientDepthError(
                    f"y[{render_word(t)}] cannot be pushed past {generator}^{sign}; deepen the form first"
                )
            moved[image] = n
            crossed += 1
        self._y = moved
        return crossed

    def _expand_once(self, r: FiniteWord) -> None:
        """y_r^n ⇒ x_r^{±1} (children of r) y_r^{n∓1}, with x_r pushed to the X-part."""
        n = self._y[r]
        sign = _sign(n)
        blocker = r + ("0" if sign > 0 else "1")
        if blocker in self._y:
            raise RuleApplicationError(f"cannot expand y[{render_word(r)}] while y[{render_word(blocker)}] is present")
        crossed = self._cross(r, sign, keep_prefixes=True)
        self._append_x_letter(Generator.x(r), sign)
        if n - sign:
            self._y[r] = n - sign
        else:
            del self._y[r]
        for suffix, child in EXPANSION_CHILDREN[sign]:
            self._merge_y(r + suffix, child)
        self._record(RewriteRule.EXPAND if sign > 0 else RewriteRule.EXPAND_INVERSE, r, count=1 + crossed + len(EXPANSION_CHILDREN[sign]))

    def _clear(self, r: FiniteWord) -> None:
        while r in self._y:
            blocker = r + ("0" if self._y[r] > 0 else "1")
            if blocker in self._y:
                self._clear(blocker)
            self._expand_once(r)

    def _append_x(self, s: FiniteWord, sign: int) -> None:
        generator = Generator.x(s)
        while True:
            blockers = [t for t in self._y if partial_apply_finite(t, generator, sign) is None]
            if not blockers:
                break
            self._clear(min(blockers, key=lambda t: (len(t), lex_key(t))))
        crossed = self._cross(s, sign, keep_prefixes=False)
        self._record_push(crossed, self._append_x_letter(generator, sign))

    def _append_y(self, t: FiniteWord, n: int) -> None:
        while True:
            prefixes = [p for p in self._y if is_proper_prefix(p, t)]
            if not prefixes:
                break
            self._clear(min(prefixes, key=len))
        self._add_y(t, n)

    def _deepen(self, min_depth: int) -> None:
        while self._y:
            shallowest = min(self._y, key=lambda t: (len(t), lex_key(t)))
            if len(shallowest) >= min_depth:
                return
            self._clear(shallowest)

    # --- operations ------------------------------------------------------

    def expand_y_to_depth(self, s: FiniteWord, sign: int, depth: int) -> StandardForm:
        """
        Derives a standard form from y_s^{±1} whose y-subscripts all extend s, have
        length ≥ depth, exponent ±1, and are pairwise incompatible.
        """
        check_word(s)
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        sign = _sign(sign)
        self._x, self._y = [], {}

        def unfold(v: FiniteWord, v_sign: int) -> None:
            if len(v) >= depth:
                self._y[v] = v_sign
                return
            self._x.append((Generator.x(v), v_sign))
            for suffix, child in EXPANSION_CHILDREN[v_sign]:
                unfold(v + suffix, child)

        unfold(s, sign)
        if self._x:
            # one step per unfolded letter; disjoint subtrees commute
            self._record(RewriteRule.EXPAND if sign > 0 else RewriteRule.EXPAND_INVERSE, count=len(self._x))
        form = self._form()
        logger.debug(f"Expanded y[{render_word(s)}]^{sign} to depth {depth}: {form}")
        return form

    def push_x_left(self, form: StandardForm, xword: SWord) -> StandardForm:
        """Rewrites form·xword into a standard form, every x-letter pushed through the Y-part."""
        if not xword.is_x_word:
            raise ValueError(f"{xword} is not an X-word")
        threshold = push_threshold(xword)
        if form.y_part and form.depth < threshold:
            raise InsufficientDepthError(f"depth {form.depth} is below {threshold}, needed to push {xword}")
        self._load(form)
        for generator, sign in xword.unit_letters():
            crossed = self._cross(generator.subscript, sign, keep_prefixes=False)
            self._record_push(crossed, self._append_x_letter(generator, sign))
        return self._form()

    def to_standard_form(self, word: SWord, min_depth: int = 0) -> StandardForm:
        """
        Folds the word in letter by letter (the prefix read so far is always a standard
        form), then clears shallow letters until the depth reaches min_depth.
        """
        self._x, self._y = [], {}
        for generator, exponent in word.letters:
            if generator.is_x:
                for _ in range(abs(exponent)):
                    self._append_x(generator.subscript, _sign(exponent))
            else:
                self._append_y(generator.subscript, exponent)
        self._deepen(min_depth)
        form = self._form()
        logger.debug(f"Standard form of {word} at depth ≥ {min_depth}: {form} ({self.steps} steps)")
        return form

    def sufficiently_expand(
        self,
        form: StandardForm,
        on_step: Optional[Callable[[StandardForm, Measure], None]] = None,
    ) -> StandardForm:
        """
        Expands the lex-greatest offending subscript until none is left. Each step must
        strictly decrease the Measure; TerminationMeasureError otherwise.
        """
        self._load(form)
        current = form
        while True:
            offending = offending_subscripts(current)
            if not offending:
                return current
            target = max(offending, key=lex_key)
            before = Measure.of(current)
            self._expand_once(target)
            current = self._form()
            after = Measure.of(current)
            if not after.precedes(before):
                raise TerminationMeasureError(
                    f"expanding y[{render_word(target)}] did not decrease the measure: {before} -> {after}"
                )
            if on_step is not None:
                on_step(current, after)


def expand_y_to_depth(s: FiniteWord, sign: int, depth: int) -> StandardForm:
    return RewriteService().expand_y_to_depth(s, sign, depth)


def push_x_left(form: StandardForm, xword: SWord) -> StandardForm:
    return RewriteService().push_x_left(form, xword)


def to_standard_form(word: SWord, min_depth: int = 0) -> StandardForm:
    return RewriteService().to_standard_form(word, min_depth)


def sufficiently_expand(form: StandardForm) -> StandardForm:
    return RewriteService().sufficiently_expand(form)
