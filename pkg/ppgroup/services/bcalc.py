"""
B-words: strings over 0, 1, y and Y (= y^-1) describing how a Y-word acts on the
sequences below a fixed prefix.

Advancing an occurrence of y/Y applies one row of the y-transducer table, so a
B-word followed by a sequence has the same limit before and after advancing.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from ppgroup.exceptions import BWordError, NoWitnessError, NotSufficientlyExpandedError
from ppgroup.services.action import Y_RULES, apply_y, evaluate, partial_apply_word
from ppgroup.services.rewrite import StandardForm, exposure_witness, is_sufficiently_expanded
from ppgroup.services.sequences import EventuallyPeriodicSeq, FiniteWord, lex_key, tail_equivalent
from ppgroup.services.settings_manager import get_setting

logger = logging.getLogger(__name__)

BWord = str

SYMBOL_SIGN = {"y": 1, "Y": -1}
SIGN_SYMBOL = {1: "y", -1: "Y"}
_OPPOSITE = {"y": "Y", "Y": "y"}
_INVOLUTION = str.maketrans("01yY", "10Yy")

# Largest n for which the (0^{2^n} 1) discriminating input is replayed exactly.
WITNESS_REPLAY_MAX_POWER = 12


def check_bword(w: str) -> BWord:
    if not set(w) <= set("01yY"):
        raise BWordError(f"not a B-word: {w!r}")
    return w


def occurrences(w: BWord) -> List[int]:
    """Indices of the y/Y symbols."""
    return [i for i, ch in enumerate(w) if ch in SYMBOL_SIGN]


def involution(w: BWord) -> BWord:
    """y ↔ Y together with 0 ↔ 1; advancing and cancellation commute with it."""
    return w.translate(_INVOLUTION)


def digits_of(w: BWord) -> FiniteWord:
    return "".join(ch for ch in w if ch in "01")


def _advance_rule(w: BWord, index: int):
    for needed, emitted, following in Y_RULES[SYMBOL_SIGN[w[index]]]:
        if w.startswith(needed, index + 1):
            return needed, emitted, following
    return None


def can_advance(w: BWord, index: int) -> bool:
    if not 0 <= index < len(w) or w[index] not in SYMBOL_SIGN:
        raise BWordError(f"no occurrence of y or Y at index {index} of {w!r}")
    return _advance_rule(w, index) is not None


def advance(w: BWord, index: int) -> BWord:
    """
    One advance of the occurrence at `index`:
    y00 → 0y, y01 → 10Y, y1 → 11y, Y0 → 00Y, Y10 → 01y, Y11 → 1Y.
    """
    if not can_advance(w, index):
        raise BWordError(f"the occurrence at index {index} of {w!r} cannot advance")
    needed, emitted, following = _advance_rule(w, index)
    return w[:index] + emitted + SIGN_SYMBOL[following] + w[index + 1 + len(needed):]


def advance_fully(w: BWord, index: int) -> Tuple[BWord, int]:
    """Advances one occurrence as long as possible; returns the word and its final index."""
    while can_advance(w, index):
        _, emitted, _ = _advance_rule(w, index)
        w = advance(w, index)
        index += len(emitted)
    return w, index


def has_potential_cancellation(w: BWord, index: int) -> bool:
    """
    Whether advancing the occurrence at `index` (zero or more times) puts it next to
    an opposite symbol. Advancing one occurrence is deterministic, so following its
    only advance path decides the question.
    """
    if not 0 <= index < len(w) or w[index] not in SYMBOL_SIGN:
        raise BWordError(f"no occurrence of y or Y at index {index} of {w!r}")
    if index > 0 and w[index - 1] == _OPPOSITE[w[index]]:
        return True
    while True:
        if index + 1 < len(w) and w[index + 1] == _OPPOSITE[w[index]]:
            return True
        rule = _advance_rule(w, index)
        if rule is None:
            return False
        w = advance(w, index)
        index += len(rule[1])


def has_no_potential_cancellations(w: BWord) -> bool:
    return not any(has_potential_cancellation(w, i) for i in occurrences(w))


def advance_all_no_cancel(w: BWord) -> BWord:
    """Advances every occurrence as far as it goes, rightmost first."""
    check_bword(w)
    if not has_no_potential_cancellations(w):
        raise BWordError(f"{w!r} contains a potential cancellation")
    for index in reversed(occurrences(w)):
        w, _ = advance_fully(w, index)
    if not has_no_potential_cancellations(w):
        raise BWordError(f"advancing produced a potential cancellation in {w!r}")
    return w


def advance_to_power(w: BWord) -> Tuple[FiniteWord, FiniteWord, int]:
    """
    Finds u and s such that w·u can be advanced to s·y^n, n the number of occurrences.

    After full advancement the word ends in one of the blocked shapes y0, Y, Y1
    (padded with 0, 10, 0) or in y0·y^k, Y1·y^k (padded with 0^{2^k}, since
    y^k 0^{2^k} advances to 0 y^k). The returned u is the one this recursion produces.
    """
    check_bword(w)
    n = len(occurrences(w))
    if n == 0:
        raise BWordError(f"{w!r} has no occurrence of y or Y")
    limit = get_setting("witness_extension_limit")
    suffix = ""
    current = w
    for _ in range(limit):
        current = advance_all_no_cancel(current)
        head = current.rstrip("y")
        k = len(current) - len(head)
        if k == n:
            logger.debug(f"{w!r}·{suffix or 'e'} advances to {head or 'e'}·y^{n}")
            return suffix, head, n
        if k == 0:
            if current.endswith("y0") or current.endswith("Y1"):
                pad = "0"
            elif current.endswith("Y"):
                pad = "10"
            else:
                raise BWordError(f"unexpected fully advanced shape {current!r}")
        else:
            pad = "0" * (2 ** k)
        suffix += pad
        current += pad
    raise BWordError(f"{w!r} did not reach s·y^{n} within {limit} padding rounds")


def limit(w: BWord, xi: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq:
    """The sequence denoted by w followed by xi: symbols act on everything to their right."""
    check_bword(w)
    result = xi
    for ch in reversed(w):
        if ch in SYMBOL_SIGN:
            result = apply_y(result, SYMBOL_SIGN[ch])
        else:
            result = result.prepend(ch)
    return result


@dataclass(frozen=True)
class Witness:
    """The form maps u⌢ξ to v⌢(ξ.y^n) for every ξ."""
    u: FiniteWord
    v: FiniteWord
    n: int

    def discriminating_input(self) -> EventuallyPeriodicSeq:
        return EventuallyPeriodicSeq(self.u, "0" * (2 ** self.n) + "1")

    def expected_output(self) -> EventuallyPeriodicSeq:
        return EventuallyPeriodicSeq(self.v, "0" + "1" * (2 ** self.n))

    def predicts(self, xi: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq:
        result = xi
        for _ in range(self.n):
            result = apply_y(result, 1)
        return result.prepend(self.v)


def _witness_path(form: StandardForm) -> FiniteWord:
    present = form.y_dict()
    current = max(present, key=lex_key)
    while True:
        witness = exposure_witness(current, form)
        if witness is not None:
            return witness
        current += "0" if present[current] > 0 else "1"
        if current not in present:
            raise NotSufficientlyExpandedError(f"the exposure path left the form at {current!r}")


def non_f_witness(form: StandardForm, require_y_word: bool = False) -> Witness:
    """
    For a sufficiently expanded form with nonempty Y-part, finite words u, v and n ≥ 1
    such that the form maps u⌢ξ to v⌢(ξ.y^n).

    The path starts at the lex-greatest subscript and follows 0 below positive and 1 below
    negative letters until an exposed subscript is reached, then takes its witness. The
    B-word has y^{|m|} inserted after every path prefix carrying y^m.
    """
    if form.is_x_word:
        raise NoWitnessError(f"{form} is an X-word")
    if require_y_word and form.x_part:
        raise NoWitnessError(f"{form} has a nonempty X-part")
    if not is_sufficiently_expanded(form):
        raise NotSufficientlyExpandedError(f"{form} is not sufficiently expanded")
    present = form.y_dict()
    path = _witness_path(form)
    symbols: List[str] = []
    for i in range(len(path) + 1):
        exponent = present.get(path[:i], 0)
        symbols.append(SIGN_SYMBOL[1 if exponent > 0 else -1] * abs(exponent))
        if i < len(path):
            symbols.append(path[i])
    lam = "".join(symbols)
    suffix, v, n = advance_to_power(lam)
    u = path + suffix
    if form.x_part:
        u, v = _lift_through_x_part(form, u, v, n)
    witness = Witness(u, v, n)
    _replay(form, witness)
    logger.info(f"Witness for {form}: u={u or 'e'}, v={v or 'e'}, n={n}")
    return witness


def _lift_through_x_part(form: StandardForm, u: FiniteWord, v: FiniteWord, n: int) -> Tuple[FiniteWord, FiniteWord]:
    """Pads (u, v) by (0^{2^n}, 0) until the X-part's inverse is defined on u."""
    inverse = ~form.x_part
    for _ in range(get_setting("witness_extension_limit")):
        lifted = partial_apply_word(u, inverse)
        if lifted is not None:
            return lifted, v
        u += "0" * (2 ** n)
        v += "0"
    raise NoWitnessError(f"could not pull u={u} back through {form.x_part}")


def _replay(form: StandardForm, witness: Witness) -> None:
    if witness.n > WITNESS_REPLAY_MAX_POWER:
        logger.debug(f"Skipping replay of the witness: n={witness.n}")
        return
    source = witness.discriminating_input()
    image = evaluate(form.to_word(), source)
    if image != witness.expected_output() or tail_equivalent(source, image):
        raise NoWitnessError(f"witness {witness} does not discriminate {form}: {source} -> {image}")
