"""
General utility functions used across ppgroup.
- Random eventually periodic sequences and random words for sampling checks.
- JSON-ready views of forms, witnesses and diagrams.
"""
import logging
import random
from typing import Any, Dict, List, Optional

from ppgroup.services.action import Generator, SWord
from ppgroup.services.sequences import EventuallyPeriodicSeq, FiniteWord, is_constant
from ppgroup.services.settings_manager import get_setting

logger = logging.getLogger(__name__)

WORD_KINDS = ("S", "X", "S0")


def random_finite_word(rng: random.Random, max_length: int, min_length: int = 0) -> FiniteWord:
    """
    Draws a uniformly random binary word.

    Args:
        rng: The random source.
        max_length: Longest allowed length.
        min_length: Shortest allowed length.

    Returns:
        A string over 0 and 1.
    """
    length = rng.randint(min_length, max_length)
    return "".join(rng.choice("01") for _ in range(length))


def random_sequence(rng: random.Random) -> EventuallyPeriodicSeq:
    """
    Draws an eventually periodic sequence with preperiod and period lengths bounded by
    the `random_preperiod_max` and `random_period_max` settings.
    """
    pre = random_finite_word(rng, get_setting("random_preperiod_max"))
    period = random_finite_word(rng, get_setting("random_period_max"), min_length=1)
    return EventuallyPeriodicSeq(pre, period)


def random_eventually_constant(rng: random.Random, prefix_max: Optional[int] = None) -> EventuallyPeriodicSeq:
    limit = prefix_max if prefix_max is not None else get_setting("phi_prefix_max")
    return EventuallyPeriodicSeq(random_finite_word(rng, limit), rng.choice("01"))


def sample_sequences(count: int, seed: Optional[int] = None) -> List[EventuallyPeriodicSeq]:
    """
    A reproducible list of random sequences.

    Args:
        count: How many sequences to draw.
        seed: Seed of the random source; the `sample_seed` setting when omitted.

    Returns:
        The sequences, in drawing order.
    """
    rng = random.Random(get_setting("sample_seed") if seed is None else seed)
    return [random_sequence(rng) for _ in range(count)]


def random_word(rng: random.Random, length: int, max_subscript: int = 3, kind: str = "S") -> SWord:
    """
    A random word of `length` letters with exponents ±1.

    Args:
        rng: The random source.
        length: Number of letters.
        max_subscript: Longest subscript drawn.
        kind: "S" for any letters, "X" for x-letters only, "S0" to avoid constant y-subscripts.

    Returns:
        The word, not reduced.
    """
    if kind not in WORD_KINDS:
        raise ValueError(f"word kind must be one of {WORD_KINDS}, got {kind!r}")
    letters = []
    for _ in range(length):
        subscript = random_finite_word(rng, max_subscript)
        use_y = kind != "X" and rng.random() < 0.5
        if use_y and kind == "S0" and is_constant(subscript):
            subscript += "1" if subscript.startswith("0") else "0"
            if subscript == "0":
                subscript = "10"
        generator = Generator.y(subscript) if use_y else Generator.x(subscript)
        letters.append((generator, rng.choice((1, -1))))
    return SWord(tuple(letters))


def sequence_to_json(seq: EventuallyPeriodicSeq) -> Dict[str, str]:
    return {"preperiod": seq.preperiod, "period": seq.period, "text": str(seq)}


def word_to_json(word: SWord) -> List[Dict[str, Any]]:
    return [
        {"kind": g.kind.value, "subscript": g.subscript, "exponent": n}
        for g, n in word.letters
    ]


def form_to_json(form) -> Dict[str, Any]:
    """A StandardForm as its X-part letters and its Y-part entries, plus the rendered text."""
    return {
        "x_part": word_to_json(form.x_part),
        "y_part": [{"subscript": s, "exponent": n} for s, n in form.y_part],
        "text": form.render(),
    }


def witness_to_json(witness) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    return {"u": witness.u, "v": witness.v, "n": witness.n}


def tree_to_json(tree) -> Dict[str, Any]:
    return {
        "leaves": list(tree.leaves),
        "labels": {vertex or "e": n for vertex, n in sorted(tree.label_map().items()) if n},
    }


def diagram_to_json(diagram) -> Dict[str, Any]:
    return {"source": tree_to_json(diagram.source), "target": tree_to_json(diagram.target)}


if __name__ == '__main__':
    demo_rng = random.Random(7)
    print(f"Sequences: {[str(s) for s in sample_sequences(3, seed=7)]}")
    print(f"Word: {random_word(demo_rng, 5)}")
    print(f"S0 word: {random_word(demo_rng, 5, kind='S0')}")
