import math

import pytest
from hypothesis import given, settings

from ppgroup.exceptions import DerivationLimitExceeded, InsufficientDepthError, RuleApplicationError
from ppgroup.services.action import SWord, evaluate
from ppgroup.services.parsing import parse_word
from ppgroup.services.rewrite import (
    Measure,
    RewriteRule,
    RewriteService,
    StandardForm,
    derive_step,
    expand_y_to_depth,
    exposure_witness,
    is_exposed,
    is_sufficiently_expanded,
    offending_subscripts,
    push_threshold,
    push_x_left,
    sufficiently_expand,
    to_standard_form,
)
from ppgroup.services.sequences import is_incompatible, is_proper_prefix
from ppgroup.services.utils import random_word, sample_sequences
from strategies import words, x_words

SAMPLES = sample_sequences(12, seed=5)


def same_action(first: SWord, second: SWord) -> bool:
    return all(evaluate(first, xi) == evaluate(second, xi) for xi in SAMPLES)


@pytest.mark.parametrize(
    "word, rule, position, expected",
    [
        ("y[00] x", "yx", 0, "x y[0]"),
        ("y", "expand", 0, "x y[0] y[10]^-1 y[11]"),
        ("y[1]^-1", "expand_inv", 0, "x[1]^-1 y[100]^-1 y[101] y[11]^-1"),
        ("y[0] y[1]", "commute", 0, "y[1] y[0]"),
        ("y[01]^2 y[01]", "merge", 0, "y[01]^3"),
        ("x y[0] y[0]^-1", "cancel", 1, "x"),
    ],
)
def test_derive_step(word, rule, position, expected):
    before = parse_word(word)
    after = derive_step(before, rule, position)
    assert after == parse_word(expected)
    assert same_action(before, after)


def test_derive_step_split():
    assert derive_step(parse_word("y^3"), RewriteRule.SPLIT, 0, amount=1) == parse_word("y y^2")
    with pytest.raises(RuleApplicationError):
        derive_step(parse_word("y^3"), RewriteRule.SPLIT, 0, amount=-1)


@pytest.mark.parametrize(
    "word, rule, position",
    [
        ("y[0] x", "yx", 0),
        ("y[0] y[01]", "commute", 0),
        ("y^2", "expand", 0),
        ("y[0] y[1]", "merge", 0),
        ("x", "cancel", 0),
        ("x", "yx", 3),
    ],
)
def test_derive_step_side_conditions(word, rule, position):
    with pytest.raises(RuleApplicationError):
        derive_step(parse_word(word), rule, position)


def test_standard_form_validation():
    with pytest.raises(ValueError):
        StandardForm(SWord(), (("0", 1), ("01", 1)))
    with pytest.raises(ValueError):
        StandardForm(SWord.y("1"), ())
    form = StandardForm.from_parts([], {"1": 1, "10": -1, "0": 2})
    assert form.subscripts == ["0", "10", "1"]
    assert form.depth == 1
    assert StandardForm().depth == math.inf
    assert StandardForm.from_word(form.to_word()) == form


def test_expand_y_to_depth():
    assert str(expand_y_to_depth("", 1, 1)) == "x | y[0] y[10]^-1 y[11]"
    assert str(expand_y_to_depth("1", -1, 2)) == "x[1]^-1 | y[100]^-1 y[101] y[11]^-1"
    assert str(expand_y_to_depth("01", 1, 0)) == "e | y[01]"


@pytest.mark.parametrize("subscript, sign, depth", [("", 1, 3), ("", -1, 4), ("10", 1, 5), ("0", -1, 3)])
def test_expand_y_to_depth_properties(subscript, sign, depth):
    form = expand_y_to_depth(subscript, sign, depth)
    assert form.depth >= depth
    subscripts = form.subscripts
    assert all(t.startswith(subscript) for t in subscripts)
    assert all(abs(n) == 1 for _, n in form.y_part)
    assert all(is_incompatible(s, t) for i, s in enumerate(subscripts) for t in subscripts[i + 1:])
    assert same_action(SWord.y(subscript, sign), form.to_word())


def test_push_x_left():
    xword = parse_word("x x[1]^-1 x[0]")
    threshold = push_threshold(xword)
    assert threshold == 1 + 3 + 1
    form = expand_y_to_depth("", 1, threshold)
    pushed = push_x_left(form, xword)
    assert same_action(form.to_word() * xword, pushed.to_word())
    with pytest.raises(InsufficientDepthError):
        push_x_left(StandardForm.from_parts([], {"0": 1}), xword)


@given(words)
@settings(max_examples=60, deadline=None)
def test_to_standard_form_preserves_action(word):
    form = to_standard_form(word)
    assert same_action(word, form.to_word())


@given(words)
@settings(max_examples=30, deadline=None)
def test_to_standard_form_reaches_depth(word):
    form = to_standard_form(word, min_depth=3)
    assert form.depth >= 3
    assert same_action(word, form.to_word())


@given(x_words)
@settings(max_examples=30, deadline=None)
def test_x_words_stay_x_words(word):
    form = to_standard_form(word)
    assert form.is_x_word
    assert form.x_part == word.reduced() or same_action(form.x_part, word)


def test_trace_lines():
    service = RewriteService(keep_trace=True)
    form = service.to_standard_form(parse_word("y x"))
    assert service.trace
    assert all(line.startswith("rule=") and " at=" in line and " word=" in line for line in service.trace)
    assert service.trace[-1].endswith(form.render())
    assert service.steps >= len(service.trace)


def test_step_budget():
    with pytest.raises(DerivationLimitExceeded):
        RewriteService(max_steps=2).to_standard_form(parse_word("y x y[0]^-3 x[0]"))


def test_exposure():
    form = StandardForm.from_parts([], {"": 1, "00": 1, "10": -1})
    assert is_exposed("00", form)
    witness = exposure_witness("", form)
    assert witness is not None
    assert not any(is_proper_prefix(witness, t) or t == witness for t in ("00", "10"))
    covered = StandardForm.from_parts([], {"": 1, "0": 1, "1": 1})
    assert not is_exposed("", covered)
    with pytest.raises(ValueError):
        exposure_witness("11", form)


def test_offending_subscripts():
    covered = StandardForm.from_parts([], {"": -1, "0": 1, "11": 1, "10": 1})
    assert offending_subscripts(covered) == [""]
    assert is_sufficiently_expanded(StandardForm.from_parts([], {"": 1, "0": 1, "1": 1}))


def test_measure_order():
    small = Measure.of(StandardForm.from_parts([], {"0": 1}))
    bigger = Measure.of(StandardForm.from_parts([], {"00": 1}))
    assert small.precedes(bigger)
    assert not bigger.precedes(small)
    assert Measure.of(StandardForm.from_parts([], {"0": 1})).precedes(Measure.of(StandardForm.from_parts([], {"0": 2})))
    assert not small.precedes(small)


@given(words)
@settings(max_examples=60, deadline=None)
def test_sufficiently_expand(word):
    steps = []
    service = RewriteService()
    form = service.sufficiently_expand(to_standard_form(word), on_step=lambda f, m: steps.append(m))
    assert is_sufficiently_expanded(form)
    assert all(later.precedes(earlier) for earlier, later in zip(steps, steps[1:]))
    assert same_action(word, form.to_word())


@pytest.mark.slow
def test_termination_measure_on_random_words(rng):
    for _ in range(500):
        word = random_word(rng, rng.randint(0, 30), max_subscript=4)
        measures = []
        form = RewriteService().sufficiently_expand(to_standard_form(word), on_step=lambda f, m: measures.append(m))
        assert is_sufficiently_expanded(form)
        assert all(later.precedes(earlier) for earlier, later in zip(measures, measures[1:]))
