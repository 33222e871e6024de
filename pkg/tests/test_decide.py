import json
import random
from fractions import Fraction

import pytest

from ppgroup.exceptions import AlphabetError, DiagramError
from ppgroup.services.action import SWord, evaluate
from ppgroup.services.bcalc import Witness
from ppgroup.services.decide import (
    decide_identity,
    diagrams_equal,
    equal,
    phi_crosscheck,
    piecewise_map,
    relation_catalogue,
    verify_relations,
)
from ppgroup.services.diagrams import (
    LabeledTree,
    LabeledTreeDiagram,
    compose_diagrams,
    diagram_eval,
    increment_labels,
    insert_caret,
    vertex_move,
    word_to_diagram,
)
from ppgroup.services.parsing import parse_word
from ppgroup.services.presentation import ABC_NINE_ERRATA, RelationForm, corrected_nine_relations, nine_relations
from ppgroup.services.projective import ExtRational, phi_of_sequence
from ppgroup.services.rewrite import to_standard_form
from ppgroup.services.sequences import PrefixSet, tail_equivalent
from ppgroup.services.utils import random_eventually_constant, random_sequence, random_word, sample_sequences

DOUBLING = LabeledTreeDiagram(LabeledTree.build(["0", "1"]), LabeledTree.build(["0", "1"], {"0": -1, "1": 1}))
A = LabeledTreeDiagram(LabeledTree.build(["00", "01", "1"]), LabeledTree.build(["0", "10", "11"]))


def test_empty_word_is_identity():
    verdict = decide_identity(SWord())
    assert verdict.is_identity
    assert verdict.witness is None
    assert verdict.tree_pair == (PrefixSet(), PrefixSet())


@pytest.mark.parametrize("text", ["a a^-1", "y y^-1", "y^-1 x y[0] y[10]^-1 y[11]", "y[0] y[1] y[0]^-1 y[1]^-1"])
def test_identities(text):
    assert decide_identity(parse_word(text)).is_identity


def test_c_is_not_in_f():
    verdict = decide_identity(parse_word("c"))
    assert not verdict.is_identity
    assert verdict.witness == Witness("10", "10", 1)
    assert verdict.tree_pair is None


def test_x_word_verdict_carries_tree_pair():
    verdict = decide_identity(SWord.x(""))
    assert not verdict.is_identity
    assert verdict.witness is None
    assert verdict.tree_pair == (PrefixSet.of(["00", "01", "1"]), PrefixSet.of(["0", "10", "11"]))


def test_verdict_json_and_trace():
    verdict = decide_identity(parse_word("y x"), keep_trace=True)
    assert verdict.trace
    payload = json.loads(json.dumps(verdict.to_json(), sort_keys=True))
    assert payload["word"] == "y x"
    assert payload["is_identity"] is False
    assert decide_identity(parse_word("y x")).trace is None


def test_equal():
    assert equal(parse_word("y"), parse_word("x y[0] y[10]^-1 y[11]"))
    assert equal(parse_word("y[00] x"), parse_word("x y[0]"))
    assert not equal(parse_word("a"), parse_word("b"))
    assert not equal(parse_word("c"), parse_word("c^2"))


@pytest.mark.parametrize("form", list(RelationForm))
def test_nine_relations_decide_as_identity(form):
    for lhs, rhs in corrected_nine_relations(form):
        assert equal(lhs, rhs), f"{lhs} = {rhs}"


def test_relation_catalogue_labels():
    labels = [label for label, _, _ in relation_catalogue(1)]
    assert labels[0] == "family 1 #0"
    assert "nine xy #9" in labels and "nine abc #1" in labels
    assert len(labels) == len(set(labels))


def test_relation_catalogue_flags():
    flags = {label: flag for label, _, flag in relation_catalogue(1)}
    assert flags["nine xy #3"] is True and flags["nine abc #8"] is True
    assert flags["nine xy #1"] is None and flags["nine abc #9"] is None
    assert all(flag for label, flag in flags.items() if label.startswith("family 4 "))


@pytest.mark.parametrize("number", ABC_NINE_ERRATA)
def test_transcribed_abc_errata(number):
    lhs, rhs = nine_relations(RelationForm.ABC)[number - 1]
    word = lhs * ~rhs
    verdict = decide_identity(word)
    assert not verdict.is_identity
    xi = verdict.witness.discriminating_input()
    assert evaluate(word, xi) == verdict.witness.expected_output()
    assert equal(*corrected_nine_relations(RelationForm.ABC)[number - 1])


def test_corrected_fourth_relation_commutes_c_with_x01():
    assert equal(parse_word("a b^2 a^-1 b^-1 a b^-1 a^-1"), SWord.x("01"))
    assert not equal(parse_word("b^2 a^-1 b a b"), SWord.x("01"))


def test_verify_relations():
    report = verify_relations(bound=1, samples=5, seed=7, workers=2)
    assert report.ok, report.summary()
    assert report.counts()["nine xy"] == 9
    assert "0 failed" in report.summary()
    assert report.disjoint_commutations() >= 12
    assert "commutations of disjointly supported elements" in report.summary()


def test_verify_relations_reports_a_wrong_relation():
    wrong = (SWord.x(""), SWord.x("", -1))
    report = verify_relations(bound=0, samples=5, seed=7, extra_relations=[wrong], workers=1)
    assert not report.ok
    (failure,) = report.failures
    assert failure.label == "extra #0"
    assert not failure.decided_identity
    assert not failure.pointwise_ok
    assert "FAILED extra #0" in report.summary()


def test_relation_report_is_deterministic():
    one = verify_relations(bound=1, samples=4, seed=3, workers=1).to_json()
    many = verify_relations(bound=1, samples=4, seed=3, workers=4).to_json()
    assert json.dumps(one, sort_keys=True) == json.dumps(many, sort_keys=True)


def test_phi_crosscheck():
    report = phi_crosscheck(count=200, seed=1)
    assert report.ok, report.to_json()["mismatches"][:3]
    assert report.to_json()["count"] == 200


def test_diagrams_equal():
    conjugated = compose_diagrams(compose_diagrams(DOUBLING.inverse(), A), DOUBLING)
    square = word_to_diagram(to_standard_form(SWord.x("", 2)))
    assert diagrams_equal(conjugated, square)
    assert not diagrams_equal(conjugated, A)


def test_piecewise_map_of_words():
    two_steps = piecewise_map(parse_word("a a"))
    assert two_steps(0) == ExtRational.of(2)
    assert two_steps(Fraction(1, 3)) == ExtRational.of(Fraction(7, 3))
    trivial = piecewise_map(parse_word("a b a^-1 b^-1 b a b^-1 a^-1"))
    assert len(trivial.pieces) == 1
    assert trivial(Fraction(5, 7)) == ExtRational.of(Fraction(5, 7))
    with pytest.raises(AlphabetError):
        piecewise_map(parse_word("y"))


def test_piecewise_map_agrees_with_action(rng):
    for _ in range(20):
        word = random_word(rng, rng.randint(0, 5), kind="S0")
        mapping = piecewise_map(word)
        for _ in range(5):
            xi = random_eventually_constant(rng)
            assert mapping(phi_of_sequence(xi)) == phi_of_sequence(evaluate(word, xi)), word


@pytest.mark.slow
def test_relation_families_to_depth_four():
    report = verify_relations(bound=4, samples=50)
    assert report.ok, report.summary()


@pytest.mark.slow
def test_verdicts_agree_with_sampling(rng):
    for _ in range(500):
        word = random_word(rng, rng.randint(0, 12), max_subscript=3)
        sequences = [random_sequence(rng) for _ in range(50)]
        verdict = decide_identity(word, samples=sequences)
        if verdict.is_identity or verdict.witness is None:
            continue
        source = verdict.witness.discriminating_input()
        output = evaluate(word, source)
        assert output == verdict.witness.expected_output()
        assert not tail_equivalent(source, output)


def _random_move(d: LabeledTreeDiagram, rng: random.Random) -> LabeledTreeDiagram:
    choice = rng.randrange(3)
    if choice == 0:
        return insert_caret(d, rng.randrange(d.leaf_count))
    if choice == 1:
        return increment_labels(d, rng.randrange(d.leaf_count), rng.choice((-1, 1)))
    vertex = rng.choice(d.target.leaves.internal_vertices() or [""])
    try:
        return LabeledTreeDiagram(d.source, vertex_move(d.target, vertex, rng.choice(("left", "right"))))
    except DiagramError:
        return d


@pytest.mark.slow
def test_diagram_round_trips_and_moves(rng):
    for _ in range(200):
        word = random_word(rng, rng.randint(0, 8), max_subscript=3)
        d = word_to_diagram(to_standard_form(word))
        moved = _random_move(_random_move(d, rng), rng)
        for xi in sample_sequences(50, seed=rng.randrange(10 ** 6)):
            image = evaluate(word, xi)
            assert diagram_eval(d, xi) == image
            assert diagram_eval(moved, xi) == image
