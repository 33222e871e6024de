import pytest

from ppgroup.exceptions import AlphabetError, UndefinedActionError
from ppgroup.services.action import Generator, SWord, evaluate, partial_apply_word
from ppgroup.services.parsing import parse_word
from ppgroup.services.presentation import (
    ABC_NINE_ERRATA,
    Alphabet,
    RelationForm,
    annotated_nine_relations,
    commutation_flag,
    conjugate_x_through,
    conjugating_element,
    corrected_nine_relations,
    expand_to_finite_generators,
    f_word,
    is_s0_word,
    nine_relations,
    relation_instances,
    y_class_representative,
)
from ppgroup.services.utils import sample_sequences

SAMPLES = sample_sequences(15, seed=11)
FIVE = {Generator.x(""), Generator.x("1"), Generator.y("0"), Generator.y("1"), Generator.y("10")}
THREE = {Generator.x(""), Generator.x("1"), Generator.y("10")}


def same_action(first: SWord, second: SWord) -> bool:
    return all(evaluate(first, xi) == evaluate(second, xi) for xi in SAMPLES)


@pytest.mark.parametrize("s", ["10", "01", "001", "110", "0110", "1011", "01001"])
def test_f_word_moves_10(s):
    word = f_word(s)
    assert set(word.generators()) <= {Generator.x(""), Generator.x("1")}
    assert partial_apply_word("10", word) == s


def test_f_word_trivial_and_constant():
    assert f_word("10") == SWord()
    with pytest.raises(UndefinedActionError):
        f_word("000")
    with pytest.raises(UndefinedActionError):
        f_word("")


@pytest.mark.parametrize("u, v", [("0", "1"), ("0010", "11"), ("0", "10111"), ("00011", "0010")])
def test_conjugating_element(u, v):
    g, s, t = conjugating_element(u, v)
    assert len(s) <= 3 and len(t) <= 3
    assert partial_apply_word(s, g) == u
    assert partial_apply_word(t, g) == v


def test_conjugating_element_rejects_bad_pairs():
    with pytest.raises(ValueError):
        conjugating_element("0", "01")
    with pytest.raises(ValueError):
        conjugating_element("1", "0")


def test_conjugate_x_through():
    assert conjugate_x_through("00", SWord.x("")) == Generator.x("0")
    g = parse_word("x x[1]^-1")
    for s in ("000", "0110", "111"):
        image = conjugate_x_through(s, g)
        assert same_action(SWord.x(s) * g, g * SWord.of(image))
    with pytest.raises(UndefinedActionError):
        conjugate_x_through("0", SWord.x(""))


@pytest.mark.parametrize("text", ["y", "x[0]", "x[00]", "x[10]", "x[0110]", "y[01]", "y[110]^-2", "y[000] x[11]"])
def test_expand_to_five_generators(text):
    word = parse_word(text)
    spelled = expand_to_finite_generators(word, Alphabet.FIVE)
    assert set(spelled.generators()) <= FIVE
    assert same_action(word, spelled)


@pytest.mark.parametrize("text", ["c", "x[0]", "y[01]", "y[0110]^-1", "x[101] y[10]"])
def test_expand_to_three_generators(text):
    word = parse_word(text)
    spelled = expand_to_finite_generators(word, "three")
    assert set(spelled.generators()) <= THREE
    assert same_action(word, spelled)


def test_three_generators_need_s0_words():
    assert is_s0_word(parse_word("y[10] x[0] y[01]"))
    assert not is_s0_word(parse_word("y[11]"))
    with pytest.raises(AlphabetError):
        expand_to_finite_generators(parse_word("x y[0]"), Alphabet.THREE)


def test_y_class_representative():
    assert y_class_representative("") == ""
    assert y_class_representative("000") == "0"
    assert y_class_representative("11") == "1"
    assert y_class_representative("0110") == "10"


def test_relation_instance_counts():
    assert len(relation_instances(1, 2)) == 7
    assert len(relation_instances(4, 1)) == 2
    assert len(relation_instances(5, 1)) == 3
    with pytest.raises(ValueError):
        relation_instances(6, 1)
    with pytest.raises(ValueError):
        relation_instances(1, 9)


@pytest.mark.parametrize("family", [1, 2, 3, 4, 5])
def test_relation_families_hold_pointwise(family):
    for lhs, rhs in relation_instances(family, 2):
        assert same_action(lhs, rhs), f"{lhs} = {rhs}"


@pytest.mark.parametrize("form", list(RelationForm))
def test_nine_relations_hold_pointwise(form):
    relations = corrected_nine_relations(form)
    assert len(relations) == 9
    for lhs, rhs in relations:
        assert same_action(lhs, rhs), f"{lhs} = {rhs}"


def test_commutations_have_disjoint_support():
    flags = [flag for _, _, flag in annotated_nine_relations()]
    assert flags == [None, None, True, True, True, True, True, True, None]


def test_abc_errata():
    transcribed = nine_relations(RelationForm.ABC)
    corrected = corrected_nine_relations(RelationForm.ABC)
    assert corrected_nine_relations(RelationForm.XY) == nine_relations(RelationForm.XY)
    assert transcribed[0] == (parse_word("b a^-2 b a"), parse_word("a^-1 b a b a^-1"))
    for number, (before, after) in enumerate(zip(transcribed, corrected), start=1):
        assert (before != after) == (number in ABC_NINE_ERRATA)
        assert set(after[0].generators()) | set(after[1].generators()) <= THREE
    assert corrected[3] == (parse_word("c a b^2 a^-1 b^-1 a b^-1 a^-1"), parse_word("a b^2 a^-1 b^-1 a b^-1 a^-1 c"))
    assert corrected[8][0] == expand_to_finite_generators(parse_word("y[10]"), Alphabet.THREE)


def test_commutation_flag():
    assert commutation_flag(parse_word("y[0] y[1]"), parse_word("y[1] y[0]")) is True
    assert commutation_flag(parse_word("y[0] y[01]"), parse_word("y[01] y[0]")) is False
    assert commutation_flag(parse_word("y[00] x"), parse_word("x y[0]")) is None
