from hypothesis import given

from ppgroup.services.action import (
    Generator,
    SWord,
    apply_generator,
    apply_x,
    apply_y,
    evaluate,
    partial_apply_finite,
    partial_apply_word,
)
from ppgroup.services.sequences import EventuallyPeriodicSeq as Seq
from strategies import bits, sequences, words


def test_apply_x():
    assert apply_x(Seq("00", "1"), 1) == Seq("0", "1")
    assert apply_x(Seq("01", "1"), 1) == Seq("10", "1")
    assert apply_x(Seq("1", "0"), 1) == Seq("11", "0")
    assert apply_x(Seq.constant("0"), 1) == Seq.constant("0")


def test_apply_y():
    assert apply_y(Seq("01", "0"), 1) == Seq("10", "0")
    assert apply_y(Seq.constant("0"), 1) == Seq.constant("0")
    assert apply_y(Seq.constant("1"), 1) == Seq.constant("1")
    assert apply_y(Seq("10", "0"), -1) == Seq("01", "0")


@given(sequences)
def test_inverses(xi):
    assert apply_x(apply_x(xi, 1), -1) == xi
    assert apply_y(apply_y(xi, -1), 1) == xi


def test_apply_generator_is_local():
    y10 = Generator.y("10")
    assert apply_generator(y10, 1, Seq("11", "0")) == Seq("11", "0")
    assert apply_generator(y10, 1, Seq("1001", "0")) == Seq("1010", "0")
    assert apply_generator(Generator.x("1"), 1, Seq("100", "1")) == Seq("10", "1")


@given(words, sequences)
def test_evaluate_inverse_word(word, xi):
    assert evaluate(word * ~word, xi) == xi
    assert evaluate(word.reduced(), xi) == evaluate(word, xi)


def test_evaluate_empty_word():
    xi = Seq("101", "01")
    assert evaluate(SWord(), xi) == xi


def test_partial_apply_finite():
    x = Generator.x("")
    assert partial_apply_finite("00", x, 1) == "0"
    assert partial_apply_finite("0", x, 1) is None
    assert partial_apply_finite("1011", Generator.x("10"), 1) == "10111"
    assert partial_apply_finite("01", Generator.x("1"), 1) == "01"
    assert partial_apply_finite("1", Generator.x("10"), 1) is None


@given(bits, sequences)
def test_partial_action_agrees_with_sequences(t, xi):
    word = SWord.x("1") * SWord.x("", -1) * SWord.x("0")
    image = partial_apply_word(t, word)
    if image is not None:
        assert evaluate(word, xi.prepend(t)).startswith(image)
        assert evaluate(word, xi.prepend(t)) == xi.prepend(image)


def test_rendering():
    word = SWord.x("") * SWord.y("10", -2)
    assert word.render() == "x y[10]^-2"
    assert SWord.x("1").render(abc=True) == "b"
    assert SWord().render() == "e"
    assert word.length == 3
