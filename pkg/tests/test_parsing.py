import pytest

from ppgroup.exceptions import WordParseError
from ppgroup.services.action import Generator, SWord
from ppgroup.services.parsing import parse_bword, parse_finite_word, parse_sequence, parse_word
from ppgroup.services.sequences import EventuallyPeriodicSeq


def test_parse_word():
    word = parse_word("x y[10]^-2 a b^3 c x[e]")
    assert word.letters == (
        (Generator.x(""), 1),
        (Generator.y("10"), -2),
        (Generator.x(""), 1),
        (Generator.x("1"), 3),
        (Generator.y("10"), 1),
        (Generator.x(""), 1),
    )
    assert parse_word("e") == SWord()
    assert parse_word("   ") == SWord()


def test_parse_word_round_trips_rendering():
    text = "x[01]^-1 y y[110]^4"
    assert parse_word(text).render() == text


@pytest.mark.parametrize(
    "text, position",
    [
        ("x z", 2),
        ("y[102]", 4),
        ("x[01", 4),
        ("a^0", 2),
        ("b^", 2),
    ],
)
def test_parse_errors_name_the_position(text, position):
    with pytest.raises(WordParseError) as info:
        parse_word(text)
    assert info.value.position == position
    assert info.value.expected
    assert f"position {position}" in str(info.value)


def test_parse_sequence():
    assert parse_sequence("10(01)") == EventuallyPeriodicSeq("10", "01")
    assert parse_sequence("(0)") == EventuallyPeriodicSeq.constant("0")
    assert parse_sequence("e(1)") == EventuallyPeriodicSeq.constant("1")
    with pytest.raises(WordParseError):
        parse_sequence("101")
    with pytest.raises(WordParseError):
        parse_sequence("1()")


def test_parse_finite_and_bwords():
    assert parse_finite_word("e") == ""
    assert parse_finite_word("0110") == "0110"
    assert parse_bword("y01Y") == "y01Y"
    with pytest.raises(WordParseError):
        parse_finite_word("012")
    with pytest.raises(WordParseError):
        parse_bword("yx")
