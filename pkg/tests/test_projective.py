from fractions import Fraction

import pytest
from hypothesis import given

from ppgroup.services.projective import (
    INFINITY,
    ZERO,
    ExtRational,
    ProjMatrix,
    builtin_map,
    compose,
    compose_all,
    identity_map,
    invert,
    phi_eval,
    phi_interval,
    phi_inverse,
    phi_of_sequence,
    power,
)
from ppgroup.services.sequences import EventuallyPeriodicSeq
from strategies import eventually_constant

NEG_INVERSE = ProjMatrix(0, -1, 1, 0)


def test_ext_rational_normalizes():
    assert ExtRational(2, 4) == ExtRational(1, 2)
    assert ExtRational(3, -6) == ExtRational(-1, 2)
    assert ExtRational(-5, 0) == INFINITY
    assert ExtRational.of("inf").is_infinite
    assert str(ExtRational.of(Fraction(-3, 2))) == "-3/2"
    with pytest.raises(ValueError):
        ExtRational(0, 0)


def test_matrices_are_projective():
    assert ProjMatrix(2, 0, 0, 2) == ProjMatrix.identity()
    assert ProjMatrix(-1, 0, 0, -1) == ProjMatrix.identity()
    assert ProjMatrix(1, 1, 0, 1).inverse() == ProjMatrix(1, -1, 0, 1)
    assert ProjMatrix(2, 0, 0, 1).formula() == "(2t)/1"
    with pytest.raises(ValueError):
        ProjMatrix(1, 2, 2, 4)


def test_phi_eval():
    assert phi_eval("", "0") == INFINITY
    assert phi_eval("1", "0") == ZERO
    assert phi_eval("11", "0") == ExtRational(1)
    assert phi_eval("101", "1") == phi_eval("110", "0")


def test_phi_interval():
    assert phi_interval("1") == (ZERO, INFINITY)
    assert phi_interval("10") == (ZERO, ExtRational(1))
    assert phi_interval("0") == (INFINITY, ZERO)
    with pytest.raises(ValueError):
        phi_interval("")


@given(eventually_constant)
def test_phi_inverse_round_trip(xi):
    assert phi_of_sequence(phi_inverse(phi_of_sequence(xi))) == phi_of_sequence(xi)


def test_phi_inverse_values():
    assert phi_inverse(0) == EventuallyPeriodicSeq("1", "0")
    assert phi_inverse(1) == EventuallyPeriodicSeq("11", "0")
    assert phi_inverse("inf") == EventuallyPeriodicSeq.constant("0")
    for q in (Fraction(-3, 2), Fraction(5, 7), Fraction(-1, 3), Fraction(4)):
        assert phi_of_sequence(phi_inverse(q)) == ExtRational.of(q)


def test_phi_of_sequence_needs_constant_tail():
    with pytest.raises(ValueError):
        phi_of_sequence(EventuallyPeriodicSeq("1", "01"))


def test_builtin_maps():
    a, b, c = builtin_map("a"), builtin_map("b"), builtin_map("c")
    assert a.pieces == (ProjMatrix(1, 1, 0, 1),)
    assert b(Fraction(1, 2)) == ExtRational(1)
    assert b.pieces_on(0, Fraction(1, 2)) == [ProjMatrix(1, 0, -1, 1)]
    assert b.pieces_on(Fraction(1, 2), 1) == [ProjMatrix(3, -1, 1, 0)]
    assert c(1) == ExtRational(1)
    assert c(Fraction(1, 2)) == ExtRational(2, 3)
    with pytest.raises(ValueError):
        builtin_map("d")


def test_compose_and_invert():
    a = builtin_map("a")
    assert compose(a, invert(a)) == identity_map()
    assert invert(identity_map()) == identity_map()
    assert invert(a).pieces == (ProjMatrix(1, -1, 0, 1),)
    b = builtin_map("b")
    assert compose(b, invert(b)) == identity_map()


def test_doubling_on_unit_interval():
    a, b, c = (builtin_map(n) for n in "abc")
    word = compose_all([b, c, invert(a), invert(c), a])
    assert word.pieces_on(0, 1) == [ProjMatrix(2, 0, 0, 1)]


def test_minus_inverse_pieces():
    a, b = builtin_map("a"), builtin_map("b")
    aba = compose_all([a, b, a])
    assert aba.pieces_on(-1, Fraction(-1, 2)) == [NEG_INVERSE]
    ba3 = compose(b, power(a, -3))
    assert ba3.pieces_on(Fraction(1, 2), 1) == [NEG_INVERSE]


def test_piece_table_json():
    table = builtin_map("c").to_json()["pieces"]
    assert len(table) == 3
    assert table[1]["from"] == [0, 1] and table[1]["to"] == [1, 1]
    assert table[1]["matrix"] == [[2, 0], [1, 1]]
