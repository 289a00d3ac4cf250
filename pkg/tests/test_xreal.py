from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chargelattice.errors import EmptyFamily, ParseError, UndefinedSum
from chargelattice.xreal import (
    NEG_INF,
    POS_INF,
    ZERO,
    ExtReal,
    inf,
    parse,
    sup,
    to_xreal,
    xmax,
    xmin,
    xsum,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
xreals = st.one_of(fractions.map(ExtReal), st.sampled_from([POS_INF, NEG_INF]))


@pytest.mark.parametrize(
    "text, value",
    [("3/4", ExtReal(Fraction(3, 4))), ("-2", ExtReal(-2)), ("+inf", POS_INF), ("-inf", NEG_INF), ("6/8", ExtReal(Fraction(3, 4)))],
)
def test_parse(text, value):
    assert parse(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1/0", "inf inf", "0.5.1", "--1"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse(text)


def test_canonical_text():
    assert str(ExtReal(Fraction(6, 8))) == "3/4"
    assert str(ExtReal(-3)) == "-3"
    assert str(POS_INF) == "+inf" and str(NEG_INF) == "-inf"
    assert str(ExtReal(Fraction(0, 5))) == "0"


def test_infinity_arithmetic():
    assert POS_INF + 5 == POS_INF
    assert NEG_INF - 5 == NEG_INF
    assert POS_INF + POS_INF == POS_INF
    with pytest.raises(UndefinedSum):
        POS_INF + NEG_INF
    with pytest.raises(UndefinedSum):
        POS_INF - POS_INF
    assert -POS_INF == NEG_INF
    assert abs(NEG_INF) == POS_INF


def test_zero_times_infinity_is_zero():
    assert ZERO * POS_INF == ZERO
    assert POS_INF * 0 == ZERO
    assert ExtReal(-2) * POS_INF == NEG_INF
    assert NEG_INF * ExtReal(Fraction(1, 3)) == NEG_INF


def test_xsum_rejects_both_infinities():
    assert xsum([1, 2, Fraction(1, 2)]) == Fraction(7, 2)
    assert xsum([]) == 0
    assert xsum([POS_INF, 1, POS_INF]) == POS_INF
    with pytest.raises(UndefinedSum):
        xsum([POS_INF, 1, NEG_INF])


def test_sup_inf_of_empty_family():
    with pytest.raises(EmptyFamily):
        sup([])
    with pytest.raises(EmptyFamily):
        inf([])
    assert sup([1, POS_INF]) == POS_INF
    assert inf([1, NEG_INF]) == NEG_INF


def test_mixed_comparisons():
    assert ExtReal(2) == 2 and ExtReal(Fraction(1, 2)) == Fraction(1, 2)
    assert NEG_INF < -10**9 < 10**9 < POS_INF
    assert to_xreal("1/2") < 1


@given(xreals)
def test_text_round_trip(x):
    assert parse(str(x)) == x


@given(xreals, xreals)
def test_order_is_total_and_consistent(x, y):
    assert (x < y) + (x == y) + (x > y) == 1
    assert xmax(x, y) >= xmin(x, y)
    assert {xmax(x, y), xmin(x, y)} == {x, y}


@given(xreals)
def test_negation_is_an_involution_reversing_order(x):
    assert -(-x) == x
    assert (x <= ZERO) == (-x >= ZERO)


@given(st.lists(st.one_of(fractions.map(ExtReal), st.just(POS_INF)), max_size=8), st.randoms())
def test_sum_is_order_independent(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    assert xsum(values) == xsum(shuffled)


@given(fractions, fractions, fractions)
def test_finite_part_is_exact_field_arithmetic(a, b, c):
    x, y, z = ExtReal(a), ExtReal(b), ExtReal(c)
    assert (x + y) + z == x + (y + z) == ExtReal(a + b + c)
    assert x * y == ExtReal(a * b)
    assert hash(x) == hash(ExtReal(a))
