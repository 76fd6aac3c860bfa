import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scclab.farey import (
    ContinuedFraction,
    FareyError,
    INFINITY,
    Rational,
    are_neighbors,
    cf_expand,
    cf_value,
    convergents,
    enumerate_slopes,
    farey_diff,
    farey_sum,
)


def test_rational_normalization():
    assert Rational(6, -4) == Rational(-3, 2)
    assert Rational(-1, 0) == INFINITY
    assert Rational(0, 7) == Rational(0, 1)
    with pytest.raises(FareyError):
        Rational(0, 0)


def test_rational_order_and_parse():
    assert Rational(1, 2) < Rational(2, 3) < INFINITY
    assert Rational.parse("-3/5") == Rational(-3, 5)
    assert Rational.parse("inf").is_infinite
    assert str(Rational(7, 5)) == "7/5"


def test_cf_expand_examples():
    assert cf_expand(Rational(0, 1)).terms == (0,)
    assert cf_expand(INFINITY).terms == ()
    # oracle: evaluate 1 + 1/(2 + 1/2) directly
    assert Fraction(1) + 1 / (Fraction(2) + Fraction(1, 2)) == Fraction(7, 5)
    assert cf_expand(Rational(7, 5)).terms == (1, 2, 2)


def test_cf_value_examples():
    assert cf_value((1, 2, 2)) == Rational(7, 5)
    assert cf_value((4,)) == Rational(4, 1)
    assert cf_value(()) == INFINITY
    assert convergents((1, 3)) == [INFINITY, Rational(1, 1), Rational(4, 3)]
    with pytest.raises(FareyError):
        cf_value((1, 0, 2))


def test_normal_form_validation():
    with pytest.raises(FareyError):
        ContinuedFraction((1, 2, 1))
    assert ContinuedFraction((5,)).value() == Rational(5)
    assert ContinuedFraction((-2, 1, 3)).depth == 3


def test_farey_ops_examples():
    assert farey_sum(Rational(0, 1), Rational(1, 1)) == Rational(1, 2)
    # truncation identities around [1,2] and [1]
    assert farey_sum(cf_value((1, 2)), cf_value((1,))) == cf_value((1, 3))
    assert farey_diff(cf_value((1, 2)), cf_value((1,))) == Rational(2, 1)
    assert farey_diff(Rational(1), cf_value((1, 2))) == Rational(2, 1)
    with pytest.raises(FareyError):
        farey_sum(Rational(1, 3), Rational(2, 3))


def test_neighbor_closure_and_ordering():
    for terms in [(0, 2), (1, 2, 2), (3, 1, 4), (2, 5), (-1, 2, 2)]:
        conv = convergents(terms)
        for r1, r2 in zip(conv, conv[1:]):
            assert are_neighbors(r1, r2)
            med = farey_sum(r1, r2)
            assert are_neighbors(r1, med) and are_neighbors(r2, med)
            if r1.den and r2.den:
                lo, hi = sorted((r1, r2))
                assert lo <= med <= hi


def test_sandwich_property():
    for terms in [(1, 2, 2), (0, 3, 2), (2, 1, 1, 2), (1, 1, 2)]:
        s = cf_value(terms)
        conv = convergents(terms)
        for i in range(1, len(terms)):
            plus = farey_sum(conv[i], conv[i - 1])
            minus = farey_diff(conv[i], conv[i - 1])
            assert plus == cf_value(tuple(terms[:i - 1]) + (terms[i - 1] + 1,))
            lo, hi = sorted((plus, minus))
            assert lo <= s <= hi and plus != s


def test_enumerate_slopes_small():
    assert enumerate_slopes(2) == [Rational(0, 1), Rational(1, 1), INFINITY]
    got = set(map(str, enumerate_slopes(3)))
    assert got == {"0/1", "1/2", "1/1", "2/1", "inf"}


def test_enumerate_slopes_count_oracle():
    n = 100
    brute = sum(
        1
        for q in range(1, n + 1)
        for p in range(0, n - q + 1)
        if math.gcd(p, q) == 1
    )
    assert len(enumerate_slopes(n)) == brute + 1


@given(st.integers(-300, 300), st.integers(1, 300))
def test_cf_roundtrip_random(p, q):
    r = Rational(p, q)
    cf = cf_expand(r)
    assert cf.value() == r
    if cf.depth >= 2:
        assert cf.terms[-1] >= 2
        assert all(n >= 1 for n in cf.terms[1:])
