from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tvarih.polynomials import ONE, T, LaurentPolynomial, parse, poly

laurent = st.dictionaries(st.integers(-4, 6), st.fractions(max_denominator=4).filter(bool)
                          | st.integers(-5, 5), max_size=5).map(LaurentPolynomial)


@given(laurent, laurent, laurent)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPolynomial()


@given(laurent)
def test_str_parse_roundtrip(p):
    assert parse(str(p)) == p
    assert parse(p.ascending()) == p


@given(laurent, st.integers(-3, 3))
def test_evaluate_is_a_homomorphism(p, x):
    if x == 0:
        return
    assert (p * p).evaluate(x) == p.evaluate(x) ** 2
    assert p.substitute_power(2).evaluate(x) == p.evaluate(Fraction(x) ** 2)


def test_printing():
    p = T ** 6 + T ** 4 + T ** 2 + 1
    assert str(p) == "t^6 + t^4 + t^2 + 1"
    assert p.ascending() == "1 + t^2 + t^4 + t^6"
    assert str(4 * T ** 2 + 1) == "4*t^2 + 1"
    assert str(T ** -1 - 2) == "-2 + t^-1"


def test_queries():
    p = poly(1, 0, 2, 0, 1)
    assert p.degree == 4 and p.low_degree == 0
    assert p.is_palindromic(4) and not p.is_palindromic(6)
    assert p.to_list() == [1, 0, 2, 0, 1]
    assert p.truncate(2) == poly(1, 0, 2)
    assert (T ** -2).shift(2) == ONE
    assert poly(Fraction(1, 2)).is_integral() is False


def test_negative_power_of_monomial_only():
    assert (2 * T ** 3) ** -1 == LaurentPolynomial({-3: Fraction(1, 2)})
    with pytest.raises(ValueError):
        (1 + T) ** -1


def test_parse_variants():
    assert parse("2t^2 - t + 1") == poly(1, -1, 2)
    assert parse("t**3") == T ** 3
    assert parse("t^-1 + 1") == T ** -1 + 1
