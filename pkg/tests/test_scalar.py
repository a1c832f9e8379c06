from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke.errors import DomainError, ParseError
from hecke.scalar import (INFINITY, GaussianRational, check_prime, format_rational, is_prime,
                          parse_rational, q_valuation, rational_sqrt, sqrt_ceil)

fractions = st.fractions(max_denominator=10**6).map(lambda x: x.limit_denominator(10**6))
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero = st.fractions(max_denominator=1000).filter(bool)


@pytest.mark.parametrize("x, q, expected", [
    (12, 2, 2), (Fraction(3, 8), 2, -3), (0, 5, INFINITY), (Fraction(-9, 2), 3, 2), (7, 7, 1),
])
def test_q_valuation_examples(x, q, expected):
    assert q_valuation(x, q) == expected


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7]))
def test_valuation_is_additive(x, y, q):
    assert q_valuation(x * y, q) == q_valuation(x, q) + q_valuation(y, q)


@given(nonzero, nonzero, st.sampled_from([2, 3, 5]))
def test_valuation_ultrametric(x, y, q):
    assert q_valuation(x + y, q) >= min(q_valuation(x, q), q_valuation(y, q))


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(DomainError):
        check_prime(4)


@pytest.mark.parametrize("text, value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)),
                                         (5, Fraction(5)), (" 6/4 ", Fraction(3, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5.2", "", None, [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


@given(fractions)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@given(gaussians, gaussians, gaussians)
def test_gaussian_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == GaussianRational(0)


@given(gaussians, gaussians)
def test_gaussian_division_and_conjugation(a, b):
    if b:
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).is_real()
    assert a.abs2() == (a * a.conjugate()).re


@given(gaussians)
def test_gaussian_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a


def test_gaussian_mixes_with_rationals():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert 1 - i == GaussianRational(1, -1)
    assert hash(GaussianRational(3)) == hash(GaussianRational(Fraction(6, 2)))


@given(st.fractions(min_value=0, max_denominator=1000))
def test_sqrt_ceil_bounds(x):
    r = sqrt_ceil(x, bits=32)
    assert r * r >= x
    assert r - Fraction(1, 2**32) < 0 or (r - Fraction(1, 2**32)) ** 2 < x or r == 0


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
