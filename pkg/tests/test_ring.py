from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qtnabla.ring import (
    ONE,
    QtPoly,
    QtRat,
    normalize,
    parse_poly,
    parse_rat,
    q,
    q_binomial,
    q_multinomial,
    q_pochhammer,
    render_poly,
    t,
    u,
)

from strategies import polys


def test_pochhammer_small():
    assert q_pochhammer(0) == ONE
    assert q_pochhammer(1) == ONE - u
    assert q_pochhammer(2) == ONE - u - u * q + u * u * q


def test_q_binomial_values():
    assert q_binomial(2, 1) == ONE + q
    assert q_binomial(4, 2) == parse_poly("1 + q + 2*q^2 + q^3 + q^4")
    assert q_binomial(5, 0) == ONE
    assert q_binomial(2, 3) == QtPoly()


@pytest.mark.parametrize("n", range(0, 9))
def test_q_binomial_symmetry_and_pascal(n):
    for k in range(n + 1):
        b = q_binomial(n, k)
        assert b == q_binomial(n, n - k)
        assert b.coefficients_nonnegative()
        assert b.degree("q") == k * (n - k)
        if 0 < k < n:
            assert b == q_binomial(n - 1, k - 1) + q ** k * q_binomial(n - 1, k)


def test_q_multinomial():
    assert q_multinomial(2, [1, 1]) == ONE + q
    assert q_multinomial(3, [1, 1, 1]) == (ONE + q) * (ONE + q + q * q)
    assert q_multinomial(4, [4]) == ONE
    assert q_multinomial(6, [1, 3, 2]) == q_multinomial(6, [2, 1, 3])
    with pytest.raises(ValueError):
        q_multinomial(3, [1, 1])


def test_normalize_examples():
    assert normalize(QtRat(q * q - 1, q - 1)) == QtRat(q + 1)
    zero = normalize(QtRat(QtPoly(), ONE - t))
    assert zero.num.is_zero() and zero.den == ONE
    r = QtRat((ONE - q ** 3) * (ONE - t), (ONE - q) * (ONE - t))
    assert r.as_poly() == ONE + q + q * q
    with pytest.raises(ZeroDivisionError):
        QtRat(ONE, QtPoly())


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QtPoly()


@given(polys())
def test_evaluation_at_one_is_coefficient_sum(a):
    assert a.evaluate(q=1, t=1, u=1) == sum(c for _, c in a.items())


@given(polys())
def test_render_parse_round_trip(a):
    assert parse_poly(render_poly(a)) == a


@given(polys(max_terms=3), polys(max_terms=3).filter(lambda p: not p.is_zero()), polys(max_terms=2))
def test_rational_canonical_form(a, b, c):
    r = QtRat(a, b)
    assert normalize(r) == r
    # cross-multiplied equal fractions are equal
    if not c.is_zero():
        assert QtRat(a * c, b * c) == r
    assert parse_rat(str(r)) == r
    assert (r + QtRat(c)) - QtRat(c) == r


def test_laurent_substitution():
    p = q * q * t
    assert p.evaluate(t=QtPoly.monomial(-1, 0, 0)) == q
    assert (q + t).evaluate(q=Fraction(1, 2), t=2) == Fraction(5, 2)
    assert (q * t).swap_qt() == q * t
    assert (q * q * t).swap_qt() == q * t * t
