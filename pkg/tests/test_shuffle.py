from collections import Counter
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, strategies as st

from qtnabla.ring import ONE, QtPoly, q, q_factorial, q_multinomial, t
from qtnabla.shapes import (
    Filling,
    ShapeError,
    descent_set,
    enumerate_fillings,
    flag_strip,
    partitions,
    standardize,
    sub_staircase_iter,
)
from qtnabla.shuffle import (
    ParkingFunction,
    ShuffleSpec,
    area,
    catalan_stats,
    catalan_sweep,
    compute_D,
    compute_D_q0,
    compute_D_q1,
    compute_D_qsym,
    compute_D_sum,
    csv_rows,
    d_component,
    dinv,
    fermionic_H,
    hilbert_series,
    inverse,
    is_shuffle,
    nabla_enk_rhs,
    parking_functions,
    parking_word,
    qt_catalan,
    reduced_dinv,
    schroder_enum,
    strip_words,
    super_D_coeff,
    touch_count,
    word_dinv,
    filling_from_word,
)
from qtnabla.symfun import SymFunc, m as m_basis, s

SAMPLE_LAM = (6, 6, 5, 3, 1, 1)
SAMPLE_WORD = (3, 4, 2, 1, 5, 7, 6, 8)


def all_neg(lam, n):
    return filling_from_word(lam, n, (-1,) * n)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- dinv -------------------------------------------------------------------

def test_size_eight_sample_dinv():
    T = filling_from_word(SAMPLE_LAM, 8, SAMPLE_WORD)
    assert dinv(T, 1) == 8
    assert dinv(T, 1, equal_rule="minmax") == 8
    assert parking_word(T) == (8, 2, 4, 6, 7, 1, 3, 5)
    assert descent_set(T, "d_order") == {1, 3, 5, 7}


def test_dinv_examples():
    assert dinv(all_neg((1,), 2), 1) == 1
    n = 5
    stair = tuple(range(n - 1, 0, -1))
    assert dinv(filling_from_word(stair, n, (1,) * n), 1) == 0
    assert dinv(all_neg((2,), 2), 2) == 2
    with pytest.raises(ShapeError):
        dinv(filling_from_word((2,), 2, (1, 2)), 1)


def test_reduced_dinv_examples():
    for word in ((1, 2), (2, 1)):
        T = filling_from_word((1,), 2, word)
        e_const, red = reduced_dinv(T, 1)
        assert e_const == 0 and red == dinv(T, 1)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in (1, 2, 3)])
def test_reduced_dinv_identity(n, m):
    for lam in sub_staircase_iter(n, m):
        for word, d in strip_words(lam, n, (1,) * n, (), m):
            T = filling_from_word(lam, n, word)
            e_const, red = reduced_dinv(T, m)
            assert e_const + red == d == dinv(T, m)
            assert word_dinv(lam, n, m, word, reduced=True) == red


@pytest.mark.parametrize("n", range(1, 6))
def test_standardization_preserves_dinv(n):
    for lam in sub_staircase_iter(n, 1):
        for mu, eta in (((n,), ()), ((), (n,)), ((1,) * n, ()), ((1,), (n - 1,)) if n > 1 else ((1,), ())):
            for word, d in strip_words(lam, n, mu, eta):
                T = filling_from_word(lam, n, word)
                assert dinv(standardize(T, "d_order"), 1) == d


def test_area_examples():
    assert area((), 3, 1) == 3
    assert area((4, 2), 3, 2) == 0
    assert area((1,), 2, 2) == 1
    with pytest.raises(ShapeError):
        area((3,), 2, 1)


# -- D_n ----------------------------------------------------------------------

def test_compute_D_small():
    assert compute_D(1, 1) == m_basis(1)
    D2 = compute_D(2, 1)
    assert D2.coeff((2,)) == ONE
    assert D2.coeff((1, 1)) == ONE + q + t
    assert D2.to("s") == s(2) + s(1, 1) * (q + t)


def test_d_component_examples():
    assert d_component((), 2, 1) == m_basis(1, 1)
    for n in range(1, 6):
        stair = tuple(range(n - 1, 0, -1))
        expected = SymFunc(n, "m", {mu: q_multinomial(n, mu) for mu in partitions(n)})
        assert d_component(stair, n, 1) == expected


@pytest.mark.parametrize("n,m", [(n, 1) for n in range(1, 5)] + [(n, 2) for n in range(1, 4)])
def test_components_are_schur_positive_and_sum_to_D(n, m):
    for lam in sub_staircase_iter(n, m):
        assert d_component(lam, n, m).to("s").is_schur_positive()
    assert compute_D_sum(n, m) == compute_D(n, m)


@pytest.mark.parametrize("n", range(1, 6))
def test_quasisymmetric_route(n):
    assert compute_D_qsym(n, 1) == compute_D(n, 1)


def test_specialization_routes_agree():
    for n, m in ((3, 1), (4, 1), (3, 2), (4, 2)):
        D = compute_D(n, m)
        assert compute_D_q1(n, m) == D.evaluate(q=1)
        assert compute_D_q1(n, m, via="skew_schur") == D.evaluate(q=1)
        assert compute_D_q0(n, m) == D.evaluate(q=0)


def test_super_coefficients():
    assert super_D_coeff(2, 1, (), (2,)) == q + t
    for n in range(1, 6):
        assert super_D_coeff(n, 1, (n,), ()) == ONE
    D = compute_D(4, 1)
    for mu in partitions(4):
        assert super_D_coeff(4, 1, mu, ()) == D.coeff(mu)
    with pytest.raises(ShapeError):
        super_D_coeff(3, 1, (1,), (1,))


@pytest.mark.parametrize("n", range(1, 8))
def test_hilbert_series_dimension(n):
    assert hilbert_series(n).evaluate(q=1, t=1) == (n + 1) ** (n - 1)


# -- parking functions and shuffles --------------------------------------------

@pytest.mark.parametrize("n", range(1, 6))
def test_parking_function_round_trip(n):
    pfs = list(parking_functions(n))
    assert len(pfs) == len(set(pfs)) == (n + 1) ** (n - 1)
    for f in pfs:
        lam, T = f.encode()
        assert ParkingFunction.decode(T) == f
        assert sorted(lam, reverse=True) == sorted((v - 1 for v in f.values if v > 1), reverse=True)
        assert f.area() == area(lam, n)
        w = f.word()
        # descents of w^{-1} are the d-descents of T
        assert {i + 1 for i in range(n - 1) if inverse(w)[i] > inverse(w)[i + 1]} == descent_set(T, "d_order")


def test_parking_word_examples():
    assert parking_word(ParkingFunction((1,))) == (1,)
    assert parking_word(ParkingFunction((1, 1, 1, 1))) == (4, 3, 2, 1)
    with pytest.raises(ShapeError):
        ParkingFunction((2, 2))
    assert str(ParkingFunction((1, 2, 1))) == "121"


def test_is_shuffle_examples():
    n = 5
    assert is_shuffle(tuple(range(1, n + 1)), ShuffleSpec((n,)))
    assert is_shuffle(tuple(range(n, 0, -1)), ShuffleSpec((), (n,)))
    assert not is_shuffle((2, 1), ShuffleSpec((2,)))


@given(st.permutations(range(1, 7)))
def test_shuffle_into_identity_blocks(w):
    # every permutation is a (1^n)-shuffle
    assert is_shuffle(tuple(w), ShuffleSpec((1,) * 6))


# -- Catalan ------------------------------------------------------------------

def test_catalan_examples():
    assert catalan_stats((), 3, 1) == (0, 0)
    assert catalan_stats((1,), 2, 1) == (1, 1)
    assert catalan_stats((2,), 2, 2) == (2, 2)
    assert qt_catalan(2) == q + t
    assert qt_catalan(3) == q ** 3 + q * q * t + q * t * t + t ** 3 + q * t


@pytest.mark.parametrize("n", range(1, 11))
def test_catalan_numbers(n):
    assert qt_catalan(n).evaluate(q=1, t=1) == catalan(n)


def test_catalan_sweep_matches_iterator():
    lams, b, dneg = catalan_sweep(5, 2)
    expected = list(sub_staircase_iter(5, 2))
    assert len(lams) == len(expected)
    for row, lam, bb, dd in zip(lams, expected, b, dneg):
        assert tuple(int(x) for x in row if x) == lam
        assert (int(bb), int(dd)) == catalan_stats(lam, 5, 2)


def test_qt_catalan_is_all_negative_coefficient():
    for n, m in ((3, 1), (4, 1), (3, 2), (3, 3)):
        assert qt_catalan(n, m) == super_D_coeff(n, m, (), (n,))


# -- fermionic ------------------------------------------------------------------

def test_fermionic_examples():
    for n in range(1, 6):
        assert fermionic_H(tuple(range(1, n + 1))) == q_factorial(n)
        assert fermionic_H(tuple(range(n, 0, -1))) == t ** (n * (n - 1) // 2)
    with pytest.raises(ShapeError):
        fermionic_H((1, 2, 3), (2,), ())


@pytest.mark.parametrize("n", range(1, 7))
def test_fermionic_dimension(n):
    total = QtPoly()
    for sigma in permutations(range(1, n + 1)):
        total = total + fermionic_H(sigma)
    assert total.evaluate(q=1, t=1) == (n + 1) ** (n - 1)


# -- Schroder -------------------------------------------------------------------

def test_schroder_examples():
    for n in range(1, 5):
        paths = list(schroder_enum(n, n))
        assert len(paths) == 1
        assert paths[0].partition() == tuple(range(n - 1, 0, -1))
        assert paths[0].area() == 0
    dyck = list(schroder_enum(2, 0))
    assert len(dyck) == 2
    assert sum(QtPoly.monomial(p.dinv(), p.area(), 0) for p in dyck) == q + t
    assert sum(len(list(schroder_enum(2, d))) for d in range(3)) == 6
    with pytest.raises(ShapeError):
        list(schroder_enum(2, 3))


# -- E_{n,k} right-hand side ------------------------------------------------------

def test_touch_counts_and_enk_rhs():
    assert touch_count((1,), 2) == 2
    assert touch_count((), 2) == 1
    assert nabla_enk_rhs(2, 2, 1) == d_component((1,), 2, 1)
    assert nabla_enk_rhs(2, 1, 1) == d_component((), 2, 1) * t
    for n, m in ((3, 1), (4, 1), (3, 2)):
        total = SymFunc.zero(n, "m")
        for k in range(1, n + 1):
            total = total + nabla_enk_rhs(n, k, m)
        assert total == compute_D(n, m)
    stair = (4, 2)
    assert nabla_enk_rhs(3, 3, 2) == d_component(stair, 3, 2)


def test_csv_export():
    text = csv_rows([("qt_catalan", 2, 1, "", q + t)])
    assert text.splitlines() == ["name,n,m,extra,polynomial", "qt_catalan,2,1,,q + t"]
