from math import comb

import pytest
from hypothesis import given, strategies as st

from qtnabla.shapes import (
    Filling,
    ShapeError,
    SkewShape,
    arm_leg,
    conjugate,
    count_ssyt,
    descent_set,
    enumerate_fillings,
    flag_strip,
    is_super_tableau,
    kostka,
    maj,
    parse_filling,
    partitions,
    render_filling,
    ssyt_counts,
    standardize,
    sub_staircase_iter,
)
from qtnabla.shuffle import filling_from_word

from strategies import partitions_of

SAMPLE_LAM = (6, 6, 5, 3, 1, 1)
SAMPLE_WORD = (3, 4, 2, 1, 5, 7, 6, 8)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((5,)) == (1,) * 5
    assert conjugate(()) == ()


@given(partitions_of(30))
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_sub_staircase_examples():
    assert list(sub_staircase_iter(3, 1)) == [(), (1,), (1, 1), (2,), (2, 1)]
    assert list(sub_staircase_iter(1, 4)) == [()]
    assert sorted(sub_staircase_iter(2, 2)) == [(), (1,), (2,)]


@pytest.mark.parametrize("n", range(1, 11))
def test_sub_staircase_count_is_catalan(n):
    lams = list(sub_staircase_iter(n, 1))
    assert len(lams) == catalan(n)
    assert len(set(lams)) == len(lams)


def test_flag_strip_examples():
    assert set(flag_strip((), 2).cells) == {(0, 0), (1, 0)}
    assert set(flag_strip((1,), 2).cells) == {(0, 1), (1, 0)}
    assert set(flag_strip((2, 1), 3).cells) == {(0, 2), (1, 1), (2, 0)}
    with pytest.raises(ShapeError):
        flag_strip((1, 1, 1), 2)


def test_enumerate_fillings_examples():
    assert list(enumerate_fillings(flag_strip((), 2), (2,), ())) == []
    neg = list(enumerate_fillings(flag_strip((), 2), (), (2,)))
    assert len(neg) == 1 and all(a == -1 for _, a in neg[0].entries)
    assert len(list(enumerate_fillings(flag_strip((1,), 2), (1, 1), ()))) == 2
    with pytest.raises(ShapeError):
        list(enumerate_fillings(flag_strip((1,), 2), (1,), ()))


@pytest.mark.parametrize("n", range(1, 7))
def test_standard_flag_fillings_count_parking_functions(n):
    total = 0
    for lam in sub_staircase_iter(n, 1):
        for T in enumerate_fillings(flag_strip(lam, n), (1,) * n, ()):
            assert T.is_standard()
            total += 1
    assert total == (n + 1) ** (n - 1)


def test_standard_flag_filling_count_n7():
    n = 7
    total = 0
    for lam in sub_staircase_iter(n, 1):
        shape = flag_strip(lam, n)
        total += count_ssyt(shape.outer, shape.inner, (1,) * n)
    assert total == 8 ** 6


@given(partitions_of(7), st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_ssyt_counts_agree_with_enumeration(lam, content):
    if sum(content) != sum(lam):
        content = content + [sum(lam) - sum(content)] if sum(lam) > sum(content) else [sum(lam)]
    content = tuple(content)
    shape = SkewShape(lam, ())
    direct = sum(1 for _ in enumerate_fillings(shape, content, ()))
    assert count_ssyt(lam, (), content) == direct
    assert ssyt_counts(lam, (), [content])[content] == direct


def test_kostka_small():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((3,), (1, 2)) == 1
    assert kostka((2, 2), (3, 1)) == 0


def test_arm_leg_examples():
    assert arm_leg((1,), (0, 0)) == (0, 0)
    assert arm_leg((3, 2), (0, 0)) == (2, 1)
    assert arm_leg((2,), (0, 0)) == (1, 0)
    with pytest.raises(ShapeError):
        arm_leg((2,), (1, 0))


def test_maj_examples():
    assert maj([1, 2, 3, 4]) == 0 and maj([1, 2, 3, 4], "comaj") == 0
    assert maj([2, 1]) == 1 and maj([2, 1], "comaj") == 1
    assert maj([5, 4, 3, 2, 1]) == 10


def test_standardize_all_negative_labels_in_decreasing_d_order():
    shape = flag_strip((1,), 2)
    T = Filling.from_dict(shape, {x: -1 for x in shape.cells})
    S = standardize(T, "d_order")
    # cells (1,0) and (0,1) share diagonal 1; <_d puts (1,0) first
    assert S.as_dict() == {(1, 0): 2, (0, 1): 1}


def test_standardize_fixes_standard_tableaux():
    T = filling_from_word(SAMPLE_LAM, 8, SAMPLE_WORD)
    assert standardize(T, "d_order") == T
    assert standardize(T, "ordinary") == T
    assert descent_set(T, "d_order") == {1, 3, 5, 7}


@pytest.mark.parametrize("lam", [(2, 1), (3, 1), (2, 2), (3, 2, 1)])
def test_standardize_respects_letter_runs(lam):
    shape = SkewShape(lam, ())
    n = shape.size
    for k in range(n + 1):
        for T in enumerate_fillings(shape, (k,) if k else (), (n - k,) if n - k else ()):
            S = standardize(T, "ordinary")
            assert S.is_standard()
            d = descent_set(S, "ordinary")
            # positive run 1..k has no descents, negative run k+1..n is all descents
            assert not any(a in d for a in range(1, k))
            assert all(a in d for a in range(k + 1, n))


def test_render_parse_round_trip():
    T = filling_from_word(SAMPLE_LAM, 8, SAMPLE_WORD)
    text = render_filling(T)
    assert parse_filling(text) == T
    U = parse_filling("~1\n1 ~1")
    assert is_super_tableau(U)
    assert U.contents() == ((1,), (2,))


def test_partitions_counts():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
