from math import factorial

from hypothesis import given, strategies as st
import pytest

from qtnabla.llt import (
    ShapeTuple,
    beta,
    check_transport,
    d_to_llt,
    d_to_llt_data,
    inv_generating,
    is_core,
    llt_poly,
    n_core,
    n_quotient,
    quot_inverse,
    ribbon_tableaux,
    smin_smax,
    spin,
    standard_ribbon_tableaux,
    tuple_inv,
)
from qtnabla.ring import q
from qtnabla.shapes import ShapeError, SkewShape, partitions, sub_staircase_iter
from qtnabla.shuffle import d_component, dinv, filling_from_word
from qtnabla.symfun import s

from strategies import partitions_of


def hook_count(lam):
    """Number of standard Young tableaux of straight shape lam."""
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, r in enumerate(lam):
        for j in range(r):
            hooks *= (r - j) + (conj[j] - i) - 1
    return factorial(sum(lam)) // hooks


def test_core_examples():
    assert n_core((2, 2), 2).core == ()
    assert n_core((3, 1), 2).core == ()
    assert n_core((2, 1), 2).core == (2, 1)
    assert n_core((1,), 2).core == (1,)
    assert sum(n_core((4, 1), 3).charges) == 0
    assert is_core((2, 1), 2) and not is_core((2,), 2)
    assert n_core((5, 3, 1), 3).core == n_core(n_core((5, 3, 1), 3).core, 3).core


def test_quotient_examples():
    t = n_quotient((2, 2), 2)
    assert [c.outer for c in t.shapes] == [(1,), (1,)]
    assert t.offsets == (0, 1)
    assert quot_inverse(t) == SkewShape((2, 2), ())


@pytest.mark.parametrize("n", [2, 3, 4])
@given(data=st.data())
def test_quotient_round_trip(n, data):
    mu = data.draw(partitions_of(12))
    shape = SkewShape(mu, n_core(mu, n).core)
    t = n_quotient(shape, n)
    assert t.size * n == shape.size
    assert quot_inverse(t) == shape


def test_containment_needs_tileability():
    with pytest.raises(ShapeError):
        n_quotient(SkewShape((3, 1), (2,)), 2)


def test_offsets_congruence_enforced():
    with pytest.raises(ShapeError):
        ShapeTuple((SkewShape((1,)), SkewShape(())), (1, 1))


def test_domino_tableaux():
    shape = SkewShape((2, 2))
    tabs = list(ribbon_tableaux(shape, 2, (1, 1)))
    assert len(tabs) == 2
    assert sorted(spin(T) for T in tabs) == [0, 1]
    assert smin_smax(shape, 2) == (0, 2)
    assert llt_poly(shape, 2) == s(1, 1) + s(2) * q


@pytest.mark.parametrize("n,size", [(2, 3), (3, 2), (2, 4)])
def test_standard_ribbon_tableaux_count(n, size):
    # standard n-ribbon tableaux of mu/core correspond to standard fillings of the quotient
    for mu in partitions(n * size):
        shape = SkewShape(mu, n_core(mu, n).core)
        t = n_quotient(shape, n)
        if t.size != size:
            continue
        got = sum(1 for _ in standard_ribbon_tableaux(shape, n))
        expected = factorial(size)
        for c in t.shapes:
            assert c.inner == ()
            expected = expected * hook_count(c.outer) // factorial(c.size)
        assert got == expected


@pytest.mark.parametrize("n,size", [(2, 2), (2, 3), (3, 2)])
def test_llt_routes_agree_and_positive(n, size):
    for mu in partitions(n * size):
        shape = SkewShape(mu, n_core(mu, n).core)
        if shape.size != n * size:
            continue
        G = llt_poly(shape, n, route="both")
        assert G.is_schur_positive()


def test_d_to_llt_small():
    t, e = d_to_llt((1,), 2)
    assert t.offsets == (-2, -1)
    assert [c.outer for c in t.shapes] == [(1,), (1,)]
    assert e == 0
    assert beta(2, 2) == {0: 0, 1: 3, 2: 1}


def test_d_to_llt_size_eight_sample():
    lam = (6, 6, 5, 3, 1, 1)
    data = d_to_llt_data(lam, 8)
    assert data.tuple.offsets == (-48, -39, -46, -45, -52, -51, -42, -49)
    T = filling_from_word(lam, 8, (3, 4, 2, 1, 5, 7, 6, 8))
    assert tuple_inv(data.transport(T), data.tuple) + data.e_const == dinv(T, 1) == 8


@pytest.mark.parametrize("n,m", [(3, 1), (4, 1), (2, 2), (3, 2), (2, 3)])
def test_transport_preserves_statistic(n, m):
    for lam in sub_staircase_iter(n, m):
        assert check_transport(lam, n, m, (1,) * n)
        assert check_transport(lam, n, m, (), (n,))
        if n > 1:
            assert check_transport(lam, n, m, (1,), (n - 1,))


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_components_are_llt(n, m):
    for lam in sub_staircase_iter(n, m):
        t, e = d_to_llt(lam, n, m)
        G = inv_generating(t).map_coeffs(lambda c: c * q ** e)
        assert G == d_component(lam, n, m)
