from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qtnabla.ring import ONE, QtPoly, QtRat, q, qq_pochhammer, t
from qtnabla.shapes import (
    SkewShape,
    descent_set,
    enumerate_fillings,
    flag_strip,
    maj,
    partitions,
    standard_tableaux,
)
from qtnabla.symfun import (
    BASES,
    Alphabet,
    NotSymmetric,
    QsymCoeffs,
    SymFunc,
    e,
    h,
    hall_inner,
    m,
    omega_involution,
    p,
    plethysm_eval,
    principal_schur,
    qsym_to_sym,
    s,
    skew_schur,
    superize_coeff,
    superize_coeffs,
)


def random_symfunc(draw, n):
    basis = draw(st.sampled_from(BASES))
    coeffs = {}
    for lam in partitions(n):
        c = draw(st.integers(-3, 3))
        if c:
            coeffs[lam] = QtPoly.monomial(draw(st.integers(0, 2)), draw(st.integers(0, 2)), 0, c)
    return SymFunc(n, basis, coeffs)


@st.composite
def symfuncs(draw, max_degree=5):
    return random_symfunc(draw, draw(st.integers(1, max_degree)))


def test_basis_conversion_examples():
    assert e(2).to("m") == m(1, 1)
    assert h(2).to("m") == m(2) + m(1, 1)
    assert s(2, 1).to("m") == m(2, 1) + m(1, 1, 1) * 2


@pytest.mark.parametrize("n", range(1, 9))
def test_round_trip_conversions(n):
    for lam in partitions(n):
        for src in BASES:
            f = SymFunc.basis_element(src, lam)
            for dst in BASES:
                assert f.to(dst).to(src) == f


def test_hall_inner_examples():
    assert hall_inner(h(2, 1), m(2, 1)) == QtRat.one()
    assert hall_inner(s(2, 1), s(2, 1)) == QtRat.one()
    assert hall_inner(e(2), h(1, 1)) == QtRat.one()
    assert hall_inner(s(2), s(1, 1)) == QtRat.zero()


@given(st.data())
def test_omega_is_an_isometric_involution(data):
    n = data.draw(st.integers(1, 6))
    f = random_symfunc(data.draw, n)
    g = random_symfunc(data.draw, n)
    assert omega_involution(omega_involution(f)) == f
    assert hall_inner(omega_involution(f), omega_involution(g)) == hall_inner(f, g)
    assert hall_inner(f, g) == hall_inner(f.to("s"), g.to("h"))


def test_omega_examples():
    assert omega_involution(e(4)) == h(4)
    assert omega_involution(s(2, 1)) == s(2, 1)
    assert omega_involution(s(3, 1)) == s(2, 1, 1)
    assert omega_involution(p(2)) == -p(2)


def test_plethysm_examples():
    Z_over = Alphabet.z_times(QtRat(ONE, ONE - q))
    assert plethysm_eval(p(2), Z_over) == p(2) * QtRat(ONE, ONE - q * q)
    H = plethysm_eval(h(2), Z_over) * qq_pochhammer(2)
    assert H == m(2) + m(1, 1) * (ONE + q)
    assert plethysm_eval(e(2), Alphabet.finite(ONE + q)) == QtRat(q)
    assert plethysm_eval(e(3), Alphabet.finite(ONE + q)) == QtRat.zero()


def test_plethysm_lambda_ring_identity():
    A = ONE + q + t
    B = q * t + ONE
    for n in range(1, 5):
        lhs = plethysm_eval(e(n), Alphabet.finite(A + B))
        rhs = QtRat.zero()
        for k in range(n + 1):
            ek_a = plethysm_eval(e(k), Alphabet.finite(A)) if k else QtRat.one()
            ek_b = plethysm_eval(e(n - k), Alphabet.finite(B)) if n - k else QtRat.one()
            rhs = rhs + ek_a * ek_b
        assert lhs == rhs


def test_skew_schur_examples():
    assert skew_schur(SkewShape((2,), ())) == h(2)
    assert skew_schur(SkewShape((1, 1), ())) == e(2)
    # the flag strip of (2,1) inside delta_4 has column heights 1, 1, 2 -> e_{2,1,1}
    assert skew_schur(flag_strip((2, 1), 4)) == e(2, 1, 1)


def test_skew_schur_littlewood_richardson_small():
    # s_{21/1} = s_2 + s_11
    assert skew_schur(SkewShape((2, 1), (1,))).to("s") == s(2) + s(1, 1)


def test_qsym_examples():
    c = QsymCoeffs(2, {})
    c.add((), 1)
    assert qsym_to_sym(c) == h(2)
    c = QsymCoeffs(3, {})
    for T in standard_tableaux(SkewShape((2, 1), ())):
        c.add(descent_set(T), 1)
    assert qsym_to_sym(c) == s(2, 1)
    c = QsymCoeffs(3, {})
    c.add({1}, 1)
    with pytest.raises(NotSymmetric):
        qsym_to_sym(c)


@pytest.mark.parametrize("n", range(1, 6))
def test_schur_via_descents(n):
    for lam in partitions(n):
        c = QsymCoeffs(n, {})
        for T in standard_tableaux(SkewShape(lam, ())):
            c.add(descent_set(T), 1)
        assert qsym_to_sym(c) == s(*lam)


def test_superize_examples():
    assert superize_coeff(s(1, 1), (), (2,)) == QtRat.one()
    assert superize_coeff(s(2), (), (2,)) == QtRat.zero()
    assert superize_coeff(s(2), (1,), (1,)) == QtRat.one()


@pytest.mark.parametrize("n", range(1, 6))
def test_super_schur_matches_super_tableaux(n):
    from qtnabla.symfun import _all_compositions

    for lam in partitions(n):
        table = superize_coeffs(s(*lam))
        shape = SkewShape(lam, ())
        for (mu, eta), val in table.items():
            count = sum(1 for _ in enumerate_fillings(shape, mu, eta))
            assert val == QtRat(QtPoly.const(count))
        # eta = () recovers the monomial coefficients
        for mu in partitions(n):
            assert table[(mu, ())] == s(*lam).to("m").coeff(mu)
    # compositions are accepted and sorted
    assert superize_coeff(s(2, 1), (1, 2), ()) == superize_coeff(s(2, 1), (2, 1), ())


@pytest.mark.parametrize("n", range(1, 6))
def test_super_quasisymmetric_superization(n):
    for lam in partitions(n):
        c = QsymCoeffs(n, {})
        for T in standard_tableaux(SkewShape(lam, ())):
            c.add(descent_set(T), 1)
        table = superize_coeffs(qsym_to_sym(c))
        for (mu, eta), val in table.items():
            assert val == QtRat(QtPoly.const(c.super_coeff(mu, eta)))


@pytest.mark.parametrize("n", range(1, 7))
def test_principal_specialization_is_maj_generating_function(n):
    for lam in partitions(n):
        lhs = principal_schur(lam) * qq_pochhammer(n).swap_qt()
        rhs = QtPoly()
        for T in standard_tableaux(SkewShape(lam, ())):
            rhs = rhs + QtPoly.monomial(0, maj(T), 0)
        assert lhs == QtRat(rhs)
        via_plethysm = plethysm_eval(s(*lam), Alphabet.finite(QtRat(ONE, ONE - t)))
        assert via_plethysm == principal_schur(lam)


def test_json_round_trip():
    f = s(2, 1) * (q + t) + s(3) * QtRat(ONE, ONE - q)
    assert SymFunc.from_json(f.to_json()) == f
    assert f.render() == SymFunc.from_json(f.to_json()).render()


def test_schur_positivity_flag():
    assert (s(2) + s(1, 1) * (q + t)).is_schur_positive()
    assert not (s(2) - s(1, 1)).is_schur_positive()
    assert not (s(2) * QtRat(ONE, ONE - q)).is_schur_positive()
