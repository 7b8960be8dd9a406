import json

import pytest

from qtnabla import macdonald
from qtnabla.macdonald import (
    CacheError,
    MacdonaldTable,
    check_axioms,
    delta_op,
    e_nk,
    eigenvalue,
    expand_in_macdonald,
    from_macdonald,
    load_table_file,
    modified_macdonald,
    nabla_power,
    save_table,
)
from qtnabla.ring import ONE, QtPoly, QtRat, q, qq_pochhammer, t
from qtnabla.shapes import conjugate, partitions
from qtnabla.symfun import Alphabet, SymFunc, e, h, plethysm_eval, s


def test_small_macdonald_polynomials():
    assert modified_macdonald((1,)) == s(1)
    assert modified_macdonald((2,)) == s(2) + s(1, 1) * q
    assert modified_macdonald((1, 1)) == s(2) + s(1, 1) * t


def test_degree_three_table():
    # H~_{21} = s_3 + (q + t) s_21 + qt s_111
    assert modified_macdonald((2, 1)) == s(3) + s(2, 1) * (q + t) + s(1, 1, 1) * (q * t)
    assert modified_macdonald((3,)) == s(3) + s(2, 1) * (q + q * q) + s(1, 1, 1) * q ** 3


@pytest.mark.parametrize("n", range(1, 7))
def test_axioms_and_conjugation_symmetry(n):
    for mu in partitions(n):
        H = modified_macdonald(mu)
        assert check_axioms(mu, H) == []
        assert modified_macdonald(conjugate(mu)) == H.swap_qt()
        assert H.is_schur_positive()


def test_expand_and_reassemble():
    assert expand_in_macdonald(modified_macdonald((2,))) == {(2,): QtRat.one()}
    assert expand_in_macdonald(s(1)) == {(1,): QtRat.one()}
    for n in range(1, 5):
        f = e(n)
        assert from_macdonald(expand_in_macdonald(f), n) == f.to("s")


def test_nabla_small():
    assert nabla_power(modified_macdonald((2,)), 1) == modified_macdonald((2,)) * q
    assert nabla_power(e(1), 1) == s(1)
    assert nabla_power(e(2), 1) == s(2) + s(1, 1) * (q + t)
    assert eigenvalue((2, 1)) == q * t


@pytest.mark.parametrize("n", range(1, 6))
def test_nabla_inverse(n):
    f = h(n) + e(n) * q
    for m in (1, 2):
        assert nabla_power(nabla_power(f, m), -m) == f.to("s")


@pytest.mark.parametrize("n", range(1, 7))
def test_nabla_en_at_t_zero(n):
    closed = plethysm_eval(h(n), Alphabet.z_times(QtRat(ONE, ONE - q))) * qq_pochhammer(n)
    assert nabla_power(e(n), 1).evaluate(t=0) == closed.to("s")


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 6) for m in (1, 2, 3)])
def test_nabla_power_at_t_zero(n, m):
    closed = plethysm_eval(h(n), Alphabet.z_times(QtRat(ONE, ONE - q))) * qq_pochhammer(n)
    closed = closed * q ** ((m - 1) * n * (n - 1) // 2)
    assert nabla_power(e(n), m).evaluate(t=0) == closed.to("s")


def test_delta_examples():
    H2 = modified_macdonald((2,))
    assert delta_op(e(1), H2) == H2 * (ONE + q)
    for n in range(1, 5):
        assert delta_op(e(n), e(n)) == nabla_power(e(n), 1)
        assert delta_op(SymFunc(0, "e", {(): 1}), e(n)) == e(n).to("s")


def test_enk_small():
    assert e_nk(1, 1) == s(1)
    u = QtPoly.monomial(0, 0, 1)
    for n in range(1, 6):
        total = SymFunc.zero(n, "s")
        rhs = SymFunc.zero(n, "s")
        for k in range(1, n + 1):
            total = total + e_nk(n, k)
            poch = ONE
            for i in range(k):
                poch = poch * (ONE - u * q ** i)
            rhs = rhs + e_nk(n, k) * QtRat(poch, qq_pochhammer(k))
        assert total == e(n).to("s")
        lhs = plethysm_eval(e(n), Alphabet.z_times(QtRat(ONE - u, ONE - q)))
        assert lhs.to("s") == rhs


def test_cache_round_trip(tmp_path):
    table = MacdonaldTable.solve(4)
    path = save_table(table, tmp_path)
    loaded = load_table_file(path)
    assert loaded.entries == table.entries
    assert loaded.entries == macdonald.macdonald_table(4).entries


def test_corrupt_cache_is_named(tmp_path):
    table = MacdonaldTable.solve(3)
    path = save_table(table, tmp_path)
    data = json.loads(path.read_text())
    data["entries"][0]["H"]["terms"][0]["coeff"] = "2"
    path.write_text(json.dumps(data))
    with pytest.raises(CacheError, match=str(path)):
        load_table_file(path)
    path.write_text("{not json")
    with pytest.raises(CacheError, match="macdonald-3.json"):
        load_table_file(path)


def test_cache_directory_is_used(tmp_path):
    save_table(MacdonaldTable.solve(2), tmp_path)
    macdonald.set_cache_dir(tmp_path)
    try:
        assert (tmp_path / "macdonald-2.json").exists()
        assert macdonald.macdonald_table(2)[(2,)] == s(2) + s(1, 1) * q
    finally:
        macdonald.set_cache_dir(None)
