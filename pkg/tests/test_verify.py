import json

import pytest

from qtnabla import verify
from qtnabla.ring import q, t
from qtnabla.symfun import s


def test_check_result_json_round_trip():
    r = verify.run_check("demo", {"n": 2}, lambda: None)
    assert r.passed and r.status == "pass"
    data = json.loads(verify.report_json([r]))
    assert data[0]["name"] == "demo" and data[0]["params"] == {"n": 2}
    assert "witness" not in data[0]
    assert r.line().startswith("PASS demo n=2")


def test_exceptions_become_failures():
    def boom():
        raise ValueError("broken")

    r = verify.run_check("demo", {}, boom)
    assert not r.passed
    assert "ValueError: broken" in r.witness


def test_sym_witness_orders_by_smallest_partition():
    lhs = s(2) + s(1, 1) * q
    rhs = s(2) * 2 + s(1, 1) * t
    w = verify.sym_witness(lhs, rhs)
    assert w.splitlines()[0].startswith("first difference at s[1, 1]")
    assert verify.sym_witness(lhs, lhs) is None
    assert verify.value_witness(q + t, t + q) is None
    assert verify.value_witness(q, t) is not None


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2)])
def test_main_conjecture_small(n, m):
    assert verify.check_main_conjecture(n, m).passed


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (3, 2)])
def test_perturbation_is_detected(n, m):
    r = verify.perturbed_main(n, m)
    assert r.status == "fail"
    assert r.witness.startswith("first difference at s[")


def test_specializations_small():
    results = verify.check_specializations(3, 2)
    assert {r.name for r in results} >= {"q=1", "t=0", "q=0", "t=1/q"}
    assert all(r.passed for r in results)


def test_quick_suite_passes_and_is_reproducible():
    first = verify.run_suite("quick", only=["main", "hilbert_dim", "catalan_dim", "enk"])
    second = verify.run_suite("quick", only=["main", "hilbert_dim", "catalan_dim", "enk"], threads=2)
    assert first and all(r.passed for r in first)
    assert [(r.name, r.params, r.status) for r in first] == [(r.name, r.params, r.status) for r in second]


def test_quick_suite_everything():
    seen = []
    results = verify.run_suite("quick", progress=seen.append)
    failed = [r.line() for r in results if not r.passed]
    assert not failed
    assert len(seen) == len(results)
    assert {r.name for r in results} <= set(verify.CHECK_NAMES) | {"q=1", "t=0", "q=0", "t=1/q", "expand_e"}


def test_unknown_profile():
    with pytest.raises(ValueError):
        verify.run_suite("huge")


def test_acceptance_table_covers_eleven_criteria():
    assert sorted(verify.ACCEPTANCE) == list(range(1, 12))
