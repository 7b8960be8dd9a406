"""Acceptance criteria 1-11, each at its full bounds with exact comparisons.

One PASS/FAIL line per criterion is printed at the end of the pytest run
(see ``conftest.py``); ``python tests/test_acceptance.py`` prints the same
lines without pytest.
"""

import sys
import time

import pytest

from qtnabla.verify import ACCEPTANCE, run_criterion

RESULTS: dict[int, tuple[bool, str]] = {}


def summarize(k, results, elapsed):
    failed = [r for r in results if not r.passed]
    status = "PASS" if not failed else "FAIL"
    line = f"{status} criterion {k:2d}: {ACCEPTANCE[k]} ({len(results)} checks, {elapsed:.1f}s)"
    if failed:
        line += "\n" + "\n".join("    " + r.line() for r in failed)
    return not failed, line


@pytest.mark.parametrize("k", sorted(ACCEPTANCE))
def test_criterion(k):
    t0 = time.perf_counter()
    results = run_criterion(k)
    ok, line = summarize(k, results, time.perf_counter() - t0)
    RESULTS[k] = (ok, line)
    print(line)
    assert results, f"criterion {k} ran no checks"
    assert ok, line


def main() -> int:
    all_ok = True
    for k in sorted(ACCEPTANCE):
        t0 = time.perf_counter()
        ok, line = summarize(k, run_criterion(k), time.perf_counter() - t0)
        print(line, flush=True)
        all_ok &= ok
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
