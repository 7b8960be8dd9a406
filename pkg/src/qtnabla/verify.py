"""Named, parameterized identity checks with exact comparisons.

Every check returns :class:`CheckResult` objects instead of raising, so a sweep
always completes and reports every discrepancy.  The Macdonald side comes only
from :mod:`qtnabla.macdonald`; the combinatorial side only from
:mod:`qtnabla.shuffle` and :mod:`qtnabla.llt`.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from . import llt, macdonald, shuffle
from .ring import ONE, QtPoly, QtRat, as_rat, q, q_binomial, q_int, qq_pochhammer, t
from .shapes import (
    SkewShape,
    conjugate,
    n_stat,
    partitions,
    standardize,
    staircase,
    sub_staircase_iter,
)
from .symfun import (
    Alphabet,
    NotSymmetric,
    SymFunc,
    _all_compositions,
    e as e_basis,
    h as h_basis,
    plethysm_eval,
    superize_coeffs,
)


@dataclass
class CheckResult:
    name: str
    params: dict
    status: str
    witness: str | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["witness"] is None:
            del d["witness"]
        d["elapsed"] = round(d["elapsed"], 4)
        return d

    def line(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        tail = f"  [{self.witness.splitlines()[0]}]" if self.witness else ""
        return f"{self.status.upper():4} {self.name} {ps} ({self.elapsed:.2f}s){tail}"


def report_json(results: Iterable[CheckResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True)


# -- comparison helpers --------------------------------------------------------

def _render(x) -> str:
    return x.render() if isinstance(x, SymFunc) else str(x)


def sym_witness(lhs: SymFunc, rhs: SymFunc, basis: str = "s") -> str | None:
    """None when equal; otherwise both sides and the difference, smallest
    disagreeing partition (lexicographically) first."""
    a, b = lhs.to(basis), rhs.to(basis)
    diff = a - b
    if diff.is_zero():
        return None
    keys = sorted(diff.coeffs)
    first = keys[0]
    lines = [
        f"first difference at {basis}{list(first)}: {a.coeff(first)} vs {b.coeff(first)}",
        f"lhs = {a.render()}",
        f"rhs = {b.render()}",
        f"lhs - rhs = {diff.render()}",
    ]
    return "\n".join(lines)


def value_witness(lhs, rhs) -> str | None:
    if as_rat(lhs) == as_rat(rhs):
        return None
    return f"lhs = {lhs}\nrhs = {rhs}\nlhs - rhs = {as_rat(lhs) - as_rat(rhs)}"


def run_check(name: str, params: dict, body: Callable[[], str | None]) -> CheckResult:
    """Time ``body``; it returns a witness string on failure and None on success."""
    t0 = time.perf_counter()
    try:
        witness = body()
    except NotSymmetric as exc:
        witness = f"not symmetric: {exc} (witness {exc.witness})"
    except Exception as exc:  # failures are data, not exceptions
        witness = f"{type(exc).__name__}: {exc}"
    status = "pass" if witness is None else "fail"
    return CheckResult(name, dict(params), status, witness, time.perf_counter() - t0)


def _first(items: Iterable[str | None]) -> str | None:
    for w in items:
        if w is not None:
            return w
    return None


@lru_cache(maxsize=32)
def _D(n: int, m: int) -> SymFunc:
    return shuffle.compute_D(n, m)


# -- the main conjecture --------------------------------------------------------

def check_main_conjecture(n: int, m: int = 1) -> CheckResult:
    """nabla^m e_n == D_n^{(m)} in the Schur basis."""
    return run_check(
        "main",
        {"n": n, "m": m},
        lambda: sym_witness(macdonald.nabla_power(e_basis(n), m), _D(n, m)),
    )


# -- specializations -------------------------------------------------------------

def _closed_q1(n: int, m: int) -> SymFunc:
    """sum over lam of t^area e_alpha, alpha the column heights of the flag strip."""
    total = SymFunc.zero(n, "e")
    for lam in sub_staircase_iter(n, m):
        alpha = shuffle.column_heights(lam, n)
        total = total + SymFunc.basis_element("e", alpha) * QtPoly.monomial(0, shuffle.area(lam, n, m), 0)
    return total


def _closed_h(n: int, var: QtPoly, shift: int) -> SymFunc:
    """var^shift (var; var)_n h_n[Z/(1 - var)]."""
    r = QtRat(ONE, ONE - var)
    f = plethysm_eval(h_basis(n), Alphabet.z_times(r))
    poch = ONE
    for i in range(1, n + 1):
        poch = poch * (ONE - var ** i)
    return f * (poch * var ** shift)


def _e_of_qint(n: int, N: int) -> SymFunc:
    """e_n[Z [N]_q]."""
    return plethysm_eval(e_basis(n), Alphabet.z_times(q_int(N)))


def _expand_e_witness(n: int, N: int) -> str | None:
    f = _e_of_qint(n, N).to("m")
    for mu in partitions(n):
        expected = QtPoly.monomial(n_stat(conjugate(mu)), 0, 0)
        for part_ in mu:
            expected = expected * q_binomial(N, part_)
        w = value_witness(f.coeff(mu), expected)
        if w:
            return f"<e_n[Z[{N}]_q], h_{list(mu)}>\n{w}"
    return None


def check_specializations(n: int, m: int = 1) -> list[CheckResult]:
    """q=1, t=0, q=0, t=1/q and the monomial expansion of e_n[Z[mn+1]_q]."""
    return [thunk() for _, thunk in specialization_checks(n, m)]


# -- E_{n,k} ------------------------------------------------------------------------

def _enk_sum_witness(n: int) -> str | None:
    total = SymFunc.zero(n, "s")
    for k in range(1, n + 1):
        total = total + macdonald.e_nk(n, k)
    return sym_witness(total, e_basis(n))


def _enk_identity_witness(n: int) -> str | None:
    """e_n[Z(1-u)/(1-q)] == sum_k (u;q)_k/(q;q)_k E_{n,k}, identically in u."""
    u = QtPoly.monomial(0, 0, 1)
    lhs = plethysm_eval(e_basis(n), Alphabet.z_times(QtRat(ONE - u, ONE - q)))
    rhs = SymFunc.zero(n, "s")
    for k in range(1, n + 1):
        poch = ONE
        for i in range(k):
            poch = poch * (ONE - u * q ** i)
        rhs = rhs + macdonald.e_nk(n, k) * QtRat(poch, qq_pochhammer(k))
    return sym_witness(lhs, rhs)


def check_enk(n: int, m: int = 1) -> CheckResult:
    """nabla^m E_{n,k} == the touch-count sum, for every k; and sum_k E_{n,k} = e_n."""

    def body() -> str | None:
        w = _enk_sum_witness(n)
        if w:
            return "sum_k E_{n,k} != e_n\n" + w
        for k in range(1, n + 1):
            w = sym_witness(
                macdonald.nabla_power(macdonald.e_nk(n, k), m), shuffle.nabla_enk_rhs(n, k, m)
            )
            if w:
                return f"k={k}\n{w}"
        return None

    return run_check("enk", {"n": n, "m": m}, body)


def check_enk_identity(n: int) -> CheckResult:
    return run_check(
        "enk_identity",
        {"n": n},
        lambda: _first([_enk_sum_witness(n), _enk_identity_witness(n)]),
    )


# -- counting and symmetry --------------------------------------------------------

def check_dimension(n: int) -> CheckResult:
    """<D_n, e_1^n> at q=t=1 is (n+1)^(n-1)."""
    return run_check(
        "hilbert_dim",
        {"n": n},
        lambda: value_witness(shuffle.hilbert_series(n).evaluate(q=1, t=1), (n + 1) ** (n - 1)),
    )


def check_catalan_count(n: int) -> CheckResult:
    """<D_n, e_n> at q=t=1 is the Catalan number."""
    return run_check(
        "catalan_dim",
        {"n": n},
        lambda: value_witness(
            shuffle.super_D_coeff(n, 1, (), (n,)).evaluate(q=1, t=1), comb(2 * n, n) // (n + 1)
        ),
    )


def check_component_symmetry(n: int, m: int = 1) -> CheckResult:
    def body() -> str | None:
        for lam in sub_staircase_iter(n, m):
            if not shuffle.component_symmetric(lam, n, m):
                return f"D^lam not symmetric for lam={lam}"
        return None

    return run_check("component_symmetry", {"n": n, "m": m}, body)


def check_schur_positivity(n: int, m: int = 1) -> CheckResult:
    def body() -> str | None:
        D = _D(n, m).to("s")
        if not D.is_schur_positive():
            return f"not Schur positive: {D.render()}"
        return None

    return run_check("schur_positive", {"n": n, "m": m}, body)


def check_component_positivity(n: int, m: int = 1) -> CheckResult:
    def body() -> str | None:
        for lam in sub_staircase_iter(n, m):
            comp = shuffle.d_component(lam, n, m, check_symmetry=False).to("s")
            if not comp.is_schur_positive():
                return f"D^lam not Schur positive for lam={lam}: {comp.render()}"
        return None

    return run_check("component_positive", {"n": n, "m": m}, body)


def check_qt_symmetry(n: int, m: int = 1) -> CheckResult:
    """Experimental: D(q,t) = D(t,q)."""
    def body() -> str | None:
        D = _D(n, m)
        return sym_witness(D, D.swap_qt())

    return run_check("qt_symmetry", {"n": n, "m": m, "experimental": True}, body)


def check_catalan_hook(n: int, m: int = 1) -> CheckResult:
    """b_m(lam) == dinv_m of the all-~1 filling, for every lam inside m delta_n."""
    def body() -> str | None:
        lams, b, dneg = shuffle.catalan_sweep(n, m)
        bad = (b != dneg).nonzero()[0]
        if len(bad):
            i = int(bad[0])
            lam = tuple(int(x) for x in lams[i] if x)
            return f"lam={lam}: b_m={int(b[i])}, dinv={int(dneg[i])}"
        # spot check the vectorized sweep against the scalar statistics
        step = max(1, len(lams) // 200)
        for i in range(0, len(lams), step):
            lam = tuple(int(x) for x in lams[i] if x)
            if shuffle.catalan_stats(lam, n, m) != (int(b[i]), int(dneg[i])):
                return f"sweep disagrees with catalan_stats at lam={lam}"
        return None

    return run_check("catalan_hook", {"n": n, "m": m}, body)


def check_catalan_poly(n: int, m: int = 1) -> CheckResult:
    """qt_catalan == <D, e_n> from the all-~1 fillings."""
    return run_check(
        "qt_catalan",
        {"n": n, "m": m},
        lambda: value_witness(shuffle.qt_catalan(n, m), shuffle.super_D_coeff(n, m, (), (n,))),
    )


def check_dinv_zero(n: int) -> CheckResult:
    """dinv(T) = 0 iff lam' has distinct parts and Des(w w_0) is the set of parts of lam'."""
    def body() -> str | None:
        for lam in sub_staircase_iter(n, 1):
            conj = set(conjugate(lam))
            distinct = len(conjugate(lam)) == len(conj)
            for word, d in shuffle.strip_words(lam, n, (1,) * n):
                T = shuffle.filling_from_word(lam, n, word)
                w = shuffle.parking_word(T)
                criterion = distinct and shuffle.descents(tuple(reversed(w))) == conj
                if (d == 0) != criterion:
                    return f"lam={lam}, word={word}: dinv={d}, criterion={criterion}"
        return None

    return run_check("dinv_zero", {"n": n}, body)


def check_equal_rule(n: int, m: int = 1) -> CheckResult:
    """The order-based and min/max readings of equal letters agree on all super fillings."""
    def body() -> str | None:
        for lam in sub_staircase_iter(n, m):
            for k in range(n + 1):
                for mu in _compositions_or_empty(k):
                    for eta in _compositions_or_empty(n - k):
                        for word, d in shuffle.strip_words(lam, n, mu, eta, m):
                            T = shuffle.filling_from_word(lam, n, word)
                            if shuffle.dinv(T, m, equal_rule="minmax") != d:
                                return f"lam={lam}, word={word}"
        return None

    return run_check("equal_rule", {"n": n, "m": m}, body)


def check_standardization(n: int, m: int = 1) -> CheckResult:
    """dinv(T) == dinv(standardize(T, d_order))."""
    def body() -> str | None:
        for lam in sub_staircase_iter(n, m):
            for k in range(n + 1):
                for mu in _compositions_or_empty(k):
                    for eta in _compositions_or_empty(n - k):
                        for word, d in shuffle.strip_words(lam, n, mu, eta, m):
                            T = shuffle.filling_from_word(lam, n, word)
                            S = standardize(T, "d_order", m)
                            if shuffle.dinv(S, m) != d:
                                return f"lam={lam}, word={word}"
        return None

    return run_check("standardization", {"n": n, "m": m}, body)


def _compositions_or_empty(k: int) -> list[tuple[int, ...]]:
    return list(_all_compositions(k)) if k else [()]


def _content_pairs(n: int):
    for k in range(n + 1):
        for mu in _compositions_or_empty(k):
            for eta in _compositions_or_empty(n - k):
                yield mu, eta


# -- fermionic and Schroder ---------------------------------------------------------

def check_fermionic(n: int) -> CheckResult:
    """sum over sigma of the fermionic summand == super_D_coeff, every (mu, eta)."""
    def body() -> str | None:
        for mu, eta in _content_pairs(n):
            w = value_witness(shuffle.fermionic_sum(n, mu, eta), shuffle.super_D_coeff(n, 1, mu, eta))
            if w:
                return f"mu={mu}, eta={eta}\n{w}"
        return None

    return run_check("fermionic", {"n": n}, body)


def check_fermionic_reorder(n: int) -> CheckResult:
    """The fermionic sum does not depend on the order of the parts of mu and eta."""
    def body() -> str | None:
        seen: dict = {}
        for mu, eta in _content_pairs(n):
            key = (tuple(sorted(mu)), tuple(sorted(eta)))
            val = shuffle.fermionic_sum(n, mu, eta)
            if key in seen and seen[key] != val:
                return f"mu={mu}, eta={eta}: {val} vs {seen[key]}"
            seen.setdefault(key, val)
        return None

    return run_check("fermionic_reorder", {"n": n}, body)


def check_fermionic_H(n: int) -> CheckResult:
    """H(sigma) from the product formula and from parking functions; H^mu * prod [b]! = H."""
    from itertools import permutations

    def body() -> str | None:
        brute = shuffle.brute_force_H(n)
        for sigma in permutations(range(1, n + 1)):
            w = value_witness(brute.get(sigma, QtPoly()), shuffle.fermionic_H(sigma))
            if w:
                return f"sigma={sigma}\n{w}"
        for mu in partitions(n):
            part_mu = shuffle.brute_force_H(n, mu)
            for sigma, val in part_mu.items():
                w = value_witness(val * shuffle.q_factorial_product(sigma, mu), brute[sigma])
                if w:
                    return f"sigma={sigma}, mu={mu}\n{w}"
        return None

    return run_check("fermionic_H", {"n": n}, body)


def check_schroder(n: int) -> CheckResult:
    def body() -> str | None:
        for d in range(n + 1):
            mu = (d,) if d else ()
            eta = (n - d,) if n - d else ()
            w = value_witness(shuffle.schroder_sum(n, d), shuffle.super_D_coeff(n, 1, mu, eta))
            if w:
                return f"d={d}\n{w}"
        return None

    return run_check("schroder", {"n": n}, body)


def check_shuffle_reorder(n: int) -> CheckResult:
    """Sums over mu,eta-shuffles do not depend on the order of the parts."""
    def body() -> str | None:
        seen: dict = {}
        for mu, eta in _content_pairs(n):
            key = (tuple(sorted(mu)), tuple(sorted(eta)))
            val = shuffle.shuffle_sum(n, mu, eta)
            if key in seen and seen[key] != val:
                return f"mu={mu}, eta={eta}"
            seen.setdefault(key, val)
            w = value_witness(val, shuffle.super_D_coeff(n, 1, mu, eta))
            if w:
                return f"shuffle sum vs super coefficient at mu={mu}, eta={eta}\n{w}"
        return None

    return run_check("shuffle_reorder", {"n": n}, body)


# -- coherence --------------------------------------------------------------------

def check_coherence(n: int, m: int = 1) -> CheckResult:
    """Quasisymmetric assembly, superization and direct enumeration agree."""
    def body() -> str | None:
        D = _D(n, m)
        w = sym_witness(shuffle.compute_D_sum(n, m), D)
        if w:
            return "per-component sum\n" + w
        if m == 1:
            w = sym_witness(shuffle.compute_D_qsym(n, m), D)
            if w:
                return "quasisymmetric assembly\n" + w
        table = superize_coeffs(D)
        for (mu, eta), val in table.items():
            direct = shuffle.super_D_coeff(n, m, mu, eta)
            w = value_witness(direct, val)
            if w:
                return f"superization at mu={mu}, eta={eta}\n{w}"
            if m == 1:
                w = value_witness(shuffle.super_D_coeff_qsym(n, m, mu, eta), direct)
                if w:
                    return f"super quasisymmetric at mu={mu}, eta={eta}\n{w}"
        return None

    return run_check("coherence", {"n": n, "m": m}, body)


# -- LLT -------------------------------------------------------------------------------

def ribbon_family(max_size: int, n: int):
    """Skew shapes mu/nu with |mu| <= max_size that can be tiled by n-ribbons."""
    for s in range(max_size + 1):
        for mu in partitions(s):
            for nu in llt.ribbon_subshapes(mu, n)[1:]:
                yield SkewShape(mu, nu)


def check_spin_inv(max_size: int, n: int) -> CheckResult:
    """spin(T) = e - inv(quot(T)) with one e per shape (standard and semistandard T)."""
    def body() -> str | None:
        for shape in ribbon_family(max_size, n):
            tup = llt.n_quotient(shape, n)
            consts = set()
            for T in llt.standard_ribbon_tableaux(shape, n):
                consts.add(llt.spin(T) + llt.tuple_inv(llt.tableau_quotient(T), tup))
            for alpha in _all_compositions(shape.size // n):
                for T in llt.ribbon_tableaux(shape, n, alpha):
                    consts.add(llt.spin(T) + llt.tuple_inv(llt.tableau_quotient(T), tup))
            if len(consts) != 1:
                return f"shape {shape}: constants {sorted(consts)}"
        return None

    return run_check("spin_inv", {"max_size": max_size, "n": n}, body)


def check_quotient_bijection(max_size: int, n: int) -> CheckResult:
    """quot_n round-trips, preserves sizes and matches tilings with SSYT of the quotient."""
    def body() -> str | None:
        from .shapes import count_ssyt

        for s in range(max_size + 1):
            for mu in partitions(s):
                core = llt.n_core(mu, n).core
                shape = SkewShape(mu, core)
                tup = llt.n_quotient(shape, n)
                if llt.quot_inverse(tup, n) != shape:
                    return f"round trip fails for {mu}"
                if n * tup.size != shape.size:
                    return f"size identity fails for {mu}"
                for nu in llt.ribbon_subshapes(mu, n):
                    sub = llt.n_quotient(SkewShape(nu, core), n)
                    if not all(
                        all(a >= b for a, b in zip(big.outer + (0,) * 20, small.outer))
                        for big, small in zip(tup.shapes, sub.shapes)
                    ):
                        return f"containment not preserved: {nu} in {mu}"
        for shape in ribbon_family(min(max_size, 10), n):
            tup = llt.n_quotient(shape, n)
            std = sum(1 for _ in llt.standard_ribbon_tableaux(shape, n))
            sk, _ = tup.as_skew()
            expected = count_ssyt(sk.outer, sk.inner, (1,) * tup.size)
            if std != expected:
                return f"{shape}: {std} standard ribbon tableaux vs {expected} SYT of the quotient"
        return None

    return run_check("quotient_bijection", {"max_size": max_size, "n": n}, body)


def check_transport(n: int, m: int) -> CheckResult:
    """inv(T') == dinv'_m(T) under d_to_llt for all super fillings."""
    def body() -> str | None:
        for lam in sub_staircase_iter(n, m):
            for mu, eta in _content_pairs(n):
                if not llt.check_transport(lam, n, m, mu, eta):
                    return f"lam={lam}, mu={mu}, eta={eta}"
        return None

    return run_check("dinv_transport", {"n": n, "m": m}, body)


def check_llt_components(n: int, m: int) -> CheckResult:
    """q^e * (inversion series of the d_to_llt tuple) == d_component."""
    def body() -> str | None:
        for lam in sub_staircase_iter(n, m):
            tup, e_const = llt.d_to_llt(lam, n, m)
            G = llt.inv_generating(tup).map_coeffs(lambda c: c.as_poly().shift(e_const, 0, 0))
            w = sym_witness(G, shuffle.d_component(lam, n, m))
            if w:
                return f"lam={lam}\n{w}"
        return None

    return run_check("llt_components", {"n": n, "m": m}, body)


def check_llt_positivity(max_size: int, n: int) -> CheckResult:
    """G_{mu/core} is symmetric (both routes agree) and Schur positive."""
    def body() -> str | None:
        for s in range(1, max_size + 1):
            for mu in partitions(s):
                core = llt.n_core(mu, n).core
                if sum(core) == s:
                    continue
                G = llt.llt_poly(SkewShape(mu, core), n)
                if not G.is_schur_positive():
                    return f"G_{mu} not Schur positive: {G.render()}"
        return None

    return run_check("llt_positive", {"max_size": max_size, "n": n}, body)


# -- suites ---------------------------------------------------------------------------

def _profile_jobs(profile: str) -> list[tuple[str, Callable[[], list[CheckResult]]]]:
    quick = profile == "quick"
    nmax1 = 4 if quick else 6
    jobs: list[tuple[str, Callable[[], list[CheckResult]]]] = []

    def one(name, fn, *args):
        jobs.append((name, lambda: [fn(*args)]))

    for n in range(1, nmax1 + 1):
        one("main", check_main_conjecture, n, 1)
    for n, m in ([(2, 2), (3, 2)] if quick else [(2, 2), (3, 2), (2, 3), (4, 2)]):
        one("main", check_main_conjecture, n, m)
    for n in range(1, (4 if quick else 7) + 1):
        one("hilbert_dim", check_dimension, n)
    for n in range(1, (4 if quick else 8) + 1):
        one("catalan_dim", check_catalan_count, n)
    spec_bounds = {
        "q=1": (4, 2) if quick else (7, 2),
        "t=0": (4, 2) if quick else (6, 3),
        "q=0": (4, 2) if quick else (6, 2),
        "t=1/q": (4, 2) if quick else (5, 2),
    }
    nmax = max(b[0] for b in spec_bounds.values())
    mmax = max(b[1] for b in spec_bounds.values())
    for n in range(1, nmax + 1):
        for m in range(1, mmax + 1):
            wanted = [k for k, (bn, bm) in spec_bounds.items() if n <= bn and m <= bm]
            if wanted:
                jobs.append(("specializations", _spec_job(n, m, wanted)))
    for n in range(1, (4 if quick else 6) + 1):
        one("component_symmetry", check_component_symmetry, n, 1)
    for m in (2, 3):
        for n in range(1, 5 if not quick else 4):
            one("component_symmetry", check_component_symmetry, n, m)
    for n in range(1, (4 if quick else 6) + 1):
        for m in (1, 2):
            one("schur_positive", check_schur_positivity, n, m)
    for n in range(1, (4 if quick else 8) + 1):
        for m in (1, 2, 3):
            one("catalan_hook", check_catalan_hook, n, m)
    for n in range(1, (4 if quick else 6) + 1):
        one("fermionic", check_fermionic, n)
        one("fermionic_reorder", check_fermionic_reorder, n)
        one("schroder", check_schroder, n)
    for n in range(1, (4 if quick else 5) + 1):
        one("fermionic_H", check_fermionic_H, n)
    for n in (2, 3):
        one("spin_inv", check_spin_inv, 8 if quick else 12, n)
        one("quotient_bijection", check_quotient_bijection, 8 if quick else 16, n)
        one("llt_positive", check_llt_positivity, 8 if quick else 10, n)
    for n in range(1, (4 if quick else 5) + 1):
        for m in (1, 2):
            one("dinv_transport", check_transport, n, m)
            one("llt_components", check_llt_components, n, m)
    for n in range(1, (4 if quick else 5) + 1):
        one("enk_identity", check_enk_identity, n)
    for n in range(1, 5 if not quick else 4):
        for m in (1, 2):
            one("enk", check_enk, n, m)
    for n in range(1, (4 if quick else 5) + 1):
        for m in (1, 2):
            one("coherence", check_coherence, n, m)
    # invariants beyond the numbered criteria
    for n in range(1, (4 if quick else 6) + 1):
        for m in (1, 2):
            if quick or n <= 5 or m == 1:
                one("component_positive", check_component_positivity, n, m)
                one("qt_symmetry", check_qt_symmetry, n, m)
    for n in range(1, (4 if quick else 7) + 1):
        one("dinv_zero", check_dinv_zero, n)
    for n in range(1, (4 if quick else 5) + 1):
        one("shuffle_reorder", check_shuffle_reorder, n)
        for m in (1, 2):
            one("qt_catalan", check_catalan_poly, n, m)
            if quick or m == 1 or n <= 4:
                one("standardization", check_standardization, n, m)
                one("equal_rule", check_equal_rule, n, m)
    return jobs


def _spec_job(n: int, m: int, wanted: Sequence[str]):
    def run() -> list[CheckResult]:
        return [
            thunk()
            for name, thunk in specialization_checks(n, m)
            if name in wanted or (name == "expand_e" and "t=1/q" in wanted)
        ]

    return run


def specialization_checks(n: int, m: int):
    """(name, thunk) pairs, so callers can run a subset of the specializations."""
    params = {"n": n, "m": m}
    c2 = comb(n, 2)
    N = m * n + 1

    def q_one() -> str | None:
        return sym_witness(shuffle.compute_D_q1(n, m), _closed_q1(n, m))

    def t_zero() -> str | None:
        top = shuffle.d_component(staircase(n, m), n, m)
        return sym_witness(top, _closed_h(n, q, (m - 1) * c2))

    def q_zero() -> str | None:
        return sym_witness(shuffle.compute_D_q0(n, m), _closed_h(n, t, (m - 1) * c2))

    def t_inverse() -> str | None:
        D = _D(n, m).evaluate(t=QtPoly.monomial(-1, 0, 0))
        closed = _e_of_qint(n, N) * QtRat(QtPoly.monomial(-m * c2, 0, 0), q_int(N))
        return sym_witness(D, closed)

    return [
        ("q=1", lambda: run_check("q=1", params, q_one)),
        ("t=0", lambda: run_check("t=0", params, t_zero)),
        ("q=0", lambda: run_check("q=0", params, q_zero)),
        ("t=1/q", lambda: run_check("t=1/q", params, t_inverse)),
        ("expand_e", lambda: run_check("expand_e", {"n": n, "N": N}, lambda: _expand_e_witness(n, N))),
    ]


CHECK_NAMES = (
    "main", "hilbert_dim", "catalan_dim", "specializations", "component_symmetry",
    "schur_positive", "catalan_hook", "fermionic", "fermionic_reorder", "fermionic_H",
    "schroder", "spin_inv", "quotient_bijection", "llt_positive", "dinv_transport",
    "llt_components", "enk_identity", "enk", "coherence", "component_positive",
    "qt_symmetry", "dinv_zero", "shuffle_reorder", "qt_catalan", "standardization",
    "equal_rule",
)


def run_suite(
    profile: str = "quick",
    only: Sequence[str] | None = None,
    threads: int = 1,
    progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    """Run the quick or full profile; results in deterministic job order."""
    if profile not in ("quick", "full"):
        raise ValueError(f"unknown profile {profile!r}")
    jobs = [(name, fn) for name, fn in _profile_jobs(profile) if not only or name in only]
    results: list[list[CheckResult]] = [[] for _ in jobs]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(fn) for _, fn in jobs]
            for i, fut in enumerate(futures):
                results[i] = fut.result()
                if progress:
                    for r in results[i]:
                        progress(r)
    else:
        for i, (_, fn) in enumerate(jobs):
            results[i] = fn()
            if progress:
                for r in results[i]:
                    progress(r)
    return [r for group in results for r in group]


# -- acceptance criteria ------------------------------------------------------------

ACCEPTANCE = {
    1: "nabla e_n = D_n, n <= 6",
    2: "higher powers of nabla",
    3: "dimension and Catalan counts",
    4: "specializations q=1, t=0, q=0, t=1/q",
    5: "per-component symmetry and Schur positivity",
    6: "Catalan hook lemmas",
    7: "fermionic formulas",
    8: "Schroder identity",
    9: "LLT layer",
    10: "E_{n,k} identities",
    11: "cross-formulation coherence",
}


def _criterion_jobs(k: int) -> list[Callable[[], list[CheckResult]]]:
    jobs: list[Callable[[], list[CheckResult]]] = []

    def add(fn, *args):
        jobs.append(lambda: [fn(*args)])

    if k == 1:
        for n in range(1, 7):
            add(check_main_conjecture, n, 1)
    elif k == 2:
        for n, m in ((2, 2), (3, 2), (2, 3), (4, 2)):
            add(check_main_conjecture, n, m)
    elif k == 3:
        for n in range(1, 8):
            add(check_dimension, n)
        for n in range(1, 9):
            add(check_catalan_count, n)
    elif k == 4:
        bounds = {"q=1": (7, 2), "t=0": (6, 3), "q=0": (6, 2), "t=1/q": (5, 2)}
        for n in range(1, 8):
            for m in range(1, 4):
                wanted = [name for name, (bn, bm) in bounds.items() if n <= bn and m <= bm]
                if wanted:
                    jobs.append(_spec_job(n, m, wanted))
    elif k == 5:
        for n in range(1, 7):
            add(check_component_symmetry, n, 1)
        for m in (2, 3):
            for n in range(1, 5):
                add(check_component_symmetry, n, m)
        for n in range(1, 7):
            for m in (1, 2):
                add(check_schur_positivity, n, m)
    elif k == 6:
        for n in range(1, 9):
            for m in (1, 2, 3):
                add(check_catalan_hook, n, m)
    elif k == 7:
        for n in range(1, 7):
            add(check_fermionic, n)
            add(check_fermionic_reorder, n)
    elif k == 8:
        for n in range(1, 7):
            add(check_schroder, n)
    elif k == 9:
        for n in (2, 3):
            add(check_spin_inv, 12, n)
        for n in range(1, 6):
            for m in (1, 2):
                add(check_transport, n, m)
        for n in (2, 3):
            add(check_llt_positivity, 10, n)
    elif k == 10:
        for n in range(1, 6):
            add(check_enk_identity, n)
        for n in range(1, 5):
            for m in (1, 2):
                add(check_enk, n, m)
    elif k == 11:
        for n in range(1, 6):
            add(check_coherence, n, 1)
    else:
        raise ValueError(f"no acceptance criterion {k}")
    return jobs


def run_criterion(k: int) -> list[CheckResult]:
    """Every check behind one numbered acceptance criterion, at its full bounds."""
    return [r for job in _criterion_jobs(k) for r in job()]


def perturbed_main(n: int, m: int = 1) -> CheckResult:
    """Harness sanity: flip one Schur coefficient of D and rerun the main comparison."""
    def body() -> str | None:
        D = _D(n, m).to("s")
        lam = sorted(D.coeffs)[0]
        bumped = D + SymFunc(n, "s", {lam: 1})
        return sym_witness(macdonald.nabla_power(e_basis(n), m), bumped)

    return run_check("main", {"n": n, "m": m, "perturbed": True}, body)
