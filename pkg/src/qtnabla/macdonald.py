"""Modified Macdonald polynomials, nabla, Delta_f and the functions E_{n,k}.

H~_mu is the unique symmetric function with

  (A1) H~_mu[Z(1-q)] in the span of s_lam, lam >= mu (dominance),
  (A2) H~_mu[Z(1-t)] in the span of s_lam, lam >= mu',
  (A3) <H~_mu, s_(n)> = 1.

The linear system is solved exactly over Q at integer points (q0, t0) and the
Schur coefficients are recovered by bivariate interpolation, using
deg_q <= n(mu') and deg_t <= n(mu).  The interpolated answer is then checked
against (A1)-(A3) symbolically, and the system is confirmed to have full rank,
so the result does not rest on the degree bounds: a wrong bound would make the
symbolic check fail.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

import flint

from .ring import ONE, QtPoly, QtRat, as_rat, q, q_pochhammer, qq_pochhammer
from .shapes import Partition, as_partition, conjugate, dominates, n_stat, partitions
from .symfun import Alphabet, SymFunc, _from_m, _to_m, e as e_basis, plethysm_eval

CACHE_VERSION = 1


class MacdonaldError(ArithmeticError):
    """The axiom system misbehaved (singular, inconsistent or non-integral)."""


class CacheError(ValueError):
    """A cache file failed validation."""


# -- Schur/power-sum plumbing ------------------------------------------------

def _fq(x) -> flint.fmpq:
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _fmat(rows: Mapping, parts) -> flint.fmpq_mat:
    k = len(parts)
    return flint.fmpq_mat(k, k, [_fq(rows[a].get(b, 0)) for a in parts for b in parts])


@lru_cache(maxsize=None)
def _schur_power(n: int):
    """(S2P, P2S): Schur-to-power-sum and inverse, as flint matrices."""
    parts = partitions(n)
    s_to_m = _fmat(_to_m(n, "s"), parts)
    m_to_p = _fmat(_from_m(n, "p"), parts)
    s2p = s_to_m * m_to_p
    return s2p, s2p.inv()


def _phi_poly(rho: Partition) -> list[int]:
    """Coefficients of prod_i (1 - a^{rho_i}) in a."""
    coeffs = [1]
    for r in rho:
        new = coeffs + [0] * r
        for k, c in enumerate(coeffs):
            new[k + r] -= c
        coeffs = new
    return coeffs


@lru_cache(maxsize=None)
def plethysm_matrix(n: int) -> tuple[tuple[dict[int, int], ...], ...]:
    """B[lam][nu] as {exponent: int}: s_lam[Z(1-a)] = sum_nu B[lam][nu](a) s_nu."""
    parts = partitions(n)
    k = len(parts)
    s2p, p2s = _schur_power(n)
    phis = [_phi_poly(rho) for rho in parts]
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc: dict[int, Fraction] = {}
            for r in range(k):
                a, b = s2p[i, r], p2s[r, j]
                if a == 0 or b == 0:
                    continue
                w = Fraction(int(a.p), int(a.q)) * Fraction(int(b.p), int(b.q))
                for ex, c in enumerate(phis[r]):
                    if c:
                        acc[ex] = acc.get(ex, 0) + w * c
            entry = {}
            for ex, v in acc.items():
                if v:
                    if v.denominator != 1:
                        raise MacdonaldError("non-integral plethysm matrix")
                    entry[ex] = int(v)
            row.append(entry)
        out.append(tuple(row))
    return tuple(out)


def _eval_univariate(poly: Mapping[int, int], a) -> Fraction:
    return sum((c * Fraction(a) ** ex for ex, c in poly.items()), Fraction(0))


def _numeric_plethysm(n: int, a) -> flint.fmpq_mat:
    B = plethysm_matrix(n)
    k = len(B)
    return flint.fmpq_mat(k, k, [_fq(_eval_univariate(B[i][j], a)) for i in range(k) for j in range(k)])


def _as_qt(poly: Mapping[int, int], var: str) -> QtPoly:
    if var == "q":
        return QtPoly({(ex, 0, 0): c for ex, c in poly.items()})
    return QtPoly({(0, ex, 0): c for ex, c in poly.items()})


# -- the axiom system ---------------------------------------------------------

def _constraints(mu: Partition):
    n = sum(mu)
    parts = partitions(n)
    mu_c = conjugate(mu)
    zero_q = [j for j, lam in enumerate(parts) if not dominates(lam, mu)]
    zero_t = [j for j, lam in enumerate(parts) if not dominates(lam, mu_c)]
    return zero_q, zero_t


def _solve_at(mu: Partition, q0, t0) -> list[Fraction]:
    """Schur coefficients of H~_mu at q=q0, t=t0 (exact rationals)."""
    n = sum(mu)
    parts = partitions(n)
    k = len(parts)
    zero_q, zero_t = _constraints(mu)
    Bq = _numeric_plethysm(n, q0)
    Bt = _numeric_plethysm(n, t0)
    rows: list[list] = []
    # (c . B)[j] = sum_i c_i B[i][j] = 0
    for j in zero_q:
        rows.append([Bq[i, j] for i in range(k)] + [0])
    for j in zero_t:
        rows.append([Bt[i, j] for i in range(k)] + [0])
    top = parts.index((n,))
    rows.append([1 if i == top else 0 for i in range(k)] + [1])
    M = flint.fmpq_mat(len(rows), k + 1, [x for r in rows for x in r])
    R, rank = M.rref()
    if rank != k:
        raise MacdonaldError(f"axiom system for {mu} has rank {rank} at ({q0}, {t0})")
    # consistency: the augmented column must not create a pivot
    sol = []
    for i in range(k):
        if R[i, i] != 1:
            raise MacdonaldError("unexpected echelon form")
        v = R[i, k]
        sol.append(Fraction(int(v.p), int(v.q)))
    for i in range(k, len(rows)):
        if any(R[i, j] != 0 for j in range(k + 1)):
            raise MacdonaldError(f"axiom system for {mu} is inconsistent")
    return sol


def _primes(count: int, skip: int = 0) -> list[int]:
    out, cand = [], 2
    while len(out) < count + skip:
        if all(cand % p for p in out if p * p <= cand):
            out.append(cand)
        cand += 1
    return out[skip:]


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients c_0..c_d of the polynomial through (xs, ys)."""
    d = len(xs)
    V = flint.fmpq_mat(d, d, [x**k for x in xs for k in range(d)])
    rhs = flint.fmpq_mat(d, 1, [_fq(y) for y in ys])
    c = V.solve(rhs)
    return [Fraction(int(c[i, 0].p), int(c[i, 0].q)) for i in range(d)]


def _interpolated(mu: Partition) -> list[QtPoly]:
    n = sum(mu)
    k = len(partitions(n))
    dq = n_stat(conjugate(mu)) + 1
    dt = n_stat(mu) + 1
    primes = _primes(2 * max(dq, dt))
    qs, ts = primes[0::2][:dq], primes[1::2][:dt]
    grid = {(a, b): _solve_at(mu, a, b) for a in qs for b in ts}
    out = []
    for j in range(k):
        # interpolate in q for each t, then in t for each q-exponent
        by_t = [_interpolate(qs, [grid[(a, b)][j] for a in qs]) for b in ts]
        terms: dict = {}
        for ex_q in range(dq):
            col = _interpolate(ts, [by_t[r][ex_q] for r in range(dt)])
            for ex_t, v in enumerate(col):
                if v:
                    if v.denominator != 1:
                        raise MacdonaldError(f"non-integral coefficient for {mu}")
                    terms[(ex_q, ex_t, 0)] = int(v)
        out.append(QtPoly(terms))
    return out


def _apply(coeffs: Sequence, B, var: str) -> list[QtPoly]:
    """Row vector coeffs (QtPoly/QtRat) times the plethysm matrix in ``var``."""
    k = len(B)
    out = []
    for j in range(k):
        acc = QtPoly()
        for i in range(k):
            if B[i][j] and coeffs[i]:
                acc = acc + coeffs[i] * _as_qt(B[i][j], var)
        out.append(acc)
    return out


def check_axioms(mu: Sequence[int], H: SymFunc) -> list[str]:
    """Symbolic check of (A1)-(A3); returns a list of violations (empty if fine)."""
    mu = as_partition(mu)
    n = sum(mu)
    parts = partitions(n)
    Hs = H.to("s")
    problems = []
    try:
        coeffs = [Hs.coeff(lam).as_poly() for lam in parts]
    except ArithmeticError:
        return ["coefficients are not polynomials"]
    B = plethysm_matrix(n)
    zero_q, zero_t = _constraints(mu)
    phq = _apply(coeffs, B, "q")
    pht = _apply(coeffs, B, "t")
    for j in zero_q:
        if phq[j]:
            problems.append(f"A1: coefficient of s{parts[j]} is {phq[j]}")
    for j in zero_t:
        if pht[j]:
            problems.append(f"A2: coefficient of s{parts[j]} is {pht[j]}")
    if coeffs[parts.index((n,))] != ONE:
        problems.append("A3: <H, s_(n)> != 1")
    return problems


def _solve(mu: Partition) -> SymFunc:
    n = sum(mu)
    parts = partitions(n)
    coeffs = _interpolated(mu)
    H = SymFunc(n, "s", dict(zip(parts, coeffs)))
    bad = check_axioms(mu, H)
    if bad:
        raise MacdonaldError(f"interpolated H~_{mu} fails the axioms: {bad[0]}")
    return H


# -- tables -----------------------------------------------------------------

class MacdonaldTable:
    """H~_mu for every mu of one degree, as Schur expansions."""

    def __init__(self, degree: int, entries: Mapping[Partition, SymFunc]):
        self.degree = degree
        self.entries = {as_partition(k): v.to("s") for k, v in entries.items()}
        if set(self.entries) != set(partitions(degree)):
            raise ValueError(f"table for degree {degree} is incomplete")
        self._K = None

    def __getitem__(self, mu: Sequence[int]) -> SymFunc:
        return self.entries[as_partition(mu)]

    @classmethod
    def solve(cls, degree: int) -> "MacdonaldTable":
        return cls(degree, {mu: _solve(mu) for mu in partitions(degree)})

    def matrix(self) -> list[list[QtPoly]]:
        """K[mu][lam] = <H~_mu, s_lam>, rows and columns in partitions() order."""
        if self._K is None:
            parts = partitions(self.degree)
            self._K = [[self.entries[mu].coeff(lam).as_poly() for lam in parts] for mu in parts]
        return self._K

    def validate(self, full: bool = False) -> list[str]:
        problems = []
        n = self.degree
        for mu, H in self.entries.items():
            if H.coeff((n,)) != 1:
                problems.append(f"A3 fails for {mu}")
            if full:
                problems.extend(f"{mu}: {p}" for p in check_axioms(mu, H))
        return problems

    # -- persistence -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "degree": self.degree,
            "entries": [
                {"mu": list(mu), "H": self.entries[mu].to_json()}
                for mu in partitions(self.degree)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, source: str = "<data>") -> "MacdonaldTable":
        try:
            if data["version"] != CACHE_VERSION:
                raise CacheError(f"{source}: cache version {data['version']} != {CACHE_VERSION}")
            n = int(data["degree"])
            entries = {tuple(row["mu"]): SymFunc.from_json(row["H"]) for row in data["entries"]}
            table = cls(n, entries)
        except CacheError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheError(f"{source}: malformed cache file ({exc})") from exc
        bad = table.validate()
        if bad:
            raise CacheError(f"{source}: {bad[0]}")
        return table


def cache_path(cache_dir: os.PathLike | str, degree: int) -> Path:
    return Path(cache_dir) / f"macdonald-{degree}.json"


def save_table(table: MacdonaldTable, cache_dir: os.PathLike | str) -> Path:
    """Write atomically (temp file then rename) so concurrent writers are safe."""
    path = cache_path(cache_dir, table.degree)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(table.to_json(), fh, sort_keys=True)
    os.replace(tmp, path)
    return path


def load_table_file(path: os.PathLike | str) -> MacdonaldTable:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"{path}: unreadable cache file ({exc})") from exc
    return MacdonaldTable.from_json(data, source=str(path))


_TABLES: dict[int, MacdonaldTable] = {}
_cache_dir: Path | None = None


def set_cache_dir(path: os.PathLike | str | None) -> None:
    global _cache_dir
    _cache_dir = Path(path) if path is not None else None


def macdonald_table(degree: int) -> MacdonaldTable:
    """The table for one degree: memory, then the cache directory, then a solve."""
    if degree in _TABLES:
        return _TABLES[degree]
    table = None
    if _cache_dir is not None and cache_path(_cache_dir, degree).exists():
        table = load_table_file(cache_path(_cache_dir, degree))
    if table is None:
        table = MacdonaldTable.solve(degree)
        if _cache_dir is not None:
            save_table(table, _cache_dir)
    _TABLES[degree] = table
    return table


def modified_macdonald(mu: Sequence[int]) -> SymFunc:
    mu = as_partition(mu)
    return macdonald_table(sum(mu))[mu]


# -- operators --------------------------------------------------------------

def eigenvalue(mu: Sequence[int]) -> QtPoly:
    """t^{n(mu)} q^{n(mu')}."""
    mu = as_partition(mu)
    return QtPoly.monomial(n_stat(conjugate(mu)), n_stat(mu), 0)


def expand_in_macdonald(f: SymFunc) -> dict[Partition, QtRat]:
    """c_mu with f = sum c_mu H~_mu.

    Applying Z -> Z(1-q) makes the H~ matrix triangular for dominance, so the
    coefficients come out of a forward substitution in increasing
    lexicographic order (which extends dominance).
    """
    n = f.degree
    if n == 0:
        return {(): f.coeff(())}
    parts = partitions(n)
    B = plethysm_matrix(n)
    A = _triangular_matrix(n)
    fs = f.to("s")
    F = _apply_rat([fs.coeff(lam) for lam in parts], B, "q")
    order = sorted(range(len(parts)), key=lambda i: parts[i])
    c: dict[int, QtRat] = {}
    for j in order:
        acc = F[j]
        for i in c:
            if A[i][j]:
                acc = acc - c[i] * A[i][j]
        c[j] = acc / A[j][j]
    return {parts[i]: v for i, v in c.items() if v}


@lru_cache(maxsize=None)
def _triangular_matrix(n: int) -> tuple[tuple[QtPoly, ...], ...]:
    K = macdonald_table(n).matrix()
    B = plethysm_matrix(n)
    return tuple(tuple(_apply(row, B, "q")) for row in K)


def _apply_rat(coeffs: Sequence[QtRat], B, var: str) -> list[QtRat]:
    k = len(B)
    out = []
    for j in range(k):
        acc = QtRat.zero()
        for i in range(k):
            if B[i][j] and coeffs[i]:
                acc = acc + coeffs[i] * _as_qt(B[i][j], var)
        out.append(acc)
    return out


def from_macdonald(coeffs: Mapping[Partition, QtRat], degree: int) -> SymFunc:
    """Reassemble sum c_mu H~_mu in the Schur basis."""
    table = macdonald_table(degree)
    parts = partitions(degree)
    out: dict[Partition, QtRat] = {}
    for mu, c in coeffs.items():
        if not c:
            continue
        H = table[mu]
        for lam in parts:
            k = H.coeff(lam)
            if k:
                v = c * k
                out[lam] = out[lam] + v if lam in out else v
    return SymFunc(degree, "s", out)


def diagonal_operator(f: SymFunc, scale) -> SymFunc:
    """sum c_mu H~_mu -> sum c_mu scale(mu) H~_mu."""
    coeffs = expand_in_macdonald(f)
    return from_macdonald({mu: c * as_rat(scale(mu)) for mu, c in coeffs.items()}, f.degree)


def nabla_power(f: SymFunc, m: int = 1) -> SymFunc:
    """nabla^m f; negative m uses the inverse eigenvalues."""
    return diagonal_operator(f, lambda mu: eigenvalue(mu) ** m)


def b_alphabet(mu: Sequence[int]) -> QtPoly:
    """B_mu = sum over cells (i, j) of t^i q^j."""
    out = QtPoly()
    for i, row in enumerate(as_partition(mu)):
        for j in range(row):
            out = out + QtPoly.monomial(j, i, 0)
    return out


def delta_op(g: SymFunc, f: SymFunc) -> SymFunc:
    """Delta_g f: scales H~_mu by g[B_mu]."""
    return diagonal_operator(f, lambda mu: plethysm_eval(g, Alphabet.finite(b_alphabet(mu))))


# -- E_{n,k} ---------------------------------------------------------------

def _u_coeffs(r: QtRat) -> dict[int, QtRat]:
    """Split r = N(q,t,u)/D(q,t) into its coefficients of u^j."""
    if r.den.degree("u") or min(e[2] for e, _ in r.den.items()) < 0:
        raise ValueError("denominator depends on u")
    pieces: dict[int, dict] = {}
    for ex, c in r.num.items():
        pieces.setdefault(ex[2], {})[(ex[0], ex[1], 0)] = c
    return {j: QtRat(QtPoly(ts), r.den) for j, ts in pieces.items()}


@lru_cache(maxsize=None)
def _enk_all(n: int) -> tuple[SymFunc, ...]:
    lhs = plethysm_eval(
        e_basis(n), Alphabet.z_times(QtRat(ONE - QtPoly.monomial(0, 0, 1), ONE - q))
    ).to("s")
    parts = partitions(n)
    basis = {k: QtRat(q_pochhammer(k), qq_pochhammer(k)) for k in range(n + 1)}
    basis_u = {k: _u_coeffs(b) for k, b in basis.items()}
    E: dict[int, dict[Partition, QtRat]] = {k: {} for k in range(1, n + 1)}
    for lam in parts:
        L = _u_coeffs(lhs.coeff(lam)) if lhs.coeff(lam) else {}
        sol: dict[int, QtRat] = {}
        for k in range(n, 0, -1):
            acc = L.get(k, QtRat.zero())
            for j in range(k + 1, n + 1):
                acc = acc - sol[j] * basis_u[j].get(k, QtRat.zero())
            sol[k] = acc / basis_u[k][k]
        # the u^0 equation is not used by the solve; it must hold on its own
        resid = L.get(0, QtRat.zero())
        for k in range(1, n + 1):
            resid = resid - sol[k] * basis_u[k].get(0, QtRat.zero())
        if resid:
            raise MacdonaldError("e_n[Z(1-u)/(1-q)] is not in the span of (u;q)_k/(q;q)_k")
        for k in range(1, n + 1):
            if sol[k]:
                E[k][lam] = sol[k]
    return tuple(SymFunc(n, "s", E[k]) for k in range(1, n + 1))


def e_nk(n: int, k: int) -> SymFunc:
    """E_{n,k}, defined by e_n[Z(1-u)/(1-q)] = sum_k (u;q)_k/(q;q)_k E_{n,k}."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return _enk_all(n)[k - 1]
