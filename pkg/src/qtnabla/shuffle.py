"""The combinatorial side: d-inversions on flag strips and the sums built from them.

For lam inside m*delta_n the flag strip (lam + (1^n))/lam has one cell per row,
``(i, lam_{i+1})``.  Its columns are runs of consecutive rows, and there are no
order constraints between different columns, so a filling is a choice of an
increasing column word for each column.  Most functions here work with the
filling as a tuple of letters indexed by row.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .ring import ONE, QtPoly, q_binomial, q_factorial
from .shapes import (
    Filling,
    Partition,
    ShapeError,
    arm_leg,
    as_partition,
    d_key,
    diag,
    flag_strip,
    letter_key,
    part,
    partitions,
    sub_staircase_iter,
)
from .symfun import NotSymmetric, QsymCoeffs, SymFunc, qsym_to_sym

Word = tuple[int, ...]


# -- shape helpers ----------------------------------------------------------

def check_sub_staircase(lam: Sequence[int], n: int, m: int = 1) -> Partition:
    lam = as_partition(lam)
    if n < 1 or m < 1:
        raise ShapeError("need n >= 1 and m >= 1")
    if len(lam) > n or any(x > m * (n - 1 - i) for i, x in enumerate(lam)):
        raise ShapeError(f"{lam} is not contained in {m}*delta_{n}")
    return lam


def area(lam: Sequence[int], n: int, m: int = 1) -> int:
    """|m delta_n / lam|."""
    lam = check_sub_staircase(lam, n, m)
    return m * n * (n - 1) // 2 - sum(lam)


def strip_cells(lam: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Cell of the flag strip in each row 0..n-1."""
    return [(i, part(lam, i + 1)) for i in range(n)]


def strip_columns(lam: Sequence[int], n: int) -> list[list[int]]:
    """Rows of each column of the flag strip, bottom to top, columns left to right."""
    cols: dict[int, list[int]] = {}
    for i in range(n):
        cols.setdefault(part(lam, i + 1), []).append(i)
    return [cols[j] for j in sorted(cols)]


def touch_count(lam: Sequence[int], n: int, m: int = 1) -> int:
    """#{i in 1..n : lam_i = m(n-i)}, counting the zero parts past the end."""
    return sum(1 for i in range(1, n + 1) if part(lam, i) == m * (n - i))


# -- pair rules -------------------------------------------------------------

def pair_dinv(x, y, m: int = 1) -> int:
    """d-inversions from T(x) = a < b = T(y)."""
    j, j2 = x[1], y[1]
    delta = diag(y, m) - diag(x, m)
    if j > j2:
        return max(0, m - abs(delta))
    if j < j2:
        return max(0, m - abs(delta - 1))
    return 0


def less_d(x, y, m: int = 1) -> bool:
    """x <_d y."""
    return d_key(x, m) < d_key(y, m)


def equal_pair_dinv(x, y, negative: bool, m: int = 1) -> int:
    """Contribution of equal letters in x and y.

    Positive letters count as a < b placed with the smaller letter in the
    <_d-smaller cell; negative letters the other way round.
    """
    lo, hi = (x, y) if less_d(x, y, m) else (y, x)
    return pair_dinv(hi, lo, m) if negative else pair_dinv(lo, hi, m)


def equal_pair_minmax(x, y, negative: bool, m: int = 1) -> int:
    """Equivalent reading: min (positive) or max (negative) of both orders."""
    a, b = pair_dinv(x, y, m), pair_dinv(y, x, m)
    return max(a, b) if negative else min(a, b)


def pair_reduced(x, y, m: int = 1) -> int:
    """1 if T(x) = a < b = T(y) gives a reduced d-inversion."""
    j, j2 = x[1], y[1]
    delta = diag(y, m) - diag(x, m)
    if j > j2 and 0 <= delta <= m - 1:
        return 1
    if j < j2 and 1 <= delta <= m:
        return 1
    return 0


def equal_pair_reduced(x, y, negative: bool, m: int = 1) -> int:
    if not negative:
        return 0
    lo, hi = (x, y) if less_d(x, y, m) else (y, x)
    return pair_reduced(hi, lo, m)


@lru_cache(maxsize=4096)
def pair_tables(lam: Partition, n: int, m: int, reduced: bool = False):
    """(W, EP, EN) indexed by rows.

    W[r][s] is the contribution when the letter in row r is smaller than the
    letter in row s; EP/EN are the symmetric tables for equal positive and
    equal negative letters.
    """
    cells = strip_cells(lam, n)
    rule = pair_reduced if reduced else pair_dinv
    eq = equal_pair_reduced if reduced else equal_pair_dinv
    W = [[rule(cells[r], cells[s], m) if r != s else 0 for s in range(n)] for r in range(n)]
    EP = [[eq(cells[r], cells[s], False, m) if r != s else 0 for s in range(n)] for r in range(n)]
    EN = [[eq(cells[r], cells[s], True, m) if r != s else 0 for s in range(n)] for r in range(n)]
    return W, EP, EN


def word_dinv(lam: Partition, n: int, m: int, word: Word, reduced: bool = False) -> int:
    """dinv_m (or dinv'_m) of the filling given as one letter per row."""
    W, EP, EN = pair_tables(lam, n, m, reduced)
    total = 0
    keys = [letter_key(a) for a in word]
    for r in range(n):
        for s in range(r + 1, n):
            if keys[r] < keys[s]:
                total += W[r][s]
            elif keys[r] > keys[s]:
                total += W[s][r]
            elif word[r] < 0:
                total += EN[r][s]
            else:
                total += EP[r][s]
    return total


# -- Filling-level API ------------------------------------------------------

def _strip_data(T: Filling, m: int) -> tuple[Partition, int, Word]:
    shape = T.shape
    lam = shape.inner
    n = len(shape.outer)
    if shape != flag_strip(lam, n):
        raise ShapeError("filling is not on a flag strip")
    check_sub_staircase(lam, n, m)
    ent = T.as_dict()
    return lam, n, tuple(ent[c] for c in strip_cells(lam, n))


def dinv(T: Filling, m: int = 1, equal_rule: str = "order") -> int:
    """dinv_m of a super filling of a flag strip.

    ``equal_rule="minmax"`` uses the min/max reading for equal letters instead;
    both must agree.
    """
    lam, n, word = _strip_data(T, m)
    if equal_rule == "order":
        return word_dinv(lam, n, m, word)
    cells = strip_cells(lam, n)
    total = 0
    for r in range(n):
        for s in range(r + 1, n):
            a, b = word[r], word[s]
            ka, kb = letter_key(a), letter_key(b)
            if ka < kb:
                total += pair_dinv(cells[r], cells[s], m)
            elif ka > kb:
                total += pair_dinv(cells[s], cells[r], m)
            else:
                total += equal_pair_minmax(cells[r], cells[s], a < 0, m)
    return total


def shape_constant(lam: Sequence[int], n: int, m: int = 1) -> int:
    """e(nu): dinv_m of the all-1 pseudo-filling."""
    lam = check_sub_staircase(lam, n, m)
    return word_dinv(lam, n, m, (1,) * n)


def reduced_dinv(T: Filling, m: int = 1) -> tuple[int, int]:
    """(e(nu), dinv'_m(T)); their sum is dinv_m(T)."""
    lam, n, word = _strip_data(T, m)
    e_const = shape_constant(lam, n, m)
    red = word_dinv(lam, n, m, word, reduced=True)
    full = word_dinv(lam, n, m, word)
    if e_const + red != full:
        raise AssertionError(f"e + dinv' = {e_const} + {red} != dinv = {full} for {T}")
    return e_const, red


def filling_from_word(lam: Sequence[int], n: int, word: Word) -> Filling:
    lam = as_partition(lam)
    shape = flag_strip(lam, n)
    return Filling.from_dict(shape, dict(zip(strip_cells(lam, n), word)))


# -- enumeration on flag strips --------------------------------------------

def _letter_steps(mu: Sequence[int], eta: Sequence[int]) -> list[tuple[int, int]]:
    steps = []
    for a in range(1, max(len(mu), len(eta)) + 1):
        if part_any(mu, a):
            steps.append((a, mu[a - 1]))
        if part_any(eta, a):
            steps.append((-a, eta[a - 1]))
    return steps


def part_any(v: Sequence[int], a: int) -> int:
    return v[a - 1] if a <= len(v) else 0


def _spread(k: int, caps: list[int], start: int = 0) -> Iterator[list[tuple[int, int]]]:
    """Ways to put k equal negative letters into columns: [(col, count), ...]."""
    if k == 0:
        yield []
        return
    for c in range(start, len(caps)):
        for take in range(min(k, caps[c]), 0, -1):
            for rest in _spread(k - take, caps, c + 1):
                yield [(c, take)] + rest


def _check_content(n: int, mu: Sequence[int], eta: Sequence[int]):
    if any(x < 0 for x in tuple(mu) + tuple(eta)):
        raise ShapeError("contents must be nonnegative")
    if sum(mu) + sum(eta) != n:
        raise ShapeError(f"content sizes {sum(mu)}+{sum(eta)} != n = {n}")


def strip_words(
    lam: Sequence[int],
    n: int,
    mu: Sequence[int],
    eta: Sequence[int] = (),
    m: int = 1,
    max_dinv: int | None = None,
) -> Iterator[tuple[Word, int]]:
    """(word, dinv_m) for every super filling of the flag strip with content (mu, eta).

    Letters are placed in alphabet order, each class spread over the columns
    from left to right; the stream order is the resulting depth-first order.
    With ``max_dinv`` set, branches whose partial dinv already exceeds it are
    pruned (dinv only grows as letters are added).
    """
    lam = check_sub_staircase(lam, n, m)
    _check_content(n, mu, eta)
    W, EP, EN = pair_tables(lam, n, m)
    cols = strip_columns(lam, n)
    steps = _letter_steps(mu, eta)
    filled = [0] * len(cols)
    placed: list[int] = []
    word = [0] * n

    def rec(k: int, acc: int):
        if k == len(steps):
            yield tuple(word), acc
            return
        letter, size = steps[k]
        caps = [len(cols[c]) - filled[c] for c in range(len(cols))]
        if letter > 0:
            choices = (
                [(c, 1) for c in combo]
                for combo in combinations([c for c in range(len(cols)) if caps[c]], size)
            )
            E = EP
        else:
            choices = _spread(size, caps)
            E = EN
        for choice in choices:
            new = []
            for c, cnt in choice:
                new.extend(cols[c][filled[c] : filled[c] + cnt])
            inc = 0
            for s in new:
                for r in placed:
                    inc += W[r][s]
            for a in range(len(new)):
                for b in range(a + 1, len(new)):
                    inc += E[new[a]][new[b]]
            if max_dinv is not None and acc + inc > max_dinv:
                continue
            for c, cnt in choice:
                filled[c] += cnt
            for s in new:
                word[s] = letter
            placed.extend(new)
            yield from rec(k + 1, acc + inc)
            del placed[len(placed) - len(new) :]
            for c, cnt in choice:
                filled[c] -= cnt

    yield from rec(0, 0)


def strip_dinv_poly(
    lam: Sequence[int], n: int, mu: Sequence[int], eta: Sequence[int] = (), m: int = 1
) -> QtPoly:
    """sum of q^dinv over super fillings of the flag strip with content (mu, eta)."""
    counts = Counter(d for _, d in strip_words(lam, n, mu, eta, m))
    return QtPoly({(d, 0, 0): c for d, c in counts.items()})


def _sample_rearrangements(mu: Partition) -> list[tuple[int, ...]]:
    out = []
    rev = tuple(reversed(mu))
    if rev != mu:
        out.append(rev)
    if len(mu) > 2:
        rot = mu[1:] + mu[:1]
        if rot not in out and rot != mu:
            out.append(rot)
    return out


def d_component(
    lam: Sequence[int], n: int, m: int = 1, check_symmetry: bool = True
) -> SymFunc:
    """D_n^{(m),lam}(z;q) in the monomial basis."""
    lam = check_sub_staircase(lam, n, m)
    coeffs = {}
    for mu in partitions(n):
        c = strip_dinv_poly(lam, n, mu, (), m)
        if check_symmetry:
            for alt in _sample_rearrangements(mu):
                if strip_dinv_poly(lam, n, alt, (), m) != c:
                    raise NotSymmetric(f"lam={lam}: {mu} vs {alt}", witness=(mu, alt))
        if c:
            coeffs[mu] = c
    return SymFunc(n, "m", coeffs)


def component_symmetric(lam: Sequence[int], n: int, m: int = 1) -> bool:
    """Exhaustive rearrangement check over every composition of n."""
    lam = check_sub_staircase(lam, n, m)
    from .symfun import _all_compositions

    seen: dict[Partition, QtPoly] = {}
    for alpha in _all_compositions(n):
        c = strip_dinv_poly(lam, n, alpha, (), m)
        key = tuple(sorted(alpha, reverse=True))
        if key in seen and seen[key] != c:
            return False
        seen.setdefault(key, c)
    return True


def _t_power(k: int) -> QtPoly:
    return QtPoly.monomial(0, k, 0)


def compute_D(n: int, m: int = 1, check_symmetry: bool = True, workers: int = 1) -> SymFunc:
    """D_n^{(m)}(z;q,t) in the monomial basis (one enumeration per partition mu)."""
    if n < 1 or m < 1:
        raise ShapeError("need n >= 1 and m >= 1")
    lams = list(sub_staircase_iter(n, m))
    mus = list(partitions(n))
    jobs = [(lam, n, m, mu) for mu in mus for lam in lams]
    if check_symmetry:
        jobs += [(lam, n, m, alt) for mu in mus for alt in _sample_rearrangements(mu) for lam in lams]
    results = _run_jobs(jobs, workers)
    totals: dict[tuple, QtPoly] = {}
    for (lam, _, _, content), poly in zip(jobs, results):
        if poly:
            term = poly * _t_power(area(lam, n, m))
            totals[content] = totals[content] + term if content in totals else term
    if check_symmetry:
        for mu in mus:
            for alt in _sample_rearrangements(mu):
                if totals.get(alt, QtPoly()) != totals.get(mu, QtPoly()):
                    raise NotSymmetric(f"D_{n}^({m}): {mu} vs {alt}", witness=(mu, alt))
    return SymFunc(n, "m", {mu: totals[mu] for mu in mus if mu in totals})


def _job(args) -> QtPoly:
    lam, n, m, content = args
    return strip_dinv_poly(lam, n, content, (), m)


def _run_jobs(jobs: list, workers: int) -> list[QtPoly]:
    if workers <= 1:
        return [_job(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def compute_D_sum(n: int, m: int = 1) -> SymFunc:
    """sum over lam of t^area * d_component(lam): the per-component route."""
    total = SymFunc.zero(n, "m")
    for lam in sub_staircase_iter(n, m):
        comp = d_component(lam, n, m, check_symmetry=False)
        total = total + comp * _t_power(area(lam, n, m))
    return total


def compute_D_q0(n: int, m: int = 1) -> SymFunc:
    """D_n^{(m)}(z; 0, t): only fillings with dinv_m = 0 are enumerated."""
    coeffs = {}
    for mu in partitions(n):
        terms = Counter()
        for lam in sub_staircase_iter(n, m):
            k = sum(1 for _ in strip_words(lam, n, mu, (), m, max_dinv=0))
            if k:
                terms[(0, area(lam, n, m), 0)] += k
        if terms:
            coeffs[mu] = QtPoly(dict(terms))
    return SymFunc(n, "m", coeffs)


@lru_cache(maxsize=None)
def _column_fill_count(caps: tuple[int, ...], steps: tuple[int, ...]) -> int:
    """Fillings of disjoint columns with the given heights: each step places
    one letter class, at most one cell per column, bottom-up in every column."""
    if not steps:
        return 1 if not any(caps) else 0
    k, rest = steps[0], steps[1:]
    total = 0
    open_cols = [c for c in range(len(caps)) if caps[c]]
    for combo in combinations(open_cols, k):
        new = list(caps)
        for c in combo:
            new[c] -= 1
        total += _column_fill_count(tuple(sorted((x for x in new if x), reverse=True)), rest)
    return total


def strip_fill_count(lam: Sequence[int], n: int, mu: Sequence[int]) -> int:
    """Number of semistandard fillings of the flag strip with content mu."""
    caps = tuple(sorted((len(c) for c in strip_columns(lam, n)), reverse=True))
    return _column_fill_count(caps, tuple(x for x in mu if x))


def compute_D_q1(n: int, m: int = 1, via: str = "count") -> SymFunc:
    """D_n^{(m)}(z; 1, t): sum over lam of t^area times the filling counts.

    ``via="skew_schur"`` counts the fillings with the generic skew-shape
    SSYT counter instead (slower, used as a cross-check).
    """
    from .symfun import skew_schur

    coeffs: dict[Partition, Counter] = {}
    for lam in sub_staircase_iter(n, m):
        a = area(lam, n, m)
        if via == "skew_schur":
            counts = {mu: int(c.as_fraction()) for mu, c in skew_schur(flag_strip(lam, n)).items()}
        else:
            counts = {mu: strip_fill_count(lam, n, mu) for mu in partitions(n)}
        for mu, c in counts.items():
            if c:
                coeffs.setdefault(mu, Counter())[(0, a, 0)] += c
    return SymFunc(n, "m", {mu: QtPoly(dict(c)) for mu, c in coeffs.items()})


def column_heights(lam: Sequence[int], n: int) -> tuple[int, ...]:
    """alpha: heights of the flag strip's columns, left to right."""
    return tuple(len(rows) for rows in strip_columns(lam, n))


def super_D_coeff(n: int, m: int, mu: Sequence[int], eta: Sequence[int]) -> QtPoly:
    """sum over lam and super fillings with content (mu, eta) of t^area q^dinv_m."""
    _check_content(n, mu, eta)
    total = QtPoly()
    for lam in sub_staircase_iter(n, m):
        poly = strip_dinv_poly(lam, n, mu, eta, m)
        if poly:
            total = total + poly * _t_power(area(lam, n, m))
    return total


def hilbert_series(n: int, m: int = 1) -> QtPoly:
    """<D_n^{(m)}, e_1^n>: the coefficient of m_{1^n}."""
    return super_D_coeff(n, m, (1,) * n, ())


def nabla_enk_rhs(n: int, k: int, m: int = 1) -> SymFunc:
    """sum over lam touching the boundary exactly k times of t^area D^lam."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    total = SymFunc.zero(n, "m")
    for lam in sub_staircase_iter(n, m):
        if touch_count(lam, n, m) != k:
            continue
        comp = d_component(lam, n, m, check_symmetry=False)
        total = total + comp * _t_power(area(lam, n, m))
    return total


# -- quasisymmetric route ---------------------------------------------------

def d_descents(lam: Sequence[int], n: int, word: Word, m: int = 1) -> frozenset[int]:
    """dd(S) for a standard filling given as one entry per row."""
    cells = strip_cells(lam, n)
    where = {a: cells[r] for r, a in enumerate(word)}
    return frozenset(
        a for a in range(1, n) if d_key(where[a], m) > d_key(where[a + 1], m)
    )


def component_qsym(lam: Sequence[int], n: int, m: int = 1) -> QsymCoeffs:
    """sum over standard S of q^dinv(S) Q_{n, dd(S)} for one lam."""
    lam = check_sub_staircase(lam, n, m)
    c = QsymCoeffs(n, {})
    for word, d in strip_words(lam, n, (1,) * n, (), m):
        c.add(d_descents(lam, n, word, m), QtPoly.monomial(d, 0, 0))
    return c


def compute_D_qsym(n: int, m: int = 1) -> SymFunc:
    """D_n^{(m)} assembled from quasisymmetric functions (standard fillings only)."""
    total = QsymCoeffs(n, {})
    for lam in sub_staircase_iter(n, m):
        shift = _t_power(area(lam, n, m))
        for D, v in component_qsym(lam, n, m).coeffs.items():
            total.add(D, v * shift)
    return qsym_to_sym(total)


def super_D_coeff_qsym(n: int, m: int, mu: Sequence[int], eta: Sequence[int]) -> QtPoly:
    """The same coefficient via super quasisymmetric functions."""
    total = QtPoly()
    for lam in sub_staircase_iter(n, m):
        shift = _t_power(area(lam, n, m))
        val = component_qsym(lam, n, m).super_coeff(mu, eta)
        if val:
            total = total + val * shift
    return total


# -- parking functions -------------------------------------------------------

@dataclass(frozen=True)
class ParkingFunction:
    """f(1), ..., f(n) with |f^{-1}({1..k})| >= k."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n == 0 or any(not 1 <= v <= n for v in vals):
            raise ShapeError(f"not a parking function: {vals}")
        srt = sorted(vals)
        if any(srt[k] > k + 1 for k in range(n)):
            raise ShapeError(f"not a parking function: {vals}")

    @property
    def n(self) -> int:
        return len(self.values)

    def encode(self) -> tuple[Partition, Filling]:
        """(lam, T): parts f(i)-1; column j holds f^{-1}(j+1), increasing upward."""
        n = self.n
        lam = as_partition(sorted((v - 1 for v in self.values), reverse=True))
        cols = strip_columns(lam, n)
        entries = {}
        for rows in cols:
            j = part(lam, rows[0] + 1)
            cars = sorted(a + 1 for a, v in enumerate(self.values) if v - 1 == j)
            for r, a in zip(rows, cars):
                entries[(r, j)] = a
        return lam, Filling.from_dict(flag_strip(lam, n), entries)

    @classmethod
    def decode(cls, T: Filling) -> "ParkingFunction":
        vals = {a: x[1] + 1 for x, a in T.entries}
        return cls(tuple(vals[a] for a in range(1, len(vals) + 1)))

    def area(self) -> int:
        n = self.n
        return n * (n + 1) // 2 - sum(self.values)

    def dinv(self) -> int:
        return dinv(self.encode()[1], 1)

    def word(self) -> Word:
        return parking_word(self)

    def __str__(self) -> str:
        return "".join(map(str, self.values)) if self.n < 10 else " ".join(map(str, self.values))


def parking_functions(n: int) -> Iterator[ParkingFunction]:
    """All parking functions on n cars, via (lam, standard filling) pairs."""
    for lam in sub_staircase_iter(n, 1):
        for word, _ in strip_words(lam, n, (1,) * n):
            yield ParkingFunction.decode(filling_from_word(lam, n, word))


def parking_word(p: ParkingFunction | Filling, m: int = 1) -> Word:
    """Entries read in <_d-increasing order."""
    T = p.encode()[1] if isinstance(p, ParkingFunction) else p
    return tuple(a for x, a in sorted(T.entries, key=lambda e: d_key(e[0], m)))


def inverse(w: Sequence[int]) -> Word:
    out = [0] * len(w)
    for pos, v in enumerate(w):
        out[v - 1] = pos + 1
    return tuple(out)


def descents(w: Sequence[int]) -> frozenset[int]:
    return frozenset(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


@dataclass(frozen=True)
class ShuffleSpec:
    mu: tuple[int, ...]
    eta: tuple[int, ...] = ()

    def blocks(self) -> list[tuple[range, bool]]:
        """(value range, increasing?) in the order mu_1, eta_1, mu_2, ..."""
        out, start = [], 1
        for a in range(max(len(self.mu), len(self.eta))):
            for size, inc in ((part_any(self.mu, a + 1), True), (part_any(self.eta, a + 1), False)):
                out.append((range(start, start + size), inc))
                start += size
        return out


def is_shuffle(w: Sequence[int], spec: ShuffleSpec) -> bool:
    """w^{-1} is alternately increasing/decreasing on blocks mu_1, eta_1, ..."""
    if len(w) != sum(spec.mu) + sum(spec.eta):
        raise ShapeError("permutation length does not match the shuffle content")
    winv = inverse(w)
    for rng, inc in spec.blocks():
        pos = [winv[v - 1] for v in rng]
        for a, b in zip(pos, pos[1:]):
            if (a > b) if inc else (a < b):
                return False
    return True


def shuffle_sum(n: int, mu: Sequence[int], eta: Sequence[int] = ()) -> QtPoly:
    """sum of t^area q^dinv over parking functions whose word is a mu,eta-shuffle."""
    spec = ShuffleSpec(tuple(mu), tuple(eta))
    total = Counter()
    for lam in sub_staircase_iter(n, 1):
        a = area(lam, n)
        for word, d in strip_words(lam, n, (1,) * n):
            T = filling_from_word(lam, n, word)
            if is_shuffle(parking_word(T), spec):
                total[(d, a, 0)] += 1
    return QtPoly(dict(total))


# -- Catalan statistics -----------------------------------------------------

def b_stat(lam: Sequence[int], m: int = 1) -> int:
    """Cells with m*l(x) <= a(x) <= m*l(x) + m."""
    lam = as_partition(lam)
    count = 0
    for i, row in enumerate(lam):
        for j in range(row):
            a, l = arm_leg(lam, (i, j))
            if m * l <= a <= m * l + m:
                count += 1
    return count


def catalan_stats(lam: Sequence[int], n: int, m: int = 1) -> tuple[int, int]:
    """(b_m(lam), dinv_m of the all-~1 filling)."""
    lam = check_sub_staircase(lam, n, m)
    return b_stat(lam, m), word_dinv(lam, n, m, (-1,) * n)


def qt_catalan(n: int, m: int = 1) -> QtPoly:
    """sum over lam of t^area q^{b_m(lam)}."""
    terms = Counter()
    for lam in sub_staircase_iter(n, m):
        terms[(b_stat(lam, m), area(lam, n, m), 0)] += 1
    return QtPoly(dict(terms))


def sub_staircase_array(n: int, m: int = 1):
    """All lam inside m*delta_n as rows of an (N, n) int array (same order as
    :func:`sub_staircase_iter`)."""
    import numpy as np

    rows = np.zeros((1, 0), dtype=np.int16)
    # build from the last part upward, then reverse the columns
    for i in range(n, 0, -1):
        cap = m * (n - i)
        prev = rows[:, -1] if rows.shape[1] else np.zeros(len(rows), dtype=np.int16)
        counts = cap - prev + 1
        rep = np.repeat(rows, counts, axis=0)
        base = np.repeat(prev, counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        rows = np.concatenate([rep, (base + offs)[:, None].astype(np.int16)], axis=1)
    lam = rows[:, ::-1]
    order = np.lexsort(lam.T[::-1])
    return np.ascontiguousarray(lam[order])


def catalan_sweep(n: int, m: int = 1):
    """Vectorized b_m and all-~1 dinv for every lam inside m*delta_n.

    Returns (lams, b, dinv_neg) as numpy arrays.
    """
    import numpy as np

    lam = sub_staircase_array(n, m).astype(np.int32)
    N = len(lam)
    padded = np.concatenate([lam, np.zeros((N, 1), dtype=np.int32)], axis=1)
    # cells of row i with leg l are the columns lam[i+l+1] <= j < lam[i+l];
    # their arms fill the interval [lam[i] - lam[i+l], lam[i] - lam[i+l+1] - 1]
    b = np.zeros(N, dtype=np.int32)
    for i in range(n):
        for l in range(n - i):
            lo = padded[:, i] - padded[:, i + l]
            hi = padded[:, i] - padded[:, i + l + 1] - 1
            b += np.maximum(0, np.minimum(hi, m * l + m) - np.maximum(lo, m * l) + 1)
    # all-~1 filling: equal negative letters take the larger orientation
    # with diff = d(right cell) - d(left cell) the count is max(0, m + min(diff, 1 - diff))
    dneg = np.zeros(N, dtype=np.int32)
    dm = m * np.arange(n, dtype=np.int32)[None, :] + lam
    for r in range(n):
        for s in range(r + 1, n):
            sign = np.sign(lam[:, r] - lam[:, s])
            diff = sign * (dm[:, r] - dm[:, s])
            val = np.maximum(0, m + np.minimum(diff, 1 - diff))
            dneg += val * (sign != 0)
    return lam, b, dneg


# -- fermionic formulas -----------------------------------------------------

def runs(sigma: Sequence[int]) -> list[list[int]]:
    """Maximal increasing runs of sigma."""
    out = [[sigma[0]]]
    for a, b in zip(sigma, sigma[1:]):
        if b > a:
            out[-1].append(b)
        else:
            out.append([b])
    return out


def v_stat(sigma: Sequence[int], i: int) -> int:
    """v(sigma, i), 1-based i: the longest p such that sigma_{i-p}..sigma_i is a
    rotation of an increasing sequence (0 when i = 1)."""
    n = len(sigma)
    si = sigma[i - 1]
    best = 0
    prev = None
    for p in range(1, i):
        val = (sigma[i - 1 - p] - si) % n
        # the sequence read left to right is sigma_{i-p}, ..., sigma_{i-1};
        # extending p prepends an element that must be smaller than the rest
        if prev is not None and not val < prev:
            break
        best = p
        prev = val
    return best


def comaj(sigma: Sequence[int]) -> int:
    n = len(sigma)
    return sum(n - r for r in descents(sigma))


@dataclass
class FermionicData:
    sigma: tuple[int, ...]
    mu: tuple[int, ...]
    eta: tuple[int, ...]
    runs: list[list[int]] = field(default_factory=list)
    B: list[range] = field(default_factory=list)
    C: list[range] = field(default_factory=list)
    b: dict = field(default_factory=dict)
    c: dict = field(default_factory=dict)
    V: dict = field(default_factory=dict)
    W: dict = field(default_factory=dict)
    r1: int = 0
    comaj: int = 0
    sigma_tilde: tuple[int, ...] = ()

    @classmethod
    def build(cls, sigma: Sequence[int], mu: Sequence[int], eta: Sequence[int] = ()):
        sigma = tuple(sigma)
        mu, eta = tuple(mu), tuple(eta)
        n = len(sigma)
        if sorted(sigma) != list(range(1, n + 1)):
            raise ShapeError(f"not a permutation: {sigma}")
        if sum(mu) + sum(eta) != n:
            raise ShapeError("content size does not match the permutation")
        data = cls(sigma, mu, eta)
        data.runs = runs(sigma)
        ds = sorted(descents(sigma))
        data.r1 = ds[0] if ds else n
        data.comaj = comaj(sigma)
        start = 1
        for a in range(max(len(mu), len(eta))):
            bm, be = part_any(mu, a + 1), part_any(eta, a + 1)
            data.B.append(range(start, start + bm))
            start += bm
            data.C.append(range(start, start + be))
            start += be
        pos = {v: k + 1 for k, v in enumerate(sigma)}

        def bound(block: set[int]) -> int:
            k = pos[max(block)]
            return v_stat(sigma, k) + (1 if k <= data.r1 else 0)

        for i, A in enumerate(data.runs):
            Aset = set(A)
            for j in range(len(data.B)):
                inter_b = Aset & set(data.B[j])
                inter_c = Aset & set(data.C[j])
                if inter_b:
                    data.b[(i, j)] = len(inter_b)
                    data.V[(i, j)] = bound(inter_b)
                if inter_c:
                    data.c[(i, j)] = len(inter_c)
                    data.W[(i, j)] = bound(inter_c)
        # reverse each block A_i & C_j; these occupy consecutive positions
        tilde = list(sigma)
        for i, A in enumerate(data.runs):
            for j in range(len(data.C)):
                idx = [k for k, v in enumerate(sigma) if v in set(A) and v in data.C[j]]
                vals = [tilde[k] for k in idx]
                for k, v in zip(idx, reversed(vals)):
                    tilde[k] = v
        data.sigma_tilde = tuple(tilde)
        return data


def fermionic_H(sigma: Sequence[int], mu: Sequence[int] = (), eta: Sequence[int] = ()) -> QtPoly:
    """The fermionic summand for sigma.

    With mu = (1^n), eta = () this is t^comaj prod_i [v(sigma,i) + chi(i <= r_1)]_q;
    in general it is zero unless sigma~ is a mu,eta-shuffle.
    """
    sigma = tuple(sigma)
    n = len(sigma)
    if not mu and not eta:
        mu = (1,) * n
    data = FermionicData.build(sigma, mu, eta)
    if not is_shuffle(data.sigma_tilde, ShuffleSpec(data.mu, data.eta)):
        return QtPoly()
    out = QtPoly.monomial(0, data.comaj, 0)
    for key, bij in data.b.items():
        out = out * q_binomial(data.V[key], bij)
    for key, cij in data.c.items():
        out = out * q_binomial(data.W[key], cij).shift(cij * (cij - 1) // 2, 0, 0)
    return out


def fermionic_sum(n: int, mu: Sequence[int], eta: Sequence[int] = ()) -> QtPoly:
    total = QtPoly()
    for sigma in permutations(range(1, n + 1)):
        total = total + fermionic_H(sigma, mu, eta)
    return total


def diagonal_blocks(T: Filling) -> list[list[int]]:
    """Entries of a standard flag-strip filling grouped by diagonal, top diagonal first."""
    n = len(T.shape.outer)
    blocks: list[list[int]] = [[] for _ in range(n)]
    for (i, j), a in T.entries:
        blocks[n - 1 - (i + j)].append(a)
    return [sorted(b) for b in blocks]


def brute_force_H(n: int, mu: Sequence[int] | None = None) -> dict[Word, QtPoly]:
    """H(sigma) (or H^mu(sigma)) straight from the parking-function definition.

    A parking function lies in F(sigma) when the runs A_1, A_2, ... of sigma are
    the entry sets of its tableau on the diagonals n-1, n-2, ... (top first).
    """
    spec = ShuffleSpec(tuple(mu)) if mu is not None else None
    out: dict[Word, Counter] = {}
    for lam in sub_staircase_iter(n, 1):
        a = area(lam, n)
        for word, d in strip_words(lam, n, (1,) * n):
            T = filling_from_word(lam, n, word)
            blocks = [b for b in diagonal_blocks(T)]
            while blocks and not blocks[-1]:
                blocks.pop()
            if any(not b for b in blocks):
                continue
            sigma = tuple(v for b in blocks for v in b)
            if [list(r) for r in runs(sigma)] != blocks:
                continue
            if spec is not None and not is_shuffle(parking_word(T), spec):
                continue
            out.setdefault(sigma, Counter())[(d, a, 0)] += 1
    return {s: QtPoly(dict(c)) for s, c in out.items()}


def q_factorial_product(sigma: Sequence[int], mu: Sequence[int]) -> QtPoly:
    """prod_{i,j} [b_{i,j}]_q! for the runs of sigma and the blocks of mu."""
    data = FermionicData.build(sigma, mu, ())
    out = ONE
    for bij in data.b.values():
        out = out * q_factorial(bij)
    return out


# -- Schroder paths -----------------------------------------------------------

SOUTH, EAST, DIAG = "S", "E", "D"


@dataclass(frozen=True)
class SchroderPath:
    """Steps from (n, 0) to (0, n) staying weakly below i + j = n."""

    n: int
    steps: str

    def __post_init__(self):
        i, j = self.n, 0
        for st in self.steps:
            if st == SOUTH:
                i -= 1
            elif st == EAST:
                j += 1
            elif st == DIAG:
                i, j = i - 1, j + 1
            else:
                raise ShapeError(f"bad step {st!r}")
            if i < 0 or i + j > self.n:
                raise ShapeError(f"path {self.steps} leaves the region")
        if (i, j) != (0, self.n):
            raise ShapeError(f"path {self.steps} does not end at (0, {self.n})")

    def expanded(self) -> str:
        return self.steps.replace(DIAG, SOUTH + EAST)

    def partition(self) -> Partition:
        """lam(Pi): the row i part is the column of the south step into row i."""
        parts = [0] * self.n
        i, j = self.n, 0
        for st in self.expanded():
            if st == SOUTH:
                i -= 1
                parts[i] = j
            else:
                j += 1
        return as_partition(sorted(parts, reverse=True))

    def diagonal_rows(self) -> list[int]:
        i = self.n
        out = []
        for st in self.steps:
            if st in (SOUTH, DIAG):
                i -= 1
                if st == DIAG:
                    out.append(i)
        return out

    def filling(self) -> Filling:
        """T(Pi): 1 in the cells whose south step came from a diagonal, ~1 elsewhere."""
        lam = self.partition()
        rows = set(self.diagonal_rows())
        word = tuple(1 if r in rows else -1 for r in range(self.n))
        return filling_from_word(lam, self.n, word)

    def area(self) -> int:
        return area(self.partition(), self.n)

    def dinv(self) -> int:
        return dinv(self.filling(), 1)


def schroder_enum(n: int, d: int) -> Iterator[SchroderPath]:
    """Schroder paths with exactly d diagonal steps (lexicographic on steps, D < E < S)."""
    if not 0 <= d <= n:
        raise ShapeError(f"need 0 <= d <= n, got d={d}")

    def rec(i: int, j: int, left: int, acc: list[str]):
        if (i, j) == (0, n):
            if left == 0:
                yield SchroderPath(n, "".join(acc))
            return
        if left and i >= 1 and i - 1 + j + 1 <= n:
            acc.append(DIAG)
            yield from rec(i - 1, j + 1, left - 1, acc)
            acc.pop()
        if i + j + 1 <= n:
            acc.append(EAST)
            yield from rec(i, j + 1, left, acc)
            acc.pop()
        if i >= 1:
            acc.append(SOUTH)
            yield from rec(i - 1, j, left, acc)
            acc.pop()

    yield from rec(n, 0, d, [])


def schroder_sum(n: int, d: int) -> QtPoly:
    terms = Counter()
    for path in schroder_enum(n, d):
        terms[(path.dinv(), path.area(), 0)] += 1
    return QtPoly(dict(terms))


# -- CSV export --------------------------------------------------------------

def csv_rows(rows: Iterable[tuple]) -> str:
    """Rows of (name, n, m, extra, polynomial) as CSV text with canonical polynomial strings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "n", "m", "extra", "polynomial"])
    for name, n, m, extra, poly in rows:
        writer.writerow([name, n, m, extra, str(poly)])
    return buf.getvalue()
