"""Partitions, skew shapes and (super) tableaux, French convention.

A partition is a weakly decreasing tuple of positive ints.  Cells are pairs
``(i, j)`` with ``i`` the row (growing upward) and ``j`` the column, so the
diagram of ``lam`` is ``{(i, j) : 0 <= j < lam[i]}``.

Letters of the signed alphabet ``1 < ~1 < 2 < ~2 < ...`` are stored as ints:
``a`` for the positive letter and ``-a`` for the negative letter ``~a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

Partition = tuple[int, ...]
Cell = tuple[int, int]


class ShapeError(ValueError):
    """Invalid shape, filling or content."""


# -- partitions -------------------------------------------------------------

def as_partition(parts: Iterable[int]) -> Partition:
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise ShapeError(f"negative part in {p}")
    p = tuple(x for x in p if x > 0)
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ShapeError(f"parts not weakly decreasing: {p}")
    return p


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def part(lam: Sequence[int], i: int) -> int:
    """lam_i with 1-based i; zero past the end."""
    return lam[i - 1] if 0 < i <= len(lam) else 0


def n_stat(lam: Sequence[int]) -> int:
    """n(lam) = sum (i-1) lam_i."""
    return sum(i * x for i, x in enumerate(lam))


def multiplicities(lam: Sequence[int], length: int | None = None) -> list[int]:
    """alpha_j = number of parts equal to j; alpha_0 pads the length to ``length``."""
    top = max(lam, default=0)
    alpha = [0] * (top + 1)
    for x in lam:
        alpha[x] += 1
    if length is not None:
        if len(lam) > length:
            raise ShapeError(f"{lam} has more than {length} parts")
        alpha[0] = length - sum(1 for x in lam if x > 0)
    return alpha


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    return len(inner) <= len(outer) and all(x <= outer[i] for i, x in enumerate(inner))


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """lam >= mu in dominance order (equal sizes assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += part(lam, i + 1)
        b += part(mu, i + 1)
        if a < b:
            return False
    return True


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order ((n) first)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def compositions(n: int, parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Compositions of n into positive parts (exactly ``parts`` of them if given)."""
    if n == 0:
        if parts in (None, 0):
            yield ()
        return
    if parts == 0:
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first, None if parts is None else parts - 1):
            yield (first,) + rest


def staircase(n: int, m: int = 1) -> Partition:
    """m * delta_n = (m(n-1), m(n-2), ..., m)."""
    return as_partition(m * (n - 1 - i) for i in range(n))


def sub_staircase_iter(n: int, m: int = 1) -> Iterator[Partition]:
    """Every lam with lam_i <= m(n-i), i = 1..n.

    Order: lexicographic on the padded part vector (lam_1, ..., lam_n), so the
    empty partition comes first and m*delta_n last.
    """
    if n < 1 or m < 1:
        raise ShapeError("sub_staircase_iter needs n >= 1 and m >= 1")

    def rec(i: int, cap: int, prefix: list[int]):
        if i > n:
            yield as_partition(prefix)
            return
        hi = min(cap, m * (n - i))
        for v in range(0, hi + 1):
            prefix.append(v)
            yield from rec(i + 1, v, prefix)
            prefix.pop()

    # lam_1 is chosen first but must be >= lam_2 ..., so build increasing in lex
    # on the vector by iterating lam_1 ascending and later parts ascending.
    yield from rec(1, m * (n - 1), [])


# -- skew shapes -----------------------------------------------------------

@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = ()
    cells: tuple[Cell, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        outer = as_partition(self.outer)
        inner = as_partition(self.inner)
        if not contains(outer, inner):
            raise ShapeError(f"{inner} is not contained in {outer}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)
        cells = tuple(
            (i, j) for i in range(len(outer)) for j in range(part(inner, i + 1), outer[i])
        )
        object.__setattr__(self, "cells", cells)

    @property
    def size(self) -> int:
        return len(self.cells)

    def __contains__(self, x: Cell) -> bool:
        i, j = x
        return 0 <= i < len(self.outer) and part(self.inner, i + 1) <= j < self.outer[i]

    def is_horizontal_strip(self) -> bool:
        return len({j for _, j in self.cells}) == len(self.cells)

    def is_vertical_strip(self) -> bool:
        return len({i for i, _ in self.cells}) == len(self.cells)

    def __str__(self) -> str:
        if self.inner:
            return f"{self.outer}/{self.inner}"
        return str(self.outer)


def content(x: Cell) -> int:
    return x[1] - x[0]


def diag(x: Cell, m: int = 1) -> int:
    """d_m(x) = m*i + j."""
    return m * x[0] + x[1]


def d_key(x: Cell, m: int = 1) -> tuple[int, int]:
    """Sort key realising <_d: larger diagonal first, then smaller column."""
    return (-(m * x[0] + x[1]), x[1])


def flag_strip(lam: Sequence[int], n: int) -> SkewShape:
    """(lam + (1^n)) / lam: one cell per row i, in column lam_{i+1}."""
    lam = as_partition(lam)
    if len(lam) > n:
        raise ShapeError(f"{lam} has more than {n} parts")
    outer = tuple(part(lam, i + 1) + 1 for i in range(n))
    return SkewShape(outer, lam)


def arm_leg(lam: Sequence[int], x: Cell) -> tuple[int, int]:
    i, j = x
    lam = tuple(lam)
    if not (0 <= i < len(lam) and 0 <= j < lam[i]):
        raise ShapeError(f"cell {x} not in {lam}")
    conj = conjugate(lam)
    return lam[i] - j - 1, conj[j] - i - 1


# -- letters ---------------------------------------------------------------

def letter_key(a: int) -> int:
    """Position in the alphabet 1 < ~1 < 2 < ~2 < ..."""
    return 2 * a - 1 if a > 0 else -2 * a


def render_letter(a: int) -> str:
    return str(a) if a > 0 else f"~{-a}"


# -- fillings --------------------------------------------------------------

@dataclass(frozen=True)
class Filling:
    shape: SkewShape
    entries: tuple[tuple[Cell, int], ...]

    @classmethod
    def from_dict(cls, shape: SkewShape, entries: dict[Cell, int]) -> "Filling":
        if set(entries) != set(shape.cells):
            raise ShapeError("filling does not cover exactly the cells of the shape")
        return cls(shape, tuple(sorted(entries.items())))

    def as_dict(self) -> dict[Cell, int]:
        return dict(self.entries)

    def __getitem__(self, x: Cell) -> int:
        return self.as_dict()[x]

    @property
    def n(self) -> int:
        return len(self.entries)

    def contents(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(mu, eta): multiplicities of positive and negative letters 1, 2, ..."""
        top = max((abs(a) for _, a in self.entries), default=0)
        mu = [0] * top
        eta = [0] * top
        for _, a in self.entries:
            if a > 0:
                mu[a - 1] += 1
            else:
                eta[-a - 1] += 1
        return _trim(mu), _trim(eta)

    def is_standard(self) -> bool:
        vals = sorted(a for _, a in self.entries)
        return vals == list(range(1, len(vals) + 1)) and is_super_tableau(self)

    def cell_of(self) -> dict[int, Cell]:
        """Inverse map for a standard filling."""
        return {a: x for x, a in self.entries}

    def __str__(self) -> str:
        return render_filling(self)


def _trim(v: list[int]) -> tuple[int, ...]:
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def is_super_tableau(T: Filling) -> bool:
    """Weakly increasing rows/columns; positive letters in horizontal strips,
    negative letters in vertical strips."""
    ent = T.as_dict()
    for (i, j), a in ent.items():
        ka = letter_key(a)
        right = ent.get((i, j + 1))
        if right is not None:
            kb = letter_key(right)
            if kb < ka or (kb == ka and a < 0):
                return False
        up = ent.get((i + 1, j))
        if up is not None:
            kb = letter_key(up)
            if kb < ka or (kb == ka and a > 0):
                return False
    # strips also forbid equal letters in the same row/column non-adjacently;
    # in a skew shape with monotone rows/columns adjacency suffices.
    return True


def render_filling(T: Filling) -> str:
    """Rows from the top (largest i) down; '.' for cells outside the shape."""
    ent = T.as_dict()
    shape = T.shape
    width = max(shape.outer, default=0)
    lines = []
    for i in reversed(range(len(shape.outer))):
        row = []
        for j in range(width):
            if (i, j) in ent:
                row.append(render_letter(ent[(i, j)]))
            else:
                row.append(".")
        lines.append(" ".join(row).rstrip(" ."))
    return "\n".join(lines)


def parse_filling(text: str) -> Filling:
    """Inverse of :func:`render_filling` (the shape is read off the cells)."""
    rows = [ln.split() for ln in text.strip("\n").splitlines()]
    height = len(rows)
    entries: dict[Cell, int] = {}
    for r, toks in enumerate(rows):
        i = height - 1 - r
        for j, tok in enumerate(toks):
            if tok == ".":
                continue
            entries[(i, j)] = -int(tok[1:]) if tok.startswith("~") else int(tok)
    outer = []
    inner = []
    for i in range(height):
        cols = sorted(j for (ii, j) in entries if ii == i)
        if not cols:
            raise ShapeError(f"empty row {i} in filling text")
        outer.append(cols[-1] + 1)
        inner.append(cols[0])
    shape = SkewShape(tuple(outer), as_partition(inner))
    return Filling.from_dict(shape, entries)


# -- enumeration -----------------------------------------------------------

def _horizontal_strips(rho: list[int], outer: Partition, k: int) -> Iterator[list[int]]:
    """All rho' with rho'/rho a horizontal strip of size k inside outer."""
    rows = len(outer)

    def rec(i: int, left: int, cur: list[int]):
        if i == rows:
            if left == 0:
                yield list(cur)
            return
        lo = rho[i]
        hi = outer[i] if i == 0 else min(outer[i], rho[i - 1])
        for v in range(lo, min(hi, lo + left) + 1):
            cur.append(v)
            yield from rec(i + 1, left - (v - lo), cur)
            cur.pop()

    yield from rec(0, k, [])


def _vertical_strips(rho: list[int], outer: Partition, k: int) -> Iterator[list[int]]:
    rows = len(outer)

    def rec(i: int, left: int, cur: list[int]):
        if i == rows:
            if left == 0:
                yield list(cur)
            return
        for add in (0, 1):
            v = rho[i] + add
            if add > left or v > outer[i] or (i > 0 and v > cur[i - 1]):
                continue
            cur.append(v)
            yield from rec(i + 1, left - add, cur)
            cur.pop()

    yield from rec(0, k, [])


def enumerate_fillings(
    shape: SkewShape, mu: Sequence[int] = (), eta: Sequence[int] = ()
) -> Iterator[Filling]:
    """Super tableaux of ``shape`` with letter a used mu[a-1] times and ~a used
    eta[a-1] times.

    Letters are placed in alphabet order, each class as a horizontal (positive)
    or vertical (negative) strip.  The stream order is the resulting depth-first
    order over strip choices, which is deterministic.
    """
    mu, eta = tuple(mu), tuple(eta)
    if any(x < 0 for x in mu + eta):
        raise ShapeError("contents must be nonnegative")
    if sum(mu) + sum(eta) != shape.size:
        raise ShapeError(
            f"content sizes {sum(mu)}+{sum(eta)} do not match shape size {shape.size}"
        )
    outer = shape.outer
    rows = len(outer)
    steps: list[tuple[int, int]] = []
    for a in range(1, max(len(mu), len(eta)) + 1):
        if part(mu, a):
            steps.append((a, mu[a - 1]))
        if part(eta, a):
            steps.append((-a, eta[a - 1]))
    start = [part(shape.inner, i + 1) for i in range(rows)]

    def rec(k: int, rho: list[int], ent: dict[Cell, int]):
        if k == len(steps):
            yield Filling(shape, tuple(sorted(ent.items())))
            return
        letter, size = steps[k]
        strips = _horizontal_strips if letter > 0 else _vertical_strips
        for new in strips(rho, outer, size):
            added = [(i, j) for i in range(rows) for j in range(rho[i], new[i])]
            for x in added:
                ent[x] = letter
            yield from rec(k + 1, new, ent)
            for x in added:
                del ent[x]

    yield from rec(0, start, {})


def standard_tableaux(shape: SkewShape) -> Iterator[Filling]:
    return enumerate_fillings(shape, (1,) * shape.size, ())


@lru_cache(maxsize=None)
def count_ssyt(outer: Partition, inner: Partition, mu: tuple[int, ...]) -> int:
    """Number of SSYT of shape outer/inner and content mu (a composition)."""
    rows = len(outer)
    start = tuple(part(inner, i + 1) for i in range(rows))

    @lru_cache(maxsize=None)
    def rec(k: int, rho: tuple[int, ...]) -> int:
        if k == len(mu):
            return 1 if rho == outer else 0
        return sum(rec(k + 1, tuple(new)) for new in _horizontal_strips(list(rho), outer, mu[k]))

    return rec(0, start)


def ssyt_counts(outer: Partition, inner: Partition, contents: Iterable[tuple[int, ...]]) -> dict:
    """count_ssyt for many contents of one shape, sharing work between
    contents with a common tail (letters are placed from the largest down)."""
    outer = as_partition(outer)
    rows = len(outer)
    start = tuple(part(inner, i + 1) for i in range(rows))
    bottom = list(start)

    @lru_cache(maxsize=None)
    def rec(rho: tuple[int, ...], rest: tuple[int, ...]) -> int:
        # rho is filled with the letters in ``rest``; peel the largest letter
        if not rest:
            return 1 if rho == start else 0
        total = 0
        for smaller in _horizontal_strips_down(rho, bottom, rest[-1]):
            total += rec(smaller, rest[:-1])
        return total

    return {mu: rec(outer, tuple(mu)) for mu in contents}


def _horizontal_strips_down(rho: tuple[int, ...], floor: list[int], k: int) -> Iterator[tuple[int, ...]]:
    """All sigma with rho/sigma a horizontal strip of size k and sigma >= floor."""
    rows = len(rho)

    def rec(i: int, left: int, cur: list[int]):
        if i == rows:
            if left == 0:
                yield tuple(cur)
            return
        hi = rho[i]
        lo = max(floor[i], rho[i + 1] if i + 1 < rows else 0, hi - left)
        if i > 0:
            hi = min(hi, cur[i - 1])
        for v in range(hi, lo - 1, -1):
            cur.append(v)
            yield from rec(i + 1, left - (rho[i] - v), cur)
            cur.pop()

    yield from rec(0, k, [])


def kostka(lam: Partition, mu: Sequence[int]) -> int:
    return count_ssyt(tuple(lam), (), tuple(mu))


# -- descents and standardization -----------------------------------------

Mode = Literal["ordinary", "d_order"]


def descent_set(S: Filling, mode: Mode = "ordinary", m: int = 1) -> frozenset[int]:
    """Descents of a standard filling.

    ordinary: a is a descent when cell(a+1) lies weakly left of cell(a).
    d_order: a is a d-descent when cell(a) >_d cell(a+1).
    """
    where = S.cell_of()
    out = set()
    for a in range(1, S.n):
        x, y = where[a], where[a + 1]
        if mode == "ordinary":
            if x[1] >= y[1]:
                out.add(a)
        else:
            if d_key(x, m) > d_key(y, m):
                out.add(a)
    return frozenset(out)


def standardize(T: Filling, mode: Mode = "ordinary", m: int = 1) -> Filling:
    """The unique standard S with T o S^{-1} weakly increasing, runs of a
    positive letter free of descents and runs of a negative letter all descents."""
    if not is_super_tableau(T):
        raise ShapeError("standardize needs a valid super tableau")

    def key(item: tuple[Cell, int]):
        (i, j), a = item
        if mode == "ordinary":
            # positive runs left to right, negative runs right to left then upward
            tie = (j, i) if a > 0 else (-j, i)
        else:
            k = d_key((i, j), m)
            tie = k if a > 0 else (-k[0], -k[1])
        return (letter_key(a), tie)

    order = sorted(T.entries, key=key)
    ent = {x: r + 1 for r, (x, _) in enumerate(order)}
    return Filling(T.shape, tuple(sorted(ent.items())))


def maj(w, flavor: Literal["maj", "comaj"] = "maj") -> int:
    """Major index (sum of descent positions) or comaj = sum (n - r).

    ``w`` is a word (sequence of ints) or a standard Filling (ordinary descents).
    """
    if isinstance(w, Filling):
        n = w.n
        ds = sorted(descent_set(w, "ordinary"))
    else:
        w = list(w)
        n = len(w)
        ds = [i + 1 for i in range(n - 1) if w[i] > w[i + 1]]
    if flavor == "maj":
        return sum(ds)
    return sum(n - r for r in ds)
