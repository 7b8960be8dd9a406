"""Symmetric functions of fixed degree with coefficients in Q(q, t, u).

A :class:`SymFunc` stores its coefficients in one of the bases m, e, h, p, s.
Conversions go through the monomial basis: the matrices expressing each basis
in terms of m are integer matrices built from Kostka numbers (s, h, e) or from
direct counting (p); their inverses are computed once per degree with flint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import flint

from .ring import ONE, QtPoly, QtRat, as_rat, parse_rat, render_rat
from .shapes import (
    Partition,
    SkewShape,
    as_partition,
    conjugate,
    ssyt_counts,
    kostka,
    partitions,
)

BASES = ("m", "e", "h", "p", "s")


class NotSymmetric(ValueError):
    """A quasisymmetric combination that is not symmetric.

    ``witness`` holds two rearranged compositions with different coefficients.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# -- transition matrices ----------------------------------------------------

def _p_to_m_row(mu: Partition, n: int) -> dict[Partition, int]:
    """Coefficients of p_mu in the monomial basis."""
    out: dict[Partition, int] = {}
    for nu in partitions(n):
        # count maps from the parts of mu to the rows of nu with the right sums
        @lru_cache(maxsize=None)
        def ways(k: int, rem: tuple[int, ...]) -> int:
            if k == len(mu):
                return 1 if not any(rem) else 0
            total = 0
            for r, v in enumerate(rem):
                if v >= mu[k]:
                    total += ways(k + 1, rem[:r] + (v - mu[k],) + rem[r + 1 :])
            return total

        c = ways(0, nu)
        if c:
            out[nu] = c
    return out


@lru_cache(maxsize=None)
def _to_m(n: int, basis: str) -> dict[Partition, dict[Partition, int]]:
    """Rows: basis element indexed by lam, expanded in the m basis."""
    parts = partitions(n)
    if basis == "m":
        return {lam: {lam: 1} for lam in parts}
    if basis == "s":
        return {
            lam: {nu: k for nu in parts if (k := kostka(lam, nu))} for lam in parts
        }
    if basis in ("h", "e"):
        s_rows = _to_m(n, "s")
        out = {}
        for mu in parts:
            row: dict[Partition, int] = {}
            for lam in parts:
                shape = lam if basis == "h" else conjugate(lam)
                k = kostka(shape, mu)
                if not k:
                    continue
                for nu, c in s_rows[lam].items():
                    row[nu] = row.get(nu, 0) + k * c
            out[mu] = {nu: c for nu, c in row.items() if c}
        return out
    if basis == "p":
        return {mu: _p_to_m_row(mu, n) for mu in parts}
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def _from_m(n: int, basis: str) -> dict[Partition, dict[Partition, Fraction]]:
    """Rows: m_nu expanded in the given basis."""
    parts = partitions(n)
    if basis == "m":
        return {lam: {lam: Fraction(1)} for lam in parts}
    fwd = _to_m(n, basis)
    k = len(parts)
    mat = flint.fmpq_mat(k, k, [fwd[a].get(b, 0) for a in parts for b in parts])
    inv = mat.inv()
    out = {}
    for i, nu in enumerate(parts):
        row = {}
        for j, lam in enumerate(parts):
            v = inv[i, j]
            if v != 0:
                row[lam] = Fraction(int(v.p), int(v.q))
        out[nu] = row
    return out


def _scale(c: QtRat, x) -> QtRat:
    if x == 1:
        return c
    if isinstance(x, Fraction) and x.denominator == 1:
        x = int(x)
    return c * x


# -- SymFunc ---------------------------------------------------------------

class SymFunc:
    """Homogeneous symmetric function of a given degree in one basis."""

    __slots__ = ("degree", "basis", "coeffs")

    def __init__(self, degree: int, basis: str, coeffs: Mapping | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.degree = degree
        self.basis = basis
        clean: dict[Partition, QtRat] = {}
        for lam, c in (coeffs or {}).items():
            lam = as_partition(lam)
            if sum(lam) != degree:
                raise ValueError(f"partition {lam} has size != degree {degree}")
            c = as_rat(c)
            if c:
                clean[lam] = clean[lam] + c if lam in clean else c
        self.coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, degree: int, basis: str, coeffs: dict) -> "SymFunc":
        f = object.__new__(cls)
        f.degree, f.basis, f.coeffs = degree, basis, coeffs
        return f

    @classmethod
    def zero(cls, degree: int, basis: str = "s") -> "SymFunc":
        return cls._raw(degree, basis, {})

    @classmethod
    def basis_element(cls, basis: str, lam: Iterable[int]) -> "SymFunc":
        lam = as_partition(sorted(lam, reverse=True))
        return cls._raw(sum(lam), basis, {lam: QtRat.one()})

    # -- access ----------------------------------------------------------
    def coeff(self, lam: Sequence[int]) -> QtRat:
        return self.coeffs.get(as_partition(lam), QtRat.zero())

    def items(self):
        return sorted(self.coeffs.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self.coeffs

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc(self.degree, self.basis, {lam: fn(c) for lam, c in self.coeffs.items()})

    def evaluate(self, q=None, t=None, u=None) -> "SymFunc":
        """Substitute values for q, t, u in every coefficient."""
        return self.map_coeffs(lambda c: as_rat(c.evaluate(q=q, t=t, u=u)))

    def swap_qt(self) -> "SymFunc":
        return self.map_coeffs(lambda c: c.swap_qt())

    # -- conversions -----------------------------------------------------
    def to(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        n = self.degree
        if self.basis == "m":
            mono = self.coeffs
        else:
            rows = _to_m(n, self.basis)
            acc: dict[Partition, QtRat] = {}
            for lam, c in self.coeffs.items():
                for nu, k in rows[lam].items():
                    v = _scale(c, k)
                    acc[nu] = acc[nu] + v if nu in acc else v
            mono = {k: v for k, v in acc.items() if v}
        if basis == "m":
            return SymFunc._raw(n, "m", mono)
        rows = _from_m(n, basis)
        acc = {}
        for nu, c in mono.items():
            for lam, k in rows[nu].items():
                v = _scale(c, k)
                acc[lam] = acc[lam] + v if lam in acc else v
        return SymFunc._raw(n, basis, {k: v for k, v in acc.items() if v})

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("cannot add symmetric functions of different degrees")
        other = other.to(self.basis)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out[lam] + c if lam in out else c
        return SymFunc._raw(self.degree, self.basis, {k: v for k, v in out.items() if v})

    def __neg__(self) -> "SymFunc":
        return SymFunc._raw(self.degree, self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return product(self, other)
        c = as_rat(other)
        if not c:
            return SymFunc.zero(self.degree, self.basis)
        return SymFunc._raw(self.degree, self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        o = other.to(self.basis)
        if set(self.coeffs) != set(o.coeffs):
            return False
        return all(self.coeffs[k] == o.coeffs[k] for k in self.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def is_schur_positive(self) -> bool:
        """All Schur coefficients are polynomials with nonnegative coefficients."""
        for c in self.to("s").coeffs.values():
            if not c.is_polynomial():
                return False
            p = c.as_poly()
            if not (p.is_polynomial() and p.coefficients_nonnegative()):
                return False
        return True

    # -- rendering -------------------------------------------------------
    def render(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for lam, c in self.items():
            name = f"{self.basis}[{','.join(map(str, lam))}]"
            text = render_rat(c)
            if text == "1":
                term = name
            elif text == "-1":
                term = "-" + name
            elif len(c.num) == 1 and c.den == ONE:
                term = f"{text}*{name}"
            else:
                term = f"({text})*{name}"
            out.append(term)
        return " + ".join(out).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SymFunc({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis,
            "terms": [
                {"partition": list(lam), "coeff": render_rat(c)} for lam, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymFunc":
        return cls(
            int(data["degree"]),
            data["basis"],
            {tuple(t["partition"]): parse_rat(t["coeff"]) for t in data["terms"]},
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def convert_basis(f: SymFunc, target: str) -> SymFunc:
    return f.to(target)


def _basis_fn(basis: str):
    def make(*lam) -> SymFunc:
        if len(lam) == 1 and not isinstance(lam[0], int):
            lam = tuple(lam[0])
        return SymFunc.basis_element(basis, lam)

    make.__name__ = basis
    make.__doc__ = f"The basis element {basis}_lambda (parts given as ints or one sequence)."
    return make


m = _basis_fn("m")
e = _basis_fn("e")
h = _basis_fn("h")
p = _basis_fn("p")
s = _basis_fn("s")


def product(f: SymFunc, g: SymFunc) -> SymFunc:
    """f * g, computed in the h basis where products are concatenations."""
    fh, gh = f.to("h"), g.to("h")
    out: dict[Partition, QtRat] = {}
    for a, ca in fh.coeffs.items():
        for b, cb in gh.coeffs.items():
            lam = tuple(sorted(a + b, reverse=True))
            v = ca * cb
            out[lam] = out[lam] + v if lam in out else v
    return SymFunc._raw(f.degree + g.degree, "h", {k: v for k, v in out.items() if v})


def hall_inner(f: SymFunc, g: SymFunc) -> QtRat:
    """<f, g> with <h_lam, m_mu> = delta."""
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    fh, gm = f.to("h"), g.to("m")
    total = QtRat.zero()
    for lam, c in fh.coeffs.items():
        d = gm.coeffs.get(lam)
        if d is not None:
            total = total + c * d
    return total


def omega_involution(f: SymFunc) -> SymFunc:
    if f.basis == "e":
        return SymFunc._raw(f.degree, "h", dict(f.coeffs))
    if f.basis == "h":
        return SymFunc._raw(f.degree, "e", dict(f.coeffs))
    if f.basis == "s":
        return SymFunc._raw(f.degree, "s", {conjugate(k): v for k, v in f.coeffs.items()})
    if f.basis == "p":
        n = f.degree
        return SymFunc._raw(
            f.degree, "p", {k: v if (n - len(k)) % 2 == 0 else -v for k, v in f.coeffs.items()}
        )
    return omega_involution(f.to("h")).to(f.basis)


# -- plethysm ---------------------------------------------------------------

@dataclass(frozen=True)
class Alphabet:
    """A = P(q,t,u) + R(q,t,u) * Z, with Z = z_1 + z_2 + ...

    ``finite_part`` is P, read as a formal sum of monomials; ``z_multiplier``
    is R.
    """

    finite_part: QtRat = QtRat.zero()
    z_multiplier: QtRat = QtRat.zero()

    def __post_init__(self):
        object.__setattr__(self, "finite_part", as_rat(self.finite_part))
        object.__setattr__(self, "z_multiplier", as_rat(self.z_multiplier))

    def p_k(self, k: int) -> tuple[QtRat, QtRat]:
        """(P(q^k,t^k,u^k), R(q^k,t^k,u^k))."""
        return self.finite_part.scale_exponents(k), self.z_multiplier.scale_exponents(k)

    @classmethod
    def z_times(cls, r) -> "Alphabet":
        return cls(QtRat.zero(), as_rat(r))

    @classmethod
    def finite(cls, r) -> "Alphabet":
        return cls(as_rat(r), QtRat.zero())


def plethysm_graded(f: SymFunc, A: Alphabet) -> dict[int, SymFunc]:
    """f[A] split by degree in z: {k: homogeneous piece of degree k}."""
    fp = f.to("p")
    P = {}
    R = {}

    def pk(k):
        if k not in P:
            P[k], R[k] = A.p_k(k)
        return P[k], R[k]

    pieces: dict[int, dict[Partition, QtRat]] = {}
    for lam, c in fp.coeffs.items():
        factors = [pk(k) for k in lam]
        l = len(lam)
        for r in range(l + 1):
            for chosen in combinations(range(l), r):
                chosen_set = set(chosen)
                coef = c
                for i in range(l):
                    fac = factors[i][1] if i in chosen_set else factors[i][0]
                    if not fac:
                        coef = QtRat.zero()
                        break
                    coef = coef * fac
                if not coef:
                    continue
                key = tuple(sorted((lam[i] for i in chosen), reverse=True))
                deg = sum(key)
                bucket = pieces.setdefault(deg, {})
                bucket[key] = bucket[key] + coef if key in bucket else coef
    return {
        d: SymFunc._raw(d, "p", {k: v for k, v in b.items() if v})
        for d, b in sorted(pieces.items())
    }


def plethysm_eval(f: SymFunc, A: Alphabet):
    """f[A].

    A purely finite alphabet gives a QtRat; a pure multiple of Z gives a
    SymFunc of the same degree (p basis).  Otherwise the graded pieces are
    returned as a dict.
    """
    graded = plethysm_graded(f, A)
    if A.z_multiplier.is_zero():
        piece = graded.get(0)
        return piece.coeff(()) if piece is not None else QtRat.zero()
    if A.finite_part.is_zero():
        return graded.get(f.degree, SymFunc.zero(f.degree, "p"))
    return graded


# -- skew Schur and principal specialization -------------------------------

def skew_schur(shape: SkewShape) -> SymFunc:
    """sum over SSYT of the shape of z^T, in the monomial basis."""
    n = shape.size
    counts = ssyt_counts(shape.outer, shape.inner, partitions(n))
    return SymFunc(n, "m", {nu: c for nu, c in counts.items() if c})


def principal_schur(lam: Sequence[int]) -> QtRat:
    """s_lam[1/(1-t)] = t^{n(lam)} / prod over cells of (1 - t^{hook})."""
    lam = as_partition(lam)
    conj = conjugate(lam)
    den = ONE
    for i, row in enumerate(lam):
        for j in range(row):
            hook = row - j + conj[j] - i - 1
            den = den * (ONE - QtPoly.monomial(0, hook, 0))
    nl = sum(i * x for i, x in enumerate(lam))
    return QtRat(QtPoly.monomial(0, nl, 0), den)


# -- quasisymmetric functions -----------------------------------------------

def partial_sums(alpha: Sequence[int]) -> frozenset[int]:
    out, acc = set(), 0
    for a in alpha[:-1]:
        acc += a
        out.add(acc)
    return frozenset(out)


def _all_compositions(n: int) -> Iterator[tuple[int, ...]]:
    # strong compositions of n, via the cut sets of {1..n-1}
    for mask in range(1 << (n - 1)) if n else [0]:
        cuts = [i for i in range(1, n) if mask >> (i - 1) & 1]
        bounds = [0] + cuts + [n]
        yield tuple(bounds[k + 1] - bounds[k] for k in range(len(bounds) - 1))


@dataclass
class QsymCoeffs:
    """f = sum_D c_D Q_{n,D}; keys are frozensets of {1..n-1}."""

    degree: int
    coeffs: dict

    def add(self, D: Iterable[int], c) -> None:
        D = frozenset(D)
        if any(not (1 <= a < self.degree) for a in D):
            raise ValueError(f"descent set {set(D)} outside 1..{self.degree - 1}")
        c = c if isinstance(c, (QtPoly, QtRat, int)) else as_rat(c)
        self.coeffs[D] = self.coeffs[D] + c if D in self.coeffs else c

    def monomial_coeff(self, alpha: Sequence[int]):
        """Coefficient of z^alpha: sum of c_D over D inside the partial sums."""
        S = partial_sums(tuple(a for a in alpha if a))
        total = 0
        for D, c in self.coeffs.items():
            if D <= S:
                total = total + c
        return total

    def super_coeff(self, mu: Sequence[int], eta: Sequence[int]):
        """Coefficient of z^mu w^eta in sum_D c_D Q~_{n,D}(z, w).

        The weakly increasing word has blocks 1^{mu_1}, ~1^{eta_1}, 2^{mu_2}, ...;
        internal positions of a positive block must avoid D and those of a
        negative block must lie in D.
        """
        if sum(mu) + sum(eta) != self.degree:
            raise ValueError("content size does not match degree")
        forbidden, required = set(), set()
        pos = 0
        for a in range(max(len(mu), len(eta))):
            for size, target in ((_get(mu, a), forbidden), (_get(eta, a), required)):
                target.update(range(pos + 1, pos + size))
                pos += size
        total = 0
        for D, c in self.coeffs.items():
            if required <= D and not (D & forbidden):
                total = total + c
        return total


def _get(v: Sequence[int], i: int) -> int:
    return v[i] if i < len(v) else 0


def qsym_to_sym(c: QsymCoeffs) -> SymFunc:
    """The symmetric function sum_D c_D Q_{n,D}, in the monomial basis.

    Raises NotSymmetric unless every rearrangement of each composition has
    the same monomial coefficient.
    """
    n = c.degree
    if n == 0:
        return SymFunc(0, "m", {(): c.coeffs.get(frozenset(), 0)})
    # zeta transform over subsets of {1..n-1}: g(S) = sum_{D subset S} c_D
    size = n - 1
    g: list = [0] * (1 << size)
    for D, v in c.coeffs.items():
        mask = sum(1 << (a - 1) for a in D)
        g[mask] = g[mask] + v
    for b in range(size):
        bit = 1 << b
        for mask in range(1 << size):
            if mask & bit and g[mask ^ bit] != 0:
                g[mask] = g[mask] + g[mask ^ bit]
    seen: dict[Partition, tuple] = {}
    for alpha in _all_compositions(n):
        mask = sum(1 << (a - 1) for a in partial_sums(alpha))
        val = g[mask]
        lam = tuple(sorted(alpha, reverse=True))
        if lam in seen:
            ref_alpha, ref_val = seen[lam]
            if as_rat(ref_val) != as_rat(val):
                raise NotSymmetric(
                    f"coefficients of z^{ref_alpha} and z^{alpha} differ",
                    witness=(ref_alpha, alpha),
                )
        else:
            seen[lam] = (alpha, val)
    return SymFunc(n, "m", {lam: val for lam, (_, val) in seen.items()})


# -- superization -----------------------------------------------------------

def superize_coeff(f: SymFunc, mu: Sequence[int], eta: Sequence[int]) -> QtRat:
    """<f, e_eta h_mu>, the coefficient of z^mu w^eta in omega^W f[Z+W]."""
    mu = tuple(sorted((x for x in mu if x), reverse=True))
    eta = tuple(sorted((x for x in eta if x), reverse=True))
    if sum(mu) + sum(eta) != f.degree:
        raise ValueError("content size does not match degree")
    g = _e_eta_h_mu(eta, mu)
    fm = f.to("m")
    total = QtRat.zero()
    for lam, k in g.items():
        d = fm.coeffs.get(lam)
        if d is not None:
            total = total + _scale(d, k)
    return total


@lru_cache(maxsize=None)
def _e_eta_h_mu(eta: Partition, mu: Partition) -> dict[Partition, int]:
    """e_eta h_mu in the h basis, integer coefficients."""
    n = sum(eta) + sum(mu)
    eh = SymFunc.basis_element("e", eta).to("h")
    out: dict[Partition, int] = {}
    for lam, c in eh.coeffs.items():
        key = tuple(sorted(lam + mu, reverse=True))
        out[key] = out.get(key, 0) + int(c.as_fraction())
    assert all(sum(k) == n for k in out)
    return {k: v for k, v in out.items() if v}


def superize_coeffs(f: SymFunc) -> dict[tuple[Partition, Partition], QtRat]:
    """Table of <f, e_eta h_mu> over all partition pairs with |mu|+|eta| = deg f."""
    n = f.degree
    out = {}
    for k in range(n + 1):
        for mu in partitions(k):
            for eta in partitions(n - k):
                out[(mu, eta)] = superize_coeff(f, mu, eta)
    return out
