"""Exact Laurent polynomials and rational functions in the parameters q, t, u.

Coefficients are Python ints.  A :class:`QtPoly` is a sparse map from exponent
triples ``(eq, et, eu)`` to nonzero integers; exponents may be negative.
A :class:`QtRat` is a reduced quotient of two such polynomials.

Multivariate gcd for :func:`normalize` is delegated to python-flint.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

import flint

Exp = tuple[int, int, int]
VARS = ("q", "t", "u")

_FLINT_CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")


class QtPoly:
    """Integer Laurent polynomial in q, t, u.  Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | None = None):
        if terms is None:
            self._terms: dict[Exp, int] = {}
        else:
            self._terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exp, int]) -> "QtPoly":
        # terms must already be free of zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "QtPoly":
        return cls._raw({(0, 0, 0): c} if c else {})

    @classmethod
    def monomial(cls, eq: int = 0, et: int = 0, eu: int = 0, coeff: int = 1) -> "QtPoly":
        return cls._raw({(eq, et, eu): coeff} if coeff else {})

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict[Exp, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0, 0) in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> int:
        return self._terms.get((0, 0, 0), 0)

    def coeff(self, eq: int = 0, et: int = 0, eu: int = 0) -> int:
        return self._terms.get((eq, et, eu), 0)

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        """Terms in descending lexicographic order on (eq, et, eu)."""
        return sorted(self._terms.items(), reverse=True)

    def leading(self) -> tuple[Exp, int]:
        e = max(self._terms)
        return e, self._terms[e]

    def min_exponents(self) -> Exp:
        if not self._terms:
            return (0, 0, 0)
        es = list(self._terms)
        return tuple(min(e[k] for e in es) for k in range(3))  # type: ignore[return-value]

    def max_exponents(self) -> Exp:
        if not self._terms:
            return (0, 0, 0)
        es = list(self._terms)
        return tuple(max(e[k] for e in es) for k in range(3))  # type: ignore[return-value]

    def degree(self, var: str) -> int:
        k = VARS.index(var)
        return max((e[k] for e in self._terms), default=0)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def coefficients_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(min(e) >= 0 for e in self._terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self._terms) < len(other._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return QtPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "QtPoly":
        return QtPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return QtPoly()
            return QtPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, QtPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return QtPoly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((e2, c2),) = b.items()
            return QtPoly._raw(
                {(e[0] + e2[0], e[1] + e2[1], e[2] + e2[2]): c * c2 for e, c in a.items()}
            )
        out: dict[Exp, int] = {}
        get = out.get
        for (x1, y1, z1), c1 in b.items():
            for (x2, y2, z2), c2 in a.items():
                k = (x1 + x2, y1 + y2, z1 + z2)
                out[k] = get(k, 0) + c1 * c2
        return QtPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QtPoly":
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("negative power of a non-monomial QtPoly")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ArithmeticError("negative power of a non-unit monomial")
            return QtPoly.monomial(e[0] * k, e[1] * k, e[2] * k, c ** (-k))
        result = QtPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({(0, 0, 0): other} if other else {})
        if isinstance(other, QtPoly):
            return self._terms == other._terms
        if isinstance(other, QtRat):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def shift(self, eq: int = 0, et: int = 0, eu: int = 0) -> "QtPoly":
        """Multiply by the monomial q^eq t^et u^eu."""
        return QtPoly._raw(
            {(e[0] + eq, e[1] + et, e[2] + eu): c for e, c in self._terms.items()}
        )

    def scale_exponents(self, k: int) -> "QtPoly":
        """Substitute a -> a^k for each of q, t, u (the p_k rule)."""
        return QtPoly._raw(
            {(e[0] * k, e[1] * k, e[2] * k): c for e, c in self._terms.items()}
        )

    def swap_qt(self) -> "QtPoly":
        return QtPoly._raw({(e[1], e[0], e[2]): c for e, c in self._terms.items()})

    # -- substitution -------------------------------------------------
    def evaluate(self, q=None, t=None, u=None):
        """Substitute numbers (int or Fraction) and/or polynomials for variables.

        Variables left as None are kept symbolic.  Returns an int/Fraction when
        no variable remains, otherwise a QtPoly (or QtRat if a denominator
        appears).
        """
        vals = (q, t, u)
        simple = all(
            v is None or isinstance(v, (int, Fraction)) or (isinstance(v, QtPoly) and v.is_monomial())
            for v in vals
        )
        if not simple:
            gens = [
                as_rat(vals[k]) if vals[k] is not None else QtRat(QtPoly.monomial(*_unit(k)))
                for k in range(3)
            ]
            return _substitute_terms(self._terms, gens)
        out: dict[Exp, Fraction | int] = {}
        for e, c in self._terms.items():
            coeff: Fraction | int = c
            ne = [0, 0, 0]
            for k in range(3):
                ek = e[k]
                v = vals[k]
                if not ek:
                    continue
                if v is None:
                    ne[k] += ek
                elif isinstance(v, QtPoly):
                    ((ve, vc),) = v.items()
                    ne[0] += ve[0] * ek
                    ne[1] += ve[1] * ek
                    ne[2] += ve[2] * ek
                    coeff = coeff * Fraction(vc) ** ek
                else:
                    if v == 0 and ek < 0:
                        raise ZeroDivisionError("negative power of a variable set to 0")
                    coeff = coeff * Fraction(v) ** ek
            key = (ne[0], ne[1], ne[2])
            out[key] = out.get(key, 0) + coeff
        out = {e: c for e, c in out.items() if c}
        if all(e == (0, 0, 0) for e in out):
            r = Fraction(out.get((0, 0, 0), 0))
            return int(r) if r.denominator == 1 else r
        den = 1
        for c in out.values():
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        poly = QtPoly._raw({e: int(c * den) for e, c in out.items()})
        if den == 1:
            return poly
        return QtRat(poly, QtPoly.const(den))

    def substitute(self, **subs) -> "QtRat":
        """Substitute expressions for q/t/u; the result is returned as a QtRat."""
        return _as_rat(self.evaluate(**subs))

    # -- rendering ----------------------------------------------------
    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"QtPoly({render_poly(self)!r})"


def _unit(k: int) -> Exp:
    return tuple(1 if i == k else 0 for i in range(3))  # type: ignore[return-value]


def _substitute_terms(terms: Mapping[Exp, int], gens: list["QtRat"]):
    total = QtRat.zero()
    cache: dict[tuple[int, int], QtRat] = {}

    def power(k: int, e: int) -> QtRat:
        key = (k, e)
        if key not in cache:
            cache[key] = gens[k] ** e
        return cache[key]

    for e, c in terms.items():
        term = QtRat(QtPoly.const(c))
        for k in range(3):
            if e[k]:
                term = term * power(k, e[k])
        total = total + term
    if total.den.is_constant() and total.den.constant_term() == 1:
        return total.num
    return total


def _as_poly(x):
    if isinstance(x, QtPoly):
        return x
    if isinstance(x, int):
        return QtPoly.const(x)
    return NotImplemented


q = QtPoly.monomial(1, 0, 0)
t = QtPoly.monomial(0, 1, 0)
u = QtPoly.monomial(0, 0, 1)
ONE = QtPoly.const(1)
ZERO = QtPoly()


# -- flint bridge ---------------------------------------------------------

def _to_flint(p: QtPoly, shift: Exp = (0, 0, 0)):
    return _FLINT_CTX.from_dict(
        {(e[0] - shift[0], e[1] - shift[1], e[2] - shift[2]): c for e, c in p.items()}
    )


def _from_flint(f, shift: Exp = (0, 0, 0)) -> QtPoly:
    return QtPoly._raw(
        {
            (int(e[0]) + shift[0], int(e[1]) + shift[1], int(e[2]) + shift[2]): int(c)
            for e, c in f.to_dict().items()
            if c
        }
    )


def poly_gcd(a: QtPoly, b: QtPoly) -> QtPoly:
    """Gcd of the polynomial parts of a and b (monomial factors dropped)."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    g = _to_flint(a, a.min_exponents()).gcd(_to_flint(b, b.min_exponents()))
    return _from_flint(g)


def exact_div(a: QtPoly, b: QtPoly) -> QtPoly:
    """a / b when b divides a exactly in the Laurent ring; raises otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return QtPoly()
    if b.is_monomial():
        ((e, c),) = b.items()
        out = {}
        for ea, ca in a.items():
            qq, r = divmod(ca, c)
            if r:
                raise ArithmeticError("inexact division")
            out[(ea[0] - e[0], ea[1] - e[1], ea[2] - e[2])] = qq
        return QtPoly._raw(out)
    sa, sb = a.min_exponents(), b.min_exponents()
    fq, fr = divmod(_to_flint(a, sa), _to_flint(b, sb))
    if not fr.is_zero():
        raise ArithmeticError("inexact division")
    return _from_flint(fq, (sa[0] - sb[0], sa[1] - sb[1], sa[2] - sb[2]))


# -- rational functions ---------------------------------------------------

class QtRat:
    """num/den in canonical form (see :func:`normalize`).  Immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, *, _canonical: bool = False):
        num = num if isinstance(num, QtPoly) else QtPoly.const(int(num))
        den = den if isinstance(den, QtPoly) else QtPoly.const(int(den))
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = _canonical_pair(num, den)

    @classmethod
    def zero(cls) -> "QtRat":
        return cls(ZERO, ONE, _canonical=True)

    @classmethod
    def one(cls) -> "QtRat":
        return cls(ONE, ONE, _canonical=True)

    @classmethod
    def from_fraction(cls, f: Fraction | int) -> "QtRat":
        f = Fraction(f)
        return cls(QtPoly.const(f.numerator), QtPoly.const(f.denominator), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> QtPoly:
        if self.den != ONE:
            raise ArithmeticError(f"not a Laurent polynomial: {self}")
        return self.num

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ArithmeticError(f"not a constant: {self}")
        return Fraction(self.num.constant_term(), self.den.constant_term())

    def __add__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return QtRat(self.num + other.num, self.den)
        return QtRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QtRat":
        return QtRat(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return QtRat.zero()
        return QtRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("QtRat division by zero")
        return QtRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "QtRat":
        if k < 0:
            return QtRat.one() / (self ** (-k))
        return QtRat(self.num**k, self.den**k, _canonical=self.den == ONE)

    def __eq__(self, other) -> bool:
        other = _as_rat(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def evaluate(self, q=None, t=None, u=None):
        """Substitute values; raises ZeroDivisionError on a vanishing denominator."""
        n = self.num.evaluate(q=q, t=t, u=u)
        d = self.den.evaluate(q=q, t=t, u=u)
        if isinstance(d, (int, Fraction)):
            if d == 0:
                raise ZeroDivisionError("denominator vanishes at the substitution")
            if isinstance(n, (int, Fraction)):
                r = Fraction(n) / d
                return int(r) if r.denominator == 1 else r
        return _as_rat(n) / _as_rat(d)

    def substitute(self, **subs) -> "QtRat":
        return _as_rat(self.evaluate(**subs))

    def scale_exponents(self, k: int) -> "QtRat":
        return QtRat(self.num.scale_exponents(k), self.den.scale_exponents(k))

    def swap_qt(self) -> "QtRat":
        return QtRat(self.num.swap_qt(), self.den.swap_qt())

    def __str__(self) -> str:
        return render_rat(self)

    def __repr__(self) -> str:
        return f"QtRat({render_rat(self)!r})"


def _as_rat(x):
    if isinstance(x, QtRat):
        return x
    if isinstance(x, QtPoly):
        return QtRat(x, ONE, _canonical=True)
    if isinstance(x, int):
        return QtRat(QtPoly.const(x), ONE, _canonical=True)
    if isinstance(x, Fraction):
        return QtRat.from_fraction(x)
    return NotImplemented


def as_rat(x) -> QtRat:
    r = _as_rat(x)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {type(x).__name__} as QtRat")
    return r


def _canonical_pair(num: QtPoly, den: QtPoly) -> tuple[QtPoly, QtPoly]:
    if den.is_zero():
        raise ZeroDivisionError("QtRat with zero denominator")
    if num.is_zero():
        return ZERO, ONE
    # monomials are units: push den's monomial factor into num
    dmin = den.min_exponents()
    if dmin != (0, 0, 0):
        den = den.shift(-dmin[0], -dmin[1], -dmin[2])
        num = num.shift(-dmin[0], -dmin[1], -dmin[2])
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = exact_div(num, g)
            den = exact_div(den, g)
            dmin = den.min_exponents()
            if dmin != (0, 0, 0):
                den = den.shift(-dmin[0], -dmin[1], -dmin[2])
                num = num.shift(-dmin[0], -dmin[1], -dmin[2])
    c = gcd(num.content(), den.content())
    if den.leading()[1] < 0:
        c = -c
    if c != 1:
        num = QtPoly._raw({e: v // c for e, v in num.items()})
        den = QtPoly._raw({e: v // c for e, v in den.items()})
    return num, den


def normalize(r: QtRat) -> QtRat:
    """Canonical form: reduced, den free of monomial factors, positive leading coefficient."""
    return QtRat(r.num, r.den)


# -- q-analogs ------------------------------------------------------------

def pochhammer(z: QtPoly, base: QtPoly, k: int) -> QtPoly:
    """(z; base)_k = (1 - z)(1 - z base) ... (1 - z base^{k-1})."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = ONE
    zb = z
    for _ in range(k):
        out = out * (ONE - zb)
        zb = zb * base
    return out


def q_pochhammer(k: int) -> QtPoly:
    """(u; q)_k."""
    return pochhammer(u, q, k)


@lru_cache(maxsize=None)
def qq_pochhammer(k: int) -> QtPoly:
    """(q; q)_k."""
    return pochhammer(q, q, k)


def q_int(k: int, var: QtPoly = q) -> QtPoly:
    """[k] = 1 + var + ... + var^{k-1}."""
    out = ZERO
    p = ONE
    for _ in range(k):
        out = out + p
        p = p * var
    return out


def q_factorial(k: int, var: QtPoly = q) -> QtPoly:
    out = ONE
    for i in range(1, k + 1):
        out = out * q_int(i, var)
    return out


@lru_cache(maxsize=None)
def _q_binomial(n: int, k: int) -> QtPoly:
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    # Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    return _q_binomial(n - 1, k - 1) + _q_binomial(n - 1, k).shift(k, 0, 0)


def q_binomial(n: int, k: int, var: QtPoly = q) -> QtPoly:
    """Gaussian binomial [n choose k]; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("q_binomial needs nonnegative arguments")
    b = _q_binomial(n, k)
    if var == q:
        return b
    return b.evaluate(q=var)


def q_multinomial(n: int, ks: Iterable[int], var: QtPoly = q) -> QtPoly:
    ks = list(ks)
    if any(k < 0 for k in ks):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(ks) != n:
        raise ValueError(f"parts {ks} do not sum to {n}")
    out = ONE
    rest = n
    for k in ks:
        out = out * q_binomial(rest, k, var)
        rest -= k
    return out


# -- canonical text -------------------------------------------------------

def _monomial_str(e: Exp) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_poly(p: QtPoly) -> str:
    """Canonical rendering, terms in descending lex order of (eq, et, eu)."""
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(e)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def render_rat(r: QtRat) -> str:
    if r.den == ONE:
        return render_poly(r.num)
    num = render_poly(r.num)
    if len(r.num) > 1:
        num = f"({num})"
    return f"{num}/({render_poly(r.den)})"


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*((?:[qtu](?:\^-?\d+)?\*?)*)\s*")


def parse_poly(text: str) -> QtPoly:
    """Inverse of :func:`render_poly` (also accepts unsorted input)."""
    text = text.strip()
    if text == "0":
        return ZERO
    out: dict[Exp, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, coeff, mono = m.groups()
        if coeff is None and not mono:
            raise ValueError(f"empty term in {text!r}")
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        e = [0, 0, 0]
        for name, power in re.findall(r"([qtu])(?:\^(-?\d+))?", mono or ""):
            e[VARS.index(name)] += int(power) if power else 1
        key = tuple(e)
        out[key] = out.get(key, 0) + c  # type: ignore[index]
        pos = m.end()
    return QtPoly(out)


def parse_rat(text: str) -> QtRat:
    text = text.strip()
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            num = text[:i].strip()
            den = text[i + 1 :].strip()
            return QtRat(parse_poly(num.strip("()")), parse_poly(den.strip("()")))
    return QtRat(parse_poly(text))


Scalar = Union[int, Fraction, QtPoly, QtRat]
