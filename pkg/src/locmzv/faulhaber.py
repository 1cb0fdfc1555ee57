"""Generalized polynomials sum c * xi^{chi m} * m^delta and the power-sum engine.

``antiderivative`` is the workhorse: for f a PolyExp it returns F with
F(y) = sum_{0 <= x < y} f(x), using Faulhaber polynomials for trivial characters
and the twisted closed form T^y P(y) - P(0) otherwise.  Two-boundary coefficients
(``bcoeff``) are assembled from it by induction on depth.
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

from .bernoulli import bernoulli, cache_dir
from .cyclo import CycloNum, as_cyclo, format_cyclo, root_of_unity


def _fmt_coeff(c: CycloNum) -> str:
    return format_cyclo(c)


class PolyExp:
    """Finite sum of c * xi^{chi m} * m^delta, keyed by (chi mod N, delta).

    delta may be negative (Laurent terms) but such terms cannot be summed.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        d: dict = {}
        if terms:
            pairs = terms.items() if isinstance(terms, dict) else terms
            for (chi, delta), c in pairs:
                key = (chi % N, delta)
                d[key] = d.get(key, 0) + c
        self.terms = {k: as_cyclo(N, v) for k, v in d.items() if v != 0}

    @classmethod
    def const(cls, N: int, c=1) -> PolyExp:
        return cls(N, {(0, 0): c})

    @classmethod
    def monomial(cls, N: int, chi: int = 0, delta: int = 0, c=1) -> PolyExp:
        return cls(N, {(chi, delta): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, PolyExp):
            other = PolyExp.const(self.N, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return PolyExp(self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, PolyExp):
            other = PolyExp.const(self.N, other)
        return self + (-other)

    def scale(self, c) -> PolyExp:
        return PolyExp(self.N, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyExp):
            return self.scale(other)
        out: dict = {}
        for (c1, d1), v1 in self.terms.items():
            for (c2, d2), v2 in other.terms.items():
                k = ((c1 + c2) % self.N, d1 + d2)
                out[k] = out[k] + v1 * v2 if k in out else v1 * v2
        return PolyExp(self.N, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PolyExp):
            return self.N == other.N and self.terms == other.terms
        return self == PolyExp.const(self.N, other)

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def evaluate(self, m: int) -> CycloNum:
        total = CycloNum.zero(self.N)
        for (chi, delta), c in self.terms.items():
            total = total + c * root_of_unity(self.N, chi * m) * Fraction(m) ** delta
        return total

    def shift(self, s: int) -> PolyExp:
        """The function m -> f(m + s)."""
        out: dict = {}
        for (chi, delta), c in self.terms.items():
            if delta < 0:
                raise ValueError("cannot shift a Laurent term")
            c = c * root_of_unity(self.N, chi * s)
            for k in range(delta + 1):
                key = (chi, k)
                v = c * comb(delta, k) * s ** (delta - k)
                out[key] = out[key] + v if key in out else v
        return PolyExp(self.N, out)

    def degree(self) -> int:
        return max((d for _, d in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (chi, delta), c in sorted(self.terms.items()):
            factors = []
            if chi:
                factors.append(f"xi^({chi}m)")
            if delta == 1:
                factors.append("m")
            elif delta:
                factors.append(f"m^{delta}")
            body = "*".join(factors)
            cs = _fmt_coeff(c)
            if not body:
                parts.append(cs)
            elif cs == "1":
                parts.append(body)
            else:
                parts.append(f"({cs})*{body}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_records(self) -> list[list[str]]:
        return [[str(chi), str(delta), _fmt_coeff(c)] for (chi, delta), c in sorted(self.terms.items())]


class PolyExp2:
    """Functions of (m, m') as sums of c * xi^{chi m} m^delta * xi^{chi' m'} m'^delta'."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        d: dict = {}
        for ((a, da), (b, db)), c in (terms or {}).items():
            key = ((a % N, da), (b % N, db))
            d[key] = d.get(key, 0) + c
        self.terms = {k: as_cyclo(N, v) for k, v in d.items() if v != 0}

    @classmethod
    def outer(cls, f: PolyExp, g: PolyExp) -> PolyExp2:
        """(m, m') -> f(m) g(m')."""
        return cls(f.N, {(k1, k2): v1 * v2 for k1, v1 in f.terms.items() for k2, v2 in g.terms.items()})

    def __add__(self, other: PolyExp2) -> PolyExp2:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return PolyExp2(self.N, out)

    def __sub__(self, other: PolyExp2) -> PolyExp2:
        return self + PolyExp2(self.N, {k: -v for k, v in other.terms.items()})

    def __eq__(self, other):
        return isinstance(other, PolyExp2) and self.terms == other.terms

    def evaluate(self, m: int, m2: int) -> CycloNum:
        total = CycloNum.zero(self.N)
        N = self.N
        for ((a, da), (b, db)), c in self.terms.items():
            total = total + c * root_of_unity(N, a * m + b * m2) * Fraction(m) ** da * Fraction(m2) ** db
        return total

    def left(self) -> dict:
        """Group as {(chi', delta'): PolyExp in m}."""
        out: dict = {}
        for (k1, k2), c in self.terms.items():
            out.setdefault(k2, {})[k1] = c
        return {k: PolyExp(self.N, v) for k, v in out.items()}

    def to_records(self) -> list[list[str]]:
        return [
            [str(a), str(da), str(b), str(db), _fmt_coeff(c)]
            for ((a, da), (b, db)), c in sorted(self.terms.items())
        ]

    def __str__(self):
        return "; ".join(" ".join(r) for r in self.to_records()) or "0"


# -- power sums -------------------------------------------------------------


@lru_cache(maxsize=None)
def _faulhaber_coeffs(l: int) -> tuple[Fraction, ...]:
    # coefficient of m^delta, delta = 0..l+1
    out = [Fraction(0)] * (l + 2)
    for delta in range(1, l + 2):
        out[delta] = Fraction(comb(l + 1, delta), l + 1) * bernoulli(l + 1 - delta)
    return tuple(out)


def faulhaber_poly(l: int, N: int = 1) -> PolyExp:
    """sum_{x=0}^{m-1} x^l as a polynomial in m (0^0 = 1)."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return PolyExp(N, {(0, d): c for d, c in enumerate(_faulhaber_coeffs(l))})


@lru_cache(maxsize=None)
def _twisted_coeffs(l: int, chi: int, N: int) -> tuple[CycloNum, ...]:
    # P with T P(y+1) - P(y) = y^l; solved from the top coefficient down
    T = root_of_unity(N, chi)
    inv = (T - 1).inverse()
    a = [CycloNum.zero(N)] * (l + 1)
    for i in range(l, -1, -1):
        rhs = CycloNum.one(N) if i == l else CycloNum.zero(N)
        acc = CycloNum.zero(N)
        for k in range(i + 1, l + 1):
            acc = acc + a[k] * comb(k, i)
        a[i] = (rhs - T * acc) * inv
    return tuple(a)


def twisted_power_sum(l: int, chi: int, N: int) -> PolyExp:
    """sum_{x=0}^{m-1} x^l xi^{chi x} for xi^chi != 1, as T^m P(m) - P(0)."""
    if chi % N == 0:
        raise ValueError("trivial character: use faulhaber_poly")
    if l < 0:
        raise ValueError("l must be non-negative")
    a = _twisted_coeffs(l, chi % N, N)
    terms = {(chi, i): c for i, c in enumerate(a)}
    terms[(0, 0)] = -a[0]
    return PolyExp(N, terms)


def power_sum(l: int, chi: int, N: int) -> PolyExp:
    return faulhaber_poly(l, N) if chi % N == 0 else twisted_power_sum(l, chi, N)


def antiderivative(f: PolyExp) -> PolyExp:
    """F with F(y) = sum_{0 <= x < y} f(x)."""
    out = PolyExp(f.N)
    for (chi, delta), c in f.terms.items():
        if delta < 0:
            raise ValueError("cannot sum a Laurent term from 0")
        out = out + power_sum(delta, chi, f.N).scale(c)
    return out


# -- two-boundary coefficients --------------------------------------------


def bcoeff(exponents, characters, N: int = 1) -> PolyExp2:
    """Expansion of sum_{m < m_1 < ... < m_d < m'} prod xi^{c_i m_i} m_i^{l_i} in (m, m').

    ``characters`` lists c_i, the root of unity exponent attached to position i.
    """
    ls = tuple(exponents)
    cs = tuple(c % N for c in characters)
    if len(ls) != len(cs) or not ls:
        raise ValueError("need d >= 1 exponents and matching characters")
    if any(l < 0 for l in ls):
        raise ValueError("exponents must be non-negative")
    return _bcoeff(ls, cs, N)


@lru_cache(maxsize=None)
def _bcoeff(ls: tuple, cs: tuple, N: int) -> PolyExp2:
    # current: dict (chi', delta') -> PolyExp in m, meaning sum over terms A(m) * m'-monomial
    current = {(0, 0): PolyExp.const(N)}
    for l, c in zip(ls, cs):
        # the previous level is a function of (m, x); sum over m < x < y
        nxt: dict = {}
        weight = PolyExp.monomial(N, c, l)
        for key, A in current.items():
            F = antiderivative(PolyExp.monomial(N, *key) * weight)
            upper = F  # F(y)
            lower = F.shift(1)  # F(m+1)
            for k, v in upper.terms.items():
                nxt[k] = nxt.get(k, PolyExp(N)) + A.scale(v)
            nxt[(0, 0)] = nxt.get((0, 0), PolyExp(N)) - A * lower
        current = nxt
    out: dict = {}
    for k2, A in current.items():
        for k1, v in A.terms.items():
            out[(k1, k2)] = v
    return PolyExp2(N, out)


def bcoeff_literal(exponents, characters, N: int, m: int, m2: int) -> CycloNum:
    """Direct nested sum, the reference for ``bcoeff``."""
    from itertools import combinations

    total = CycloNum.zero(N)
    for t in combinations(range(m + 1, m2), len(exponents)):
        term = CycloNum.one(N)
        for x, l, c in zip(t, exponents, characters):
            term = term * root_of_unity(N, c * x) * x**l
        total = total + term
    return total


def dump_bcoeff_table(N: int, max_l: int, max_depth: int, directory: str | os.PathLike | None = None) -> Path:
    """Write ``bcoeff_N<k>.json`` with every exponent/character tuple in range."""
    from itertools import product

    base = Path(directory) if directory is not None else (cache_dir() or Path.cwd())
    base.mkdir(parents=True, exist_ok=True)
    table = {}
    for d in range(1, max_depth + 1):
        for ls in product(range(max_l + 1), repeat=d):
            for cs in product(range(N), repeat=d):
                key = f"{','.join(map(str, ls))}|{','.join(map(str, cs))}"
                table[key] = bcoeff(ls, cs, N).to_records()
    path = base / f"bcoeff_N{N}.json"
    fd, tmp = tempfile.mkstemp(dir=base, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(table, fh, indent=1, sort_keys=True)
    os.replace(tmp, path)
    return path
