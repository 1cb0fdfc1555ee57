"""Truncated solutions of the (localized) KZ fixed-point equation around 0.

Coefficients live in Q(xi_N)((z))[log z], truncated at z-degree D.  Letter
conventions (``convention="positive"``, the default):

    e_0          <->  dz/z               e_0'         <->  z d/dz
    e_{xi^j}     <->  dz/(xi^j - z)      e_{xi^j}'    <->  (xi^j - z) d/dz

so that the solution's coefficients are the positive polylogarithm series.
``convention="native"`` uses dz/(z - xi^j) and (z - xi^j) d/dz instead.
Primitives are taken from the tangential base point at 0: constants of
integration vanish and dz/z integrates z^0 log^j z to log^{j+1} z / (j+1).
"""
from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from math import factorial

from .cyclo import CycloNum, as_cyclo, format_cyclo, root_of_unity
from .words import E0, Letter, Word, all_words, alphabet, shuffle

CONVENTIONS = ("positive", "native")


class ZLogPoly:
    """Finite sum of c * z^k * log(z)^j with k possibly negative."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms = {k: as_cyclo(N, v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, N: int, c=1) -> ZLogPoly:
        return cls(N, {(0, 0): c})

    def __add__(self, other: ZLogPoly) -> ZLogPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return ZLogPoly(self.N, out)

    def __sub__(self, other: ZLogPoly) -> ZLogPoly:
        return self + other.scale(-1)

    def scale(self, c) -> ZLogPoly:
        return ZLogPoly(self.N, {k: v * c for k, v in self.terms.items()})

    def mul(self, other: ZLogPoly, D: int) -> ZLogPoly:
        out: dict = {}
        for (k1, j1), v1 in self.terms.items():
            for (k2, j2), v2 in other.terms.items():
                if k1 + k2 > D:
                    continue
                key = (k1 + k2, j1 + j2)
                out[key] = out[key] + v1 * v2 if key in out else v1 * v2
        return ZLogPoly(self.N, out)

    def truncate(self, D: int) -> ZLogPoly:
        return ZLogPoly(self.N, {k: v for k, v in self.terms.items() if k[0] <= D})

    def coefficient(self, k: int, j: int = 0) -> CycloNum:
        return self.terms.get((k, j), CycloNum.zero(self.N))

    def min_degree(self) -> int:
        return min((k for k, _ in self.terms), default=0)

    def max_log(self) -> int:
        return max((j for _, j in self.terms), default=0)

    def agrees(self, other: ZLogPoly, D: int) -> bool:
        """Equality of all terms of z-degree <= D."""
        keys = {k for k in self.terms if k[0] <= D} | {k for k in other.terms if k[0] <= D}
        return all(self.coefficient(*k) == other.coefficient(*k) for k in keys)

    def __eq__(self, other):
        return isinstance(other, ZLogPoly) and self.N == other.N and self.terms == other.terms

    def records(self) -> list[tuple[int, int, str]]:
        return [(k, j, format_cyclo(v)) for (k, j), v in sorted(self.terms.items())]

    def __repr__(self):
        return f"ZLogPoly({self.records()})"

    # -- calculus ---------------------------------------------------------

    def z_ddz(self) -> ZLogPoly:
        """z d/dz: z^k log^j -> k z^k log^j + j z^k log^{j-1}."""
        out: dict = {}
        for (k, j), v in self.terms.items():
            if k:
                out[(k, j)] = out.get((k, j), 0) + v * k
            if j:
                out[(k, j - 1)] = out.get((k, j - 1), 0) + v * j
        return ZLogPoly(self.N, out)

    def ddz(self) -> ZLogPoly:
        out: dict = {}
        for (k, j), v in self.terms.items():
            if k:
                out[(k - 1, j)] = out.get((k - 1, j), 0) + v * k
            if j:
                out[(k - 1, j - 1)] = out.get((k - 1, j - 1), 0) + v * j
        return ZLogPoly(self.N, out)

    def shift_z(self, s: int) -> ZLogPoly:
        return ZLogPoly(self.N, {(k + s, j): v for (k, j), v in self.terms.items()})


def _primitive(a: int, j: int, N: int) -> dict:
    """Regularized primitive of z^a log^j z as {(k, j'): coeff}."""
    if a == -1:
        return {(0, j + 1): Fraction(1, j + 1)}
    out = {}
    b = Fraction(a + 1)
    for i in range(j + 1):
        out[(a + 1, j - i)] = Fraction((-1) ** i * factorial(j) // factorial(j - i)) / b ** (i + 1)
    return out


def integrate(f: ZLogPoly, D: int) -> ZLogPoly:
    """Primitive of f(z) dz from the tangential base point, truncated at degree D."""
    out: dict = {}
    for (k, j), v in f.terms.items():
        if k + 1 > D:
            continue
        for key, c in _primitive(k, j, f.N).items():
            out[key] = out[key] + v * c if key in out else v * c
    return ZLogPoly(f.N, out)


def divide_by_root_minus_z(f: ZLogPoly, r: int, D: int) -> ZLogPoly:
    """Expansion of f / (xi^r - z) as a series in z, up to degree D."""
    N = f.N
    if not f.terms:
        return f
    inv = root_of_unity(N, -r)
    lo = f.min_degree()
    out: dict = {}
    for j in range(f.max_log() + 1):
        g = CycloNum.zero(N)
        for k in range(lo, D + 1):
            g = (f.coefficient(k, j) + g) * inv
            if g != 0:
                out[(k, j)] = g
    return ZLogPoly(N, out)


def apply_letter(letter: Letter, f: ZLogPoly, D: int, convention: str = "positive") -> ZLogPoly:
    """Coefficient of letter * w given the coefficient f of w."""
    N = f.N
    sign = 1 if convention == "positive" else -1
    if letter.root is None:
        if letter.inv:
            return f.z_ddz().truncate(D)
        return integrate(f.shift_z(-1), D)
    if letter.inv:
        # sign * (xi^r - z) d/dz
        df = f.ddz()
        val = df.scale(root_of_unity(N, letter.root)) - df.shift_z(1)
        return val.scale(sign).truncate(D)
    return integrate(divide_by_root_minus_z(f, letter.root, D), D).scale(sign)


class NCSeries(Mapping):
    """Word -> ZLogPoly, truncated at weight W and z-degree D."""

    def __init__(self, N: int, W: int, D: int, coeffs: dict | None = None, convention: str = "positive"):
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        self.N, self.W, self.D, self.convention = N, W, D, convention
        self._c = {w: f for w, f in (coeffs or {}).items() if f.terms and len(w) <= W}

    def __getitem__(self, w: Word) -> ZLogPoly:
        return self._c.get(w, ZLogPoly(self.N))

    def __contains__(self, w):
        return w in self._c

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def coefficient(self, w: Word) -> ZLogPoly:
        return self[w]

    @classmethod
    def unit(cls, N: int, W: int, D: int, convention: str = "positive") -> NCSeries:
        return cls(N, W, D, {Word.empty(N): ZLogPoly.const(N)}, convention)


def _int_generic(L: NCSeries, letters) -> NCSeries:
    out = {Word.empty(L.N): L[Word.empty(L.N)]}
    for w, f in L.items():
        if len(w) >= L.W:
            continue
        for a in letters:
            g = apply_letter(a, f, L.D, L.convention)
            if g.terms:
                key = Word((a,) + w.letters, L.N)
                out[key] = out[key] + g if key in out else g
    return NCSeries(L.N, L.W, L.D, out, L.convention)


def int_kz(L: NCSeries) -> NCSeries:
    """Prepend each letter of e_0, e_{xi^j} by integrating against its form."""
    return _int_generic(L, alphabet(L.N))


def int_kz_loc(L: NCSeries) -> NCSeries:
    """int_kz plus the differential operators attached to the inverse letters."""
    return _int_generic(L, alphabet(L.N, localized=True))


def solve_kz(localized: bool = False, W: int = 4, D: int = 40, N: int = 1, convention: str = "positive") -> NCSeries:
    """Fixed point with empty-word coefficient 1.

    Each coefficient depends only on the coefficient of the word with its first
    letter removed, so words are filled in by increasing weight.  The result
    agrees with iterating the operator from exp(e_0 log z) W times.
    """
    if W < 1 or D < 1:
        raise ValueError("W and D must be positive")
    letters = alphabet(N, localized)
    coeffs = {Word.empty(N): ZLogPoly.const(N)}
    layer = [Word.empty(N)]
    for _ in range(W):
        nxt = []
        for w in layer:
            f = coeffs[w]
            for a in letters:
                g = apply_letter(a, f, D, convention)
                if g.terms:
                    key = Word((a,) + w.letters, N)
                    coeffs[key] = g
                    nxt.append(key)
        layer = nxt
    return NCSeries(N, W, D, coeffs, convention)


def initial_series(N: int, W: int, D: int, convention: str = "positive") -> NCSeries:
    """exp(e_0 log z): e_0^k has coefficient log(z)^k / k!."""
    coeffs = {}
    for k in range(W + 1):
        coeffs[Word((E0,) * k, N)] = ZLogPoly(N, {(0, k): Fraction(1, factorial(k))})
    return NCSeries(N, W, D, coeffs, convention)


def iterate_kz(localized: bool = False, W: int = 4, D: int = 40, N: int = 1, convention: str = "positive") -> NCSeries:
    """Plain fixed-point iteration from exp(e_0 log z); stabilizes after W + 1 steps."""
    op = int_kz_loc if localized else int_kz
    L = initial_series(N, W, D, convention)
    for _ in range(W + 1):
        L = op(L)
    return L


def valid_degree(w: Word, D: int) -> int:
    """z-degree up to which the truncated coefficient of w is exact."""
    return D - sum(1 for a in w.letters if a.inv and a.root is not None)


def fixed_point_residual(L: NCSeries, localized: bool, margin: int | None = None) -> list[Word]:
    """Words whose coefficient changes under one more application of the operator."""
    op = int_kz_loc if localized else int_kz
    image = op(L)
    margin = L.W if margin is None else margin
    bad = []
    for w in set(L) | set(image):
        if not image[w].agrees(L[w], valid_degree(w, L.D) - margin):
            bad.append(w)
    return bad


def shuffle_defect(L: NCSeries, u: Word, v: Word) -> tuple[ZLogPoly, ZLogPoly]:
    """Both sides of L[u sh v] = L[u] L[v]."""
    lhs = ZLogPoly(L.N)
    for w, c in shuffle(u, v).items():
        lhs = lhs + L[w].scale(c)
    return lhs, L[u].mul(L[v], L.D)


def words_up_to(N: int, W: int, localized: bool = False):
    return all_words(alphabet(N, localized), W, N)
