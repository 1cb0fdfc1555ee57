"""Exact arithmetic in the cyclotomic field Q(xi_N) = Q[x]/(Phi_N(x))."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for k, d in enumerate(den):
                num[i + k] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    if N < 1:
        raise ValueError("level must be positive")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def euler_phi(N: int) -> int:
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _power_table(N: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_N for k = 0 .. max(N, 2*phi) - 1, as integer vectors."""
    phi = cyclotomic_poly(N)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(max(N, 2 * deg)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


class CycloNum:
    """Element of Q(xi_N) in the power basis 1, xi, ..., xi^(phi(N)-1).

    Instances are immutable. Integers and Fractions coerce automatically.
    """

    __slots__ = ("N", "coeffs", "_hash")

    def __init__(self, N: int, coeffs):
        self.N = N
        c = tuple(x if isinstance(x, Fraction) else Fraction(x) for x in coeffs)
        deg = len(cyclotomic_poly(N)) - 1
        if len(c) != deg:
            raise ValueError(f"expected {deg} coefficients for level {N}, got {len(c)}")
        self.coeffs = c
        self._hash = None

    @classmethod
    def _raw(cls, N: int, coeffs: tuple) -> CycloNum:
        obj = object.__new__(cls)
        obj.N = N
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, N: int, q) -> CycloNum:
        deg = euler_phi(N)
        return cls._raw(N, (Fraction(q),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def zero(cls, N: int) -> CycloNum:
        return cls.from_rational(N, 0)

    @classmethod
    def one(cls, N: int) -> CycloNum:
        return cls.from_rational(N, 1)

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> CycloNum | None:
        if isinstance(other, CycloNum):
            if other.N != self.N:
                raise ValueError(f"level mismatch: {self.N} vs {other.N}")
            return other
        if isinstance(other, (int, Rational)):
            return CycloNum.from_rational(self.N, Fraction(other))
        return None

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum._raw(self.N, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.N, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloNum._raw(self.N, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.N, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        deg = len(a)
        if deg == 1:
            return CycloNum._raw(self.N, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        table = _power_table(self.N)
        out = list(prod[:deg])
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += c * t
        return CycloNum._raw(self.N, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(xi)")
        deg = len(self.coeffs)
        if deg == 1:
            return CycloNum._raw(self.N, (1 / self.coeffs[0],))
        # columns: self * xi^k; solve M y = e_0
        cols = []
        basis = root_of_unity(self.N, 0)
        xi = root_of_unity(self.N, 1)
        for _ in range(deg):
            cols.append((self * basis).coeffs)
            basis = basis * xi
        rows = [[cols[k][i] for k in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if rows[r][c] != 0)
            rows[c], rows[piv] = rows[piv], rows[c]
            pv = rows[c][c]
            rows[c] = [x / pv for x in rows[c]]
            for r in range(deg):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return CycloNum._raw(self.N, tuple(rows[i][deg] for i in range(deg)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.N, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.one(self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.N == other.N and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.N, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"CycloNum({self.N}, {str(self)!r})"

    def __str__(self):
        return format_cyclo(self)


def format_cyclo(x: CycloNum, var: str = "xi") -> str:
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


@lru_cache(maxsize=None)
def root_of_unity(N: int, j: int) -> CycloNum:
    """xi_N^j as a field element."""
    if N < 1:
        raise ValueError("level must be positive")
    deg = euler_phi(N)
    return CycloNum._raw(N, tuple(Fraction(t) for t in _power_table(N)[j % N][:deg]))


cyclo_embed_root = root_of_unity


def as_cyclo(N: int, x) -> CycloNum:
    if isinstance(x, CycloNum):
        if x.N != N:
            raise ValueError(f"level mismatch: {x.N} vs {N}")
        return x
    return CycloNum.from_rational(N, x)
