"""Precision-tracked p-adic numbers and Teichmueller roots of unity."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloNum


class UnsupportedLevelError(ValueError):
    """Raised when xi_N has no embedding in Z_p at desk scale (N does not divide p-1)."""


class PrecisionError(ArithmeticError):
    pass


def vp(x, p: int) -> int | float:
    """p-adic valuation of an integer or Fraction; +inf for zero."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class PadicNum:
    """p^val * unit, known modulo p^prec (absolute precision).

    A value indistinguishable from zero at its precision has ``val = None``.
    """

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val: int | None, unit: int, prec: int):
        self.p = p
        self.prec = prec
        if val is None or val >= prec:
            self.val, self.unit = None, 0
            return
        rel = prec - val
        unit %= p**rel
        if unit % p == 0:
            # renormalise a non-unit mantissa
            if unit == 0:
                self.val, self.unit = None, 0
                return
            shift = 0
            while unit % p == 0:
                unit //= p
                shift += 1
            val += shift
            if val >= prec:
                self.val, self.unit = None, 0
                return
            unit %= p ** (prec - val)
        self.val, self.unit = val, unit

    @classmethod
    def from_rational(cls, p: int, q, prec: int) -> PadicNum:
        q = Fraction(q)
        if q == 0:
            return cls(p, None, 0, prec)
        v = vp(q, p)
        if v >= prec:
            return cls(p, None, 0, prec)
        n, d = q.numerator, q.denominator
        if v > 0:
            n //= p**v
        elif v < 0:
            d //= p ** (-v)
        mod = p ** (prec - v)
        return cls(p, v, n * pow(d, -1, mod) % mod, prec)

    @classmethod
    def zero(cls, p: int, prec: int) -> PadicNum:
        return cls(p, None, 0, prec)

    def is_zero(self) -> bool:
        return self.val is None

    @property
    def valuation(self) -> int | float:
        return float("inf") if self.val is None else self.val

    def residue(self) -> int:
        """Representative in [0, p^prec) (requires non-negative valuation)."""
        if self.val is None:
            return 0
        if self.val < 0:
            raise PrecisionError("value is not integral")
        return self.unit * self.p**self.val % self.p**self.prec

    def _check(self, other: PadicNum) -> None:
        if other.p != self.p:
            raise ValueError("mixed primes")

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            # exact scalars carry unbounded precision
            return PadicNum.from_rational(self.p, other, max(self.prec, 0) + 64 + _vshift(other, self.p))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        if self.val is None:
            return PadicNum(self.p, o.val, o.unit, prec)
        if o.val is None:
            return PadicNum(self.p, self.val, self.unit, prec)
        v = min(self.val, o.val)
        x = self.unit * self.p ** (self.val - v) + o.unit * self.p ** (o.val - v)
        return PadicNum(self.p, v, x, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.val is None:
            return self
        return PadicNum(self.p, self.val, -self.unit, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        va, vb = self.valuation, o.valuation
        prec = min(self.prec + (vb if vb != float("inf") else o.prec),
                   o.prec + (va if va != float("inf") else self.prec))
        if self.val is None or o.val is None:
            return PadicNum(self.p, None, 0, int(prec))
        return PadicNum(self.p, self.val + o.val, self.unit * o.unit, int(prec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.val is None:
            raise ZeroDivisionError("division by a p-adic zero")
        rel_o = o.prec - o.val
        inv = PadicNum(self.p, -o.val, pow(o.unit, -1, self.p**rel_o), rel_o - o.val)
        return self * inv

    def shift(self, k: int) -> PadicNum:
        """Multiply by p^k (precision shifts with the value)."""
        if self.val is None:
            return PadicNum(self.p, None, 0, self.prec + k)
        return PadicNum(self.p, self.val + k, self.unit, self.prec + k)

    def __pow__(self, k: int):
        result = PadicNum.from_rational(self.p, 1, self.prec)
        base = self
        if k < 0:
            base = PadicNum.from_rational(self.p, 1, self.prec) / self
            k = -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def congruent(self, other, modulus_exp: int) -> bool:
        """True when self - other has valuation >= modulus_exp."""
        diff = self - other
        if diff.prec < modulus_exp:
            raise PrecisionError(f"only known to O(p^{diff.prec}), asked mod p^{modulus_exp}")
        return diff.valuation >= modulus_exp

    def __eq__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        return (self.p, self.val, self.unit, self.prec) == (other.p, other.val, other.unit, other.prec)

    def __hash__(self):
        return hash((self.p, self.val, self.unit, self.prec))

    def digits(self) -> list[int]:
        """Base-p digits from p^val up to p^(prec-1)."""
        if self.val is None:
            return []
        out = []
        u = self.unit
        for _ in range(self.prec - self.val):
            out.append(u % self.p)
            u //= self.p
        return out

    def __str__(self):
        return format_padic(self)

    def __repr__(self):
        return f"PadicNum({self})"


def _vshift(x, p: int) -> int:
    v = vp(x, p)
    return 0 if v == float("inf") else max(v, 0)


def format_padic(x: PadicNum) -> str:
    """Digit string ``d0 + d1*p + ... + O(p^M)``."""
    p = x.p
    terms = []
    if x.val is not None:
        for k, d in enumerate(x.digits()):
            if not d:
                continue
            e = x.val + k
            if e == 0:
                terms.append(str(d))
            elif e == 1:
                terms.append(f"{d}*{p}")
            else:
                terms.append(f"{d}*{p}^{e}")
    terms.append(f"O({p}^{x.prec})")
    return " + ".join(terms)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^*."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)}
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root")


@lru_cache(maxsize=None)
def _teich_int(p: int, N: int, j: int, M: int) -> int:
    g = primitive_root(p)
    x = pow(g, (j % N) * ((p - 1) // N), p)
    mod = p**M
    # Newton on x^(p-1) - 1; quadratic convergence
    prec = 1
    while prec < M:
        prec = min(2 * prec, M)
        m = p**prec
        f = (pow(x, p - 1, m) - 1) % m
        df = (p - 1) * pow(x, p - 2, m) % m
        x = (x - f * pow(df, -1, m)) % m
    return x % mod


def teichmuller(p: int, N: int, j: int, M: int) -> PadicNum:
    """The N-th root of unity congruent to g^(j(p-1)/N) mod p, g the least primitive root."""
    if (p - 1) % N != 0:
        raise UnsupportedLevelError(f"N={N} does not divide p-1={p - 1}")
    return PadicNum.from_rational(p, _teich_int(p, N, j, M), M)


def embed_cyclo(x: CycloNum, p: int, M: int) -> PadicNum:
    """Image of x under xi_N -> teichmuller(p, N, 1), to absolute precision M."""
    N = x.N
    if x.is_rational():
        return PadicNum.from_rational(p, x.coeffs[0], M)
    if (p - 1) % N != 0:
        raise UnsupportedLevelError(f"N={N} does not divide p-1={p - 1}")
    denominators_v = min((vp(c, p) for c in x.coeffs if c), default=0)
    work = M + max(0, -int(denominators_v))
    w = _teich_int(p, N, 1, work)
    total = Fraction(0)
    mod = p**work
    power = 1
    for c in x.coeffs:
        if c:
            total += c * power
        power = power * w % mod
    return PadicNum.from_rational(p, total, M)


def padic_valuation(x, p: int, bound: int = 64) -> int | float:
    """Valuation of a rational or cyclotomic number (capped at ``bound`` for cyclotomic input)."""
    if isinstance(x, CycloNum):
        if x.is_rational():
            return vp(x.coeffs[0], p)
        return embed_cyclo(x, p, bound).valuation
    return vp(x, p)
