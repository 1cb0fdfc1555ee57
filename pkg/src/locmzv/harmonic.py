"""Multiple harmonic sums: strict, mixed strict/large domains, weighted.

Naive nested enumeration is kept as the reference evaluator (``mhs``,
``mhs_tilde``); ``domain_sum_table`` computes the same sums for every upper
bound at once by prefix sums and is what the sweeps use.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .cyclo import CycloNum, as_cyclo, root_of_unity
from .indices import SeriesIndex


@dataclass(frozen=True)
class SignData:
    sign_minus: frozenset[int]
    sign_plus: frozenset[int]
    components: tuple[tuple[int, int], ...]  # maximal runs [start, end] of sign_minus, 1-based

    @property
    def r(self) -> int:
        return len(self.components)

    def bounds(self) -> tuple[list[int], list[int]]:
        """I_k, J_k with component k = [I_k + 1, J_k - 1]; sentinels J_0 = 0, I_{r+1} = d + 1."""
        return [s - 1 for s, _ in self.components], [e + 1 for _, e in self.components]


def sign_data(a: SeriesIndex, zero_is_negative: bool = False) -> SignData:
    """Sign partition of an index; by default exponent 0 counts as non-negative."""
    minus = set()
    for i, n in enumerate(a.exponents, start=1):
        if n < 0 or (zero_is_negative and n == 0):
            minus.add(i)
    plus = set(range(1, a.depth + 1)) - minus
    comps = []
    for i in sorted(minus):
        if comps and comps[-1][1] == i - 1:
            comps[-1][1] = i
        else:
            comps.append([i, i])
    return SignData(frozenset(minus), frozenset(plus), tuple((s, e) for s, e in comps))


def tilde_gaps(a: SeriesIndex) -> tuple[bool, ...]:
    """Relation flags for the mixed domain; gaps[k] relates m_k and m_{k+1} (m_0 = 0).

    True means a large inequality.  The inequality entering a run of
    non-positive exponents is large (from 0 at a leading run); all others are strict.
    """
    neg = [n <= 0 for n in a.exponents]
    gaps = []
    for k in range(a.depth):
        entering = neg[k] and (k == 0 or not neg[k - 1])
        gaps.append(entering)
    return tuple(gaps)


def _weight(N: int, c: int, n: int, x: int):
    if x == 0:
        if n > 0:
            raise ZeroDivisionError("summation variable 0 at a positive exponent")
        return 1 if n == 0 else 0
    val = Fraction(x) ** (-n)
    if c % N == 0:
        return val
    return root_of_unity(N, c * x) * val


def _domain_tuples(m: int, gaps: tuple[bool, ...]):
    d = len(gaps)

    def rec(k: int, prev: int, acc: tuple):
        if k == d:
            yield acc
            return
        start = prev if gaps[k] else prev + 1
        for x in range(start, m):
            yield from rec(k + 1, x, acc + (x,))

    yield from rec(0, 0, ())


def domain_sum(m: int, exponents, chars, gaps, outer: int, N: int) -> CycloNum:
    """Naive sum over 0 <|<= m_1 <|<= ... < m of prod xi^{c_i m_i} m_i^{-n_i} * xi^{-outer m}."""
    total = CycloNum.zero(N)
    for t in _domain_tuples(m, tuple(gaps)):
        term = 1
        for x, n, c in zip(t, exponents, chars):
            term = term * _weight(N, c, n, x)
            if term == 0:
                break
        total = total + term
    return total * root_of_unity(N, -outer * m)


def mhs(m: int, a: SeriesIndex) -> CycloNum:
    """Strict-domain localized multiple harmonic sum, by direct enumeration."""
    if m < 1:
        raise ValueError("m must be positive")
    N = a.N
    chars = a.characters()
    total = CycloNum.zero(N)
    for t in combinations(range(1, m), a.depth):
        term = 1
        for x, n, c in zip(t, a.exponents, chars):
            term = term * _weight(N, c, n, x)
        total = total + term
    return total * root_of_unity(N, -a.outer * m)


def mhs_tilde(m: int, a: SeriesIndex) -> CycloNum:
    """Mixed strict/large domain sum (see ``tilde_gaps``), by direct enumeration."""
    if m < 1:
        raise ValueError("m must be positive")
    return domain_sum(m, a.exponents, a.characters(), tilde_gaps(a), a.outer, a.N)


def whar(m: int, a: SeriesIndex) -> CycloNum:
    """Weighted sum m^{n_1+...+n_d} h_m(a)."""
    return mhs(m, a) * Fraction(m) ** a.weight


# -- prefix-sum tables ------------------------------------------------------


def _unit_table(N: int, c: int, size: int):
    if c % N == 0:
        return [1] * size
    if N == 2:
        return [(-1) ** x for x in range(size)]
    return [root_of_unity(N, c * x) for x in range(size)]


def domain_sum_table(M: int, exponents, chars, gaps, outer: int, N: int) -> list:
    """Values of ``domain_sum`` for m = 0..M (entry 0 is the m = 0 value).

    Entries are Fractions when N <= 2 and CycloNum otherwise.
    """
    d = len(exponents)
    rational = N <= 2
    # f[x] = weighted count of chains ending with m_k = x
    f = None
    for k in range(d):
        units = _unit_table(N, chars[k], M)
        lo = 0 if gaps[k] else 1
        new = [0] * M
        if k == 0:
            acc_below = [1 if x >= lo else 0 for x in range(M)]
        else:
            acc_below = []
            run = 0
            for x in range(M):
                if gaps[k]:
                    run = run + f[x]
                    acc_below.append(run)
                else:
                    acc_below.append(run)
                    run = run + f[x]
        n = exponents[k]
        for x in range(M):
            s = acc_below[x]
            if s == 0:
                continue
            if x == 0:
                if n > 0:
                    raise ZeroDivisionError("summation variable 0 at a positive exponent")
                w = 1 if n == 0 else 0
            else:
                w = Fraction(x) ** (-n)
            if w:
                new[x] = s * units[x] * w
        f = new
    out = []
    run = 0
    outer_units = _unit_table(N, -outer, M + 1)
    for m in range(M + 1):
        base = 1 if d == 0 else run
        out.append(base * outer_units[m])
        if d and m < M:
            run = run + f[m]
    if rational:
        return [Fraction(v) if not isinstance(v, CycloNum) else v.to_fraction() for v in out]
    return [as_cyclo(N, v) if not isinstance(v, CycloNum) else v for v in out]


def mhs_table(M: int, a: SeriesIndex) -> list:
    """h_m(a) for m = 0..M (strict domain)."""
    return domain_sum_table(M, a.exponents, a.characters(), (False,) * a.depth, a.outer, a.N)


def mhs_tilde_table(M: int, a: SeriesIndex) -> list:
    return domain_sum_table(M, a.exponents, a.characters(), tilde_gaps(a), a.outer, a.N)


def har_table(M: int, a: SeriesIndex) -> list:
    h = mhs_table(M, a)
    return [h[m] * Fraction(m) ** a.weight if m else h[0] for m in range(M + 1)]


def _tilde_split(exps: tuple, chars: tuple, gaps: tuple, N: int, acc: dict, coeff: int) -> None:
    k = next((k for k, g in enumerate(gaps) if g), None)
    if k is None:
        key = (exps, chars)
        acc[key] = acc.get(key, 0) + coeff
        return
    _tilde_split(exps, chars, gaps[:k] + (False,) + gaps[k + 1 :], N, acc, coeff)
    if k == 0:
        # m_1 = 0 contributes 0^{-n_1}: 1 when n_1 = 0, else 0 (n_1 < 0 on this branch)
        if exps[0] > 0:
            raise ZeroDivisionError("summation variable 0 at a positive exponent")
        if exps[0] == 0:
            _tilde_split(exps[1:], chars[1:], gaps[1:], N, acc, coeff)
        return
    mexps = exps[: k - 1] + (exps[k - 1] + exps[k],) + exps[k + 1 :]
    mchars = chars[: k - 1] + ((chars[k - 1] + chars[k]) % N,) + chars[k + 1 :]
    _tilde_split(mexps, mchars, gaps[:k] + gaps[k + 1 :], N, acc, coeff)


def tilde_to_strict(a: SeriesIndex) -> dict:
    """{b: c} with mhs_tilde(m, a) = sum c * mhs(m, b) for all m; total weight is preserved."""
    acc: dict = {}
    _tilde_split(a.exponents, a.characters(), tilde_gaps(a), a.N, acc, 1)
    return {
        SeriesIndex.from_letters(tuple(zip(e, c)), a.outer, a.N): v
        for (e, c), v in acc.items()
        if v
    }


def scaled_mhs_table(M: int, a: SeriesIndex, K: int) -> list[int]:
    """Integers h_m(a) * lcm(1..M-1)^K for m = 0..M, for N <= 2.

    Needs K >= sum of the positive exponents so that every value is integral.
    Same sums as ``mhs_table``, evaluated in integer arithmetic for sweeps.
    """
    if a.N > 2:
        raise ValueError("integer tables need N <= 2")
    pos = sum(n for n in a.exponents if n > 0)
    if pos > K:
        raise ValueError(f"K={K} is below the positive weight {pos}")
    lam = lcm(*range(1, M)) if M > 1 else 1
    chars = a.characters()
    # f[x]: chains ending at m_k = x, scaled by lam^(positive exponents so far)
    f = None
    for k, n in enumerate(a.exponents):
        sign = chars[k] % 2 == 1
        new = [0] * M
        run = 1 if k == 0 else 0
        for x in range(1, M):
            if k:
                run += f[x - 1]
            if run:
                w = lam**n // x**n if n > 0 else x ** (-n)
                v = run * w
                new[x] = -v if sign and x % 2 else v
        f = new
    rest = lam ** (K - pos)
    out = []
    run = 0 if a.depth else 1
    flip = a.outer % 2 == 1
    for m in range(M + 1):
        v = run * rest
        out.append(-v if flip and m % 2 else v)
        if a.depth and m < M:
            run += f[m]
    return out
