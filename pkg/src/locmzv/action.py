"""Expansion of har_{q m} (q = p^alpha) in terms of m, har_m and harmonic sums at q.

Every summation variable is split as m_i = q u_i + r_i with 0 <= r_i < q.
Positions with r_i = 0 keep the factor (q u_i)^{-n_i}; the others are expanded
with the binomial series

    m_i^{-n_i} = sum_l C(-n_i, l) q^l u_i^l r_i^{-n_i-l},

which is finite for n_i <= 0 and truncated at total order L otherwise.  Runs
of r-positions sharing one u form blocks: the r-sums of a block give a
harmonic sum at q, and the remaining sums over u are domain sums reduced to
proper harmonic sums of m by ``reduce_domain``.

Adjoint values are the coefficients of xi^{jm} m^l har_m(empty) in the result.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .bernoulli import bernoulli
from .cyclo import CycloNum, as_cyclo
from .faulhaber import PolyExp
from .harmonic import domain_sum_table, har_table, tilde_to_strict
from .indices import AdjointIndex, SeriesIndex
from .localization import reduce_domain
from .padic import PadicNum, UnsupportedLevelError, embed_cyclo, is_prime, vp


class UnsupportedDepthError(ValueError):
    pass


class TruncationCertificateError(ArithmeticError):
    pass


MAX_DEPTH = 2
_L_CAP = 400


@dataclass(frozen=True)
class HarmonicEnv:
    """p, alpha, level N (N | p - 1), target precision M, optional truncation L."""

    p: int
    alpha: int = 1
    N: int = 1
    M: int = 6
    L: int | None = None
    m_max: int = 10

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.alpha < 1:
            raise ValueError("alpha must be positive")
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.N > 1 and (self.p - 1) % self.N != 0:
            raise UnsupportedLevelError(f"N={self.N} does not divide p-1={self.p - 1}")
        if self.L is not None and self.L < 0:
            raise ValueError("L must be non-negative")

    @property
    def q(self) -> int:
        return self.p**self.alpha

    def with_(self, **kw) -> HarmonicEnv:
        params = dict(p=self.p, alpha=self.alpha, N=self.N, M=self.M, L=self.L, m_max=self.m_max)
        params.update(kw)
        return HarmonicEnv(**params)


def gen_binomial(a: int, l: int) -> Fraction:
    """C(a, l) for any integer a and l >= 0; zero for l < 0."""
    if l < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(l):
        out = out * (a - i) / (i + 1)
    return out


def _floor_log(p: int, x: int) -> int:
    k = 0
    while x >= p:
        x //= p
        k += 1
    return k


# -- tail certificates ----------------------------------------------------


@dataclass(frozen=True)
class TailCertificate:
    L: int
    M: int
    evaluation_bound: float  # valuation bound for the discarded tail at every m <= m_max
    coefficient_bound: float  # valuation bound for the discarded tail of each coefficient
    block_bound_checked: bool  # assumed valuation bound on harmonic sums at q held on every computed block

    def achieved(self, kind: str = "evaluation") -> float:
        return self.evaluation_bound if kind == "evaluation" else self.coefficient_bound


def _max_order(exps, utype) -> float:
    """Largest total binomial order available outside the u-type positions."""
    total = 0
    for n, u in zip(exps, utype):
        if u:
            continue
        if n > 0:
            return float("inf")
        total += -n
    return total


def _term_bound(env: HarmonicEnv, exps, utype, s: int, m: int | None) -> float:
    """Valuation lower bound for one discarded term of total order s.

    m given: bound on its value at m; m None: bound on its coefficients.
    """
    p, a = env.p, env.alpha
    d = len(exps)
    weight = sum(exps)
    pos = sum(max(n, 0) for n, u in zip(exps, utype) if not u)
    bound = a * s - (a - 1) * (s + pos)
    bound -= a * sum(n for n, u in zip(exps, utype) if u)
    bound += a * weight
    if m is None:
        k0 = sum(abs(n) for n in exps) + d + 1
        bound -= d * (1 + _floor_log(p, s + k0))
    else:
        if m == 1:
            return float("inf")
        bound += vp(m, p) * weight
        bound -= _floor_log(p, m - 1) * sum(max(n, 0) for n, u in zip(exps, utype) if u)
    return bound


def tail_bound(env: HarmonicEnv, a: SeriesIndex, L: int, kind: str = "evaluation") -> float:
    """Lower bound on the valuation of everything discarded at truncation L."""
    exps = a.exponents
    best = float("inf")
    for utype in product((0, 1), repeat=len(exps)):
        top = _max_order(exps, utype)
        if top <= L:
            continue
        if kind == "evaluation":
            for m in range(1, env.m_max + 1):
                best = min(best, _term_bound(env, exps, utype, L + 1, m))
        else:
            # the coefficient bound is not monotone in s; scan until the linear part dominates
            hi = L + 1 + 8 * (len(exps) + 1) * env.p if top == float("inf") else int(top)
            for s in range(L + 1, hi + 1):
                best = min(best, _term_bound(env, exps, utype, s, None))
    return best


def choose_L(env: HarmonicEnv, a: SeriesIndex, kind: str = "evaluation") -> int:
    """Smallest truncation whose tail bound reaches env.M (or check env.L)."""
    if env.L is not None:
        if tail_bound(env, a, env.L, kind) < env.M:
            raise TruncationCertificateError(
                f"L={env.L} does not certify precision p^{env.M} for {a} ({kind})"
            )
        return env.L
    for L in range(_L_CAP + 1):
        if tail_bound(env, a, L, kind) >= env.M:
            return L
    raise TruncationCertificateError(f"no L <= {_L_CAP} certifies p^{env.M} for {a}")


# -- expansion ------------------------------------------------------------


@lru_cache(maxsize=None)
def _harmonic_at(q: int, exps: tuple, chars: tuple, N: int):
    """Strict harmonic sum at q with the given characters and trivial outer twist."""
    return domain_sum_table(q, exps, chars, (False,) * len(exps), 0, N)[q]


def _compositions(run: list[int]):
    """Ways to cut a run of consecutive positions into consecutive blocks."""
    if not run:
        yield []
        return
    for k in range(1, len(run) + 1):
        for rest in _compositions(run[k:]):
            yield [tuple(run[:k])] + rest


def configurations(d: int):
    """(u-type flags, variables) where variables are ('u', i) or ('b', positions)."""
    for utype in product((0, 1), repeat=d):
        runs, cur = [], []
        for i in range(d):
            if utype[i]:
                if cur:
                    runs.append(cur)
                    cur = []
            else:
                cur.append(i)
        if cur:
            runs.append(cur)
        for choice in product(*[list(_compositions(r)) for r in runs]):
            blocks = {b[0]: b for comp in choice for b in comp}
            variables = []
            i = 0
            while i < d:
                if utype[i]:
                    variables.append(("u", i))
                    i += 1
                else:
                    b = blocks[i]
                    variables.append(("b", b))
                    i = b[-1] + 1
            yield utype, tuple(variables)


def _binomial_orders(exps, positions, L):
    ranges = [range(0, (-exps[i] if exps[i] <= 0 else L) + 1) for i in positions]
    for ls in product(*ranges):
        if sum(ls) <= L:
            yield dict(zip(positions, ls))


@dataclass
class ActionExpansion:
    """har_{qm}(source) = sum_{w'} P_{w'}(m) har_m(w') up to the certified tail."""

    source: SeriesIndex
    env: HarmonicEnv
    L: int
    terms: dict
    certificate: TailCertificate
    domain: str = "strict"
    block_terms: dict = field(default_factory=dict)

    def evaluate(self, m: int) -> CycloNum:
        N = self.source.N
        total = CycloNum.zero(N)
        for w, P in self.terms.items():
            total = total + P.evaluate(m) * har_table(m, w)[m]
        return total

    def evaluate_range(self, m_max: int) -> list:
        N = self.source.N
        out = [CycloNum.zero(N) for _ in range(m_max + 1)]
        for w, P in self.terms.items():
            h = har_table(m_max, w)
            for m in range(1, m_max + 1):
                out[m] = out[m] + P.evaluate(m) * h[m]
        return out

    def coefficient(self, w: SeriesIndex, chi: int, l: int) -> CycloNum:
        P = self.terms.get(w)
        if P is None:
            return CycloNum.zero(self.source.N)
        return P.terms.get((chi % self.source.N, l), CycloNum.zero(self.source.N))

    def empty_coefficients(self) -> dict:
        P = self.terms.get(SeriesIndex.empty(self.source.N))
        return dict(P.terms) if P else {}

    def padic_terms(self) -> dict:
        """Coefficients as p-adic numbers at the certified coefficient precision."""
        env = self.env
        prec = int(min(self.certificate.coefficient_bound, env.M)) if self.certificate.coefficient_bound != float("inf") else env.M
        return {
            w: {k: to_padic(c, env.p, prec) for k, c in P.terms.items()} for w, P in self.terms.items()
        }


def to_padic(x, p: int, M: int) -> PadicNum:
    if isinstance(x, CycloNum):
        return embed_cyclo(x, p, M)
    return PadicNum.from_rational(p, x, M)


def _check_depth(a: SeriesIndex) -> None:
    if a.depth > MAX_DEPTH:
        raise UnsupportedDepthError(f"depth {a.depth} exceeds the supported depth {MAX_DEPTH}")


def _strict_expansion(env: HarmonicEnv, a: SeriesIndex, L: int):
    N, q = a.N, env.q
    exps, chars = a.exponents, a.characters()
    d = a.depth
    acc: dict = {}
    blocks_out: dict = {}
    block_ok = True
    for utype, variables in configurations(d):
        nonu = [i for i in range(d) if not utype[i]]
        for ls in _binomial_orders(exps, nonu, L):
            K = Fraction(1)
            for i in nonu:
                K *= gen_binomial(-exps[i], ls[i]) * Fraction(q) ** ls[i]
            if K == 0:
                continue
            for i in range(d):
                if utype[i]:
                    K *= Fraction(q) ** (-exps[i])
            coeff = as_cyclo(N, K)
            u_exps, u_chars, u_gaps = [], [], []
            prev_u = True  # the virtual lower bound 0 behaves like a u-type position
            for kind, data in variables:
                if kind == "u":
                    u_exps.append(exps[data])
                    u_chars.append(chars[data])
                    u_gaps.append(False)
                    prev_u = True
                else:
                    bexps = tuple(exps[i] + ls[i] for i in data)
                    bchars = tuple(chars[i] for i in data)
                    h = _harmonic_at(q, bexps, bchars, N)
                    if env.alpha > 1 and h != 0:
                        floor = -(env.alpha - 1) * sum(max(k, 0) for k in bexps)
                        if to_padic(h, env.p, 64 + env.alpha * sum(abs(k) for k in bexps)).valuation < floor:
                            block_ok = False
                    coeff = coeff * h
                    u_exps.append(-sum(ls[i] for i in data))
                    u_chars.append(sum(bchars) % N)
                    u_gaps.append(prev_u)
                    prev_u = False
            if coeff == 0:
                continue
            label = (utype, variables)
            for (texps, tchars), P in reduce_domain(u_exps, u_chars, u_gaps, N).items():
                target = SeriesIndex.from_letters(tuple(zip(texps, tchars)), 0, N)
                contrib = P.scale(coeff)
                acc[target] = acc[target] + contrib if target in acc else contrib
                blocks_out[label] = blocks_out.get(label, 0) + 1
    weight = a.weight
    twist = PolyExp.monomial(N, -a.outer, weight, Fraction(q) ** weight)
    terms = {}
    for w, P in acc.items():
        Q = P * twist * PolyExp.monomial(N, 0, -w.weight)
        if not Q.is_zero():
            terms[w] = Q
    return terms, blocks_out, block_ok


def action_expansion(env: HarmonicEnv, a: SeriesIndex, domain: str = "strict", kind: str = "evaluation") -> ActionExpansion:
    """Expansion of har_{p^alpha m}(a) for depth <= 2.

    ``domain="tilde"`` expands the mixed-domain sum instead (via its exact
    rewriting as strict sums).  ``kind`` selects which tail bound fixes L.
    """
    _check_depth(a)
    if a.N != env.N:
        raise ValueError(f"index level {a.N} differs from environment level {env.N}")
    if domain not in ("strict", "tilde"):
        raise ValueError(f"unknown domain {domain!r}")
    pieces = {a: 1} if domain == "strict" else tilde_to_strict(a)
    L = max(choose_L(env, b, kind) for b in pieces)
    terms: dict = {}
    blocks: dict = {}
    ok = True
    for b, c in pieces.items():
        t, bl, b_ok = _strict_expansion(env, b, L)
        ok = ok and b_ok
        for w, P in t.items():
            terms[w] = terms[w] + P.scale(c) if w in terms else P.scale(c)
        for k, v in bl.items():
            blocks[k] = blocks.get(k, 0) + v
    terms = {w: P for w, P in terms.items() if not P.is_zero()}
    cert = TailCertificate(
        L=L,
        M=env.M,
        evaluation_bound=min(tail_bound(env, b, L, "evaluation") for b in pieces),
        coefficient_bound=min(tail_bound(env, b, L, "coefficient") for b in pieces),
        block_bound_checked=ok,
    )
    return ActionExpansion(a, env, L, terms, cert, domain, blocks)


def direct_har(env: HarmonicEnv, a: SeriesIndex, m: int, domain: str = "strict") -> CycloNum:
    """har_{qm}(a) by direct summation."""
    qm = env.q * m
    if domain == "strict":
        return har_table(qm, a)[qm]
    total = CycloNum.zero(a.N)
    for b, c in tilde_to_strict(a).items():
        total = total + har_table(qm, b)[qm] * c
    return total


# -- adjoint values ----------------------------------------------------------


def adjoint_pmzv(
    env: HarmonicEnv, idx: AdjointIndex, j: int | None = None, domain: str = "tilde", outer: int = 0
) -> PadicNum:
    """Coefficient of xi^{jm} m^l har_m(empty) in the expansion of har_{qm}.

    ``idx.l`` is the exponent of m.  With ``j=None`` the character is the unique
    one carrying a term in m^l (exact zero if there is none); otherwise
    ``j`` is used as given.
    """
    exp = action_expansion(env, idx.source(outer), domain=domain, kind="coefficient")
    coeffs = exp.empty_coefficients()
    if j is None:
        chars = sorted({chi for (chi, l) in coeffs if l == idx.l})
        if len(chars) > 1:
            raise ValueError(f"several characters {chars} carry m^{idx.l}; pass j explicitly")
        if not chars:
            return PadicNum.zero(env.p, env.M)
        j = chars[0]
    value = coeffs.get((j % env.N, idx.l), CycloNum.zero(env.N))
    return to_padic(value, env.p, env.M)


def adjoint_exact(env: HarmonicEnv, idx: AdjointIndex, j: int = 0, domain: str = "tilde") -> CycloNum:
    """The truncated coefficient as an exact number (exact outright for totally negative indices)."""
    exp = action_expansion(env, idx.source(0), domain=domain, kind="coefficient")
    return exp.empty_coefficients().get((j % env.N, idx.l), CycloNum.zero(env.N))


def _bcoef(n: int, t: int) -> Fraction:
    """Coefficient of y^t in sum_{0 <= x < y} x^n."""
    if not 1 <= t <= n + 1:
        return Fraction(0)
    return Fraction(_binom(n + 1, t), n + 1) * bernoulli(n + 1 - t)


def _binom(a: int, b: int) -> int:
    from math import comb

    return comb(a, b)


def totally_negative_closed(l: int, negatives, env: HarmonicEnv | None = None, q: int | None = None) -> Fraction:
    """Closed form q^{-(n_1+...+n_d)} B-coefficient for the index (-n_1, ..., -n_d), d <= 2.

    ``negatives`` lists the magnitudes n_i >= 0, innermost first; ``l`` is the
    Bernoulli-side index, related to the exponent of m by l = (m-exponent) + sum n_i.
    """
    ns = tuple(negatives)
    if len(ns) > MAX_DEPTH:
        raise UnsupportedDepthError(f"depth {len(ns)} exceeds the supported depth {MAX_DEPTH}")
    if any(n < 0 for n in ns):
        raise ValueError("magnitudes must be non-negative")
    if q is None:
        q = env.q if env is not None else 1
    if not ns:
        core = Fraction(1 if l == 0 else 0)
    elif len(ns) == 1:
        core = _bcoef(ns[0], l)
    else:
        n1, n2 = ns
        core = sum((_bcoef(n1, l1) * _bcoef(l1 + n2, l) for l1 in range(1, n1 + 2)), Fraction(0))
    return core * Fraction(q) ** (-sum(ns))


def support_range(negatives) -> tuple[int, int]:
    """Allowed exponents of m for a totally negative index: 1 - sum n_i <= l <= d."""
    ns = tuple(negatives)
    return 1 - sum(ns), len(ns)


# -- depth one series ---------------------------------------------------------


def _series_term(p: int, n: int, l: int, top: int) -> Fraction:
    k = n + l - 1
    h = sum((Fraction(1, r**k) if k >= 0 else Fraction(r ** (-k))) for r in range(1, p))
    return gen_binomial(top, l) * bernoulli(l) * Fraction(p) ** k * h


def depth_one_tail_bound(p: int, n: int, L: int) -> int:
    """Valuation bound for the terms l > L of the depth-one series (before dividing by n - 1)."""
    # v(B_l) >= -1, the harmonic sums over 0 < r < p are p-adic integers
    return n + (L + 1) - 1 - 1


def depth_one_truncation(p: int, n: int, M: int) -> int:
    """Smallest L whose discarded tail has valuation >= M after dividing by n - 1."""
    shift = vp(n - 1, p)
    L = 0
    while depth_one_tail_bound(p, n, L) - shift < M:
        L += 1
    return L


def depth_one_series_zeta(env: HarmonicEnv, n: int, lmin: int = 0, binomial_top: str = "1-n") -> PadicNum:
    """(1/(n-1)) sum_{l >= lmin} C(top, l) B_l p^{n+l-1} sum_{0<r<p} r^{-(n+l-1)}.

    ``binomial_top`` is ``"1-n"`` (default) or ``"-n"``; terms with l < 0 vanish.
    """
    if env.N != 1 or env.alpha != 1:
        raise ValueError("the depth-one series needs N = 1 and alpha = 1")
    if n < 2:
        raise ValueError("n must be at least 2")
    if binomial_top not in ("1-n", "-n"):
        raise ValueError("binomial_top must be '1-n' or '-n'")
    top = 1 - n if binomial_top == "1-n" else -n
    p = env.p
    L = depth_one_truncation(p, n, env.M)
    if env.L is not None:
        if env.L < L:
            raise TruncationCertificateError(f"L={env.L} does not certify p^{env.M} for n={n}")
        L = env.L
    total = sum((_series_term(p, n, l, top) for l in range(max(lmin, 0), L + 1)), Fraction(0))
    return PadicNum.from_rational(p, total / (n - 1), env.M)


def depth_one_exact(p: int, n: int, L: int, binomial_top: str = "1-n") -> Fraction:
    top = 1 - n if binomial_top == "1-n" else -n
    return sum((_series_term(p, n, l, top) for l in range(L + 1)), Fraction(0)) / (n - 1)
