"""Verification suites: each sweeps a grid of cases and compares both sides exactly
(or p-adically, at a certified precision) and returns a VerificationReport."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm

from .action import (
    HarmonicEnv,
    action_expansion,
    depth_one_series_zeta,
    depth_one_truncation,
    direct_har,
    support_range,
    to_padic,
    totally_negative_closed,
)
from .cyclo import CycloNum, format_cyclo, root_of_unity
from .faulhaber import bcoeff
from .harmonic import mhs_table, mhs_tilde_table, scaled_mhs_table
from .indices import SeriesIndex, format_index, quasi_shuffle, word_of_index
from .kz import fixed_point_residual, shuffle_defect, solve_kz, valid_degree
from .localization import loc_sigma
from .padic import PadicNum, format_padic, vp
from .words import E0, E0_INV, Letter, Word, alphabet, all_words, format_word


def fmt(x) -> str:
    """Exact string for any value the suites compare."""
    if isinstance(x, CycloNum):
        return format_cyclo(x)
    if isinstance(x, PadicNum):
        return format_padic(x)
    if isinstance(x, SeriesIndex):
        return format_index(x)
    if isinstance(x, Word):
        return format_word(x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return str(x)


@dataclass
class VerificationReport:
    suite: str
    params: dict
    cases: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0
    achieved_M: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case: dict, lhs, rhs, note: str = "") -> None:
        entry = {"case": {k: fmt(v) for k, v in case.items()}, "lhs": fmt(lhs), "rhs": fmt(rhs)}
        if note:
            entry["note"] = note
        self.failures.append(entry)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "params": {k: v if v is None or isinstance(v, (int, bool, list)) else fmt(v) for k, v in self.params.items()},
            "pass": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "wall_time": round(self.wall_time, 3),
        }
        if self.achieved_M is not None:
            out["achieved_M"] = self.achieved_M
        return out

    def to_table(self) -> str:
        rows = [
            ("suite", self.suite),
            ("pass", "yes" if self.passed else "no"),
            ("cases", str(self.cases)),
            ("failures", str(len(self.failures))),
            ("wall_time", f"{self.wall_time:.2f}s"),
        ]
        if self.achieved_M is not None:
            rows.append(("achieved_M", str(self.achieved_M)))
        for k, v in self.params.items():
            rows.append((f"param {k}", fmt(v) if not isinstance(v, list) else ",".join(map(str, v))))
        width = max(len(k) for k, _ in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        for f in self.failures[:20]:
            case = " ".join(f"{k}={v}" for k, v in f["case"].items())
            lines.append(f"FAIL {case}: lhs={f['lhs']} rhs={f['rhs']}")
        if len(self.failures) > 20:
            lines.append(f"... {len(self.failures) - 20} more failures")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time = time.perf_counter() - self.t0
        return False


def index_grid(N: int, max_depth: int, max_abs: int, min_depth: int = 0):
    """All indices with depth in range, exponents in [-max_abs, max_abs] and all twists."""
    for d in range(min_depth, max_depth + 1):
        for ex in product(range(-max_abs, max_abs + 1), repeat=d):
            for tw in product(range(N), repeat=d + 1):
                yield SeriesIndex(ex, tw, N)


def random_index(rng: random.Random, N: int, max_depth: int, max_abs: int, min_depth: int = 1) -> SeriesIndex:
    d = rng.randint(min_depth, max_depth)
    ex = tuple(rng.randint(-max_abs, max_abs) for _ in range(d))
    tw = tuple(rng.randrange(N) for _ in range(d + 1))
    return SeriesIndex(ex, tw, N)


# -- stuffle ------------------------------------------------------------------


def verify_stuffle(
    N_values=(1, 2), max_depth: int = 2, max_abs: int = 3, m_max: int = 20, seed: int = 0, sample: int | None = None
) -> VerificationReport:
    """h_m(a) h_m(b) = sum_c coeff * h_m(c) over unordered index pairs, m = 1..m_max.

    ``sample`` draws that many pairs per level with the seeded generator instead
    of the full grid.  Levels N <= 2 are compared in scaled integer arithmetic.
    """
    params = dict(N=list(N_values), max_depth=max_depth, max_abs=max_abs, m_max=m_max, seed=seed, sample=sample)
    report = VerificationReport("stuffle", params)
    K1 = max_depth * max_abs
    M = m_max + 1
    with _Timer(report):
        for N in N_values:
            ids = list(index_grid(N, max_depth, max_abs))
            pairs = [(ids[i], ids[k]) for i in range(len(ids)) for k in range(i, len(ids))]
            if sample is not None and sample < len(pairs):
                pairs = random.Random(seed).sample(pairs, sample)
            if N <= 2:
                _stuffle_integer(report, pairs, M, K1)
            else:
                _stuffle_exact(report, pairs, M)
    return report


def _stuffle_integer(report, pairs, M, K1) -> None:
    small: dict = {}
    big: dict = {}

    def vec(a, K, cache):
        v = cache.get(a)
        if v is None:
            v = cache[a] = scaled_mhs_table(M, a, K)[1:]
        return v

    for a, b in pairs:
        va, vb = vec(a, K1, small), vec(b, K1, small)
        rhs = [0] * (M - 1)
        for c, k in quasi_shuffle(a, b).items():
            rhs = [r + k * x for r, x in zip(rhs, vec(c, 2 * K1, big))]
        report.cases += 1
        for m, (x, y, r) in enumerate(zip(va, vb, rhs), start=1):
            if x * y != r:
                scale = Fraction(lcm(*range(1, M))) ** (2 * K1)
                report.fail({"a": a, "b": b, "m": m}, Fraction(x * y) / scale, Fraction(r) / scale)
                break


def _stuffle_exact(report, pairs, M) -> None:
    cache: dict = {}

    def vec(a):
        if a not in cache:
            cache[a] = mhs_table(M - 1, a)[1:]
        return cache[a]

    for a, b in pairs:
        rhs = [CycloNum.zero(a.N)] * (M - 1)
        for c, k in quasi_shuffle(a, b).items():
            rhs = [r + x * k for r, x in zip(rhs, vec(c))]
        report.cases += 1
        for m, (x, y, r) in enumerate(zip(vec(a), vec(b), rhs), start=1):
            if x * y != r:
                report.fail({"a": a, "b": b, "m": m}, x * y, r)
                break


# -- localization ---------------------------------------------------------------


def _named_loc_cases():
    m = Fraction
    # exact expansions derived by summing in closed form by hand
    return [
        ("counting", SeriesIndex.of(0), {SeriesIndex.of(): {(0, 1): m(1)}}),
        ("power_sum", SeriesIndex.of(-1), {SeriesIndex.of(): {(0, 2): m(1, 2), (0, 1): m(-1, 2)}}),
        (
            "inner_negative",
            SeriesIndex.of(-1, 2),
            {SeriesIndex.of(): {(0, 1): m(1, 2), (0, 0): m(-1, 2)}, SeriesIndex.of(1): {(0, 0): m(-1, 2)}},
        ),
        (
            "inner_negative_deep",
            SeriesIndex.of(-1, 3),
            {SeriesIndex.of(1): {(0, 0): m(1, 2)}, SeriesIndex.of(2): {(0, 0): m(-1, 2)}},
        ),
    ]


def verify_loc_sigma(
    count: int = 300,
    max_depth: int = 3,
    max_abs: int = 4,
    N_values=(1, 2),
    m_max: int = 30,
    seed: int = 0,
    named: bool = True,
) -> VerificationReport:
    """mhs_tilde(m, a) = sum P(m) mhs(m, target) for random indices and m = 1..m_max."""
    params = dict(count=count, max_depth=max_depth, max_abs=max_abs, N=list(N_values), m_max=m_max, seed=seed, named=named)
    report = VerificationReport("loc_sigma", params)
    rng = random.Random(seed)
    with _Timer(report):
        if named:
            for name, a, expected in _named_loc_cases():
                exp = loc_sigma(a)
                got = {w: {k: v.to_fraction() for k, v in P.terms.items()} for w, P in exp.items()}
                report.cases += 1
                if got != expected:
                    report.fail({"name": name, "a": a}, str(exp), repr(expected))
                _check_loc(report, a, exp, m_max)
        for _ in range(count):
            a = random_index(rng, rng.choice(N_values), max_depth, max_abs)
            _check_loc(report, a, loc_sigma(a), m_max)
    return report


def _check_loc(report, a, exp, m_max) -> None:
    report.cases += 1
    for w in exp:
        if not w.is_proper() or w.depth > a.depth:
            report.fail({"a": a, "target": w}, "proper target of depth <= source", w)
            return
    lhs = mhs_tilde_table(m_max, a)
    rhs = exp.evaluate_table(m_max)
    for m in range(1, m_max + 1):
        if lhs[m] != rhs[m]:
            report.fail({"a": a, "m": m}, lhs[m], rhs[m])
            return


# -- two-boundary coefficients ---------------------------------------------------


def _literal_open_sums(ls, cs, N, m, top):
    """sum_{m < m_1 < ... < m_d < m'} prod xi^{c_i m_i} m_i^{l_i} for m' = m+1..top."""
    units = [[root_of_unity(N, c * x) for x in range(top)] for c in cs]
    f = [CycloNum.zero(N)] * top
    for x in range(m + 1, top):
        f[x] = units[0][x] * x ** ls[0]
    for k in range(1, len(ls)):
        new = [CycloNum.zero(N)] * top
        run = CycloNum.zero(N)
        for x in range(m + 1, top):
            new[x] = run * units[k][x] * x ** ls[k]
            run = run + f[x]
        f = new
    out = {}
    run = CycloNum.zero(N)
    for y in range(m + 1, top + 1):
        out[y] = run
        if y < top:
            run = run + f[y]
    return out


def verify_bcoeff(max_depth: int = 2, max_l: int = 4, N_values=(1, 2, 3), m2_max: int = 15) -> VerificationReport:
    """bcoeff evaluations equal the literal open-interval sums for 0 <= m < m' <= m2_max."""
    params = dict(max_depth=max_depth, max_l=max_l, N=list(N_values), m2_max=m2_max)
    report = VerificationReport("bcoeff", params)
    with _Timer(report):
        for N in N_values:
            for d in range(1, max_depth + 1):
                for ls in product(range(max_l + 1), repeat=d):
                    for cs in product(range(N), repeat=d):
                        _check_bcoeff(report, ls, cs, N, m2_max)
    return report


def _check_bcoeff(report, ls, cs, N, m2_max) -> None:
    P = bcoeff(ls, cs, N)
    report.cases += 1
    bound = sum(ls) + len(ls) + 1
    for ((_, da), (_, db)) in P.terms:
        if da + db > bound:
            report.fail({"l": list(ls), "c": list(cs), "N": N}, f"degree {da}+{db}", f"<= {bound}")
            return
    # group by the m'-monomial so each m needs one evaluation per group
    groups = P.left()
    for m in range(0, m2_max):
        inner = {k: A.evaluate(m) for k, A in groups.items()}
        lit = _literal_open_sums(ls, cs, N, m, m2_max)
        for m2 in range(m + 1, m2_max + 1):
            val = CycloNum.zero(N)
            for (chi, delta), c in inner.items():
                val = val + c * root_of_unity(N, chi * m2) * Fraction(m2) ** delta
            if val != lit[m2]:
                report.fail({"l": list(ls), "c": list(cs), "N": N, "m": m, "m2": m2}, val, lit[m2])
                return


# -- KZ -------------------------------------------------------------------------


def _series_coefficient(exps, roots, N, k):
    """z^k coefficient of sum_{0<m_1<...<m_d} prod (z_{j_{i+1}}/z_{j_i})^{m_i} m_i^{-e_i}, z_{j_{d+1}} = z."""
    d = len(exps)
    total = CycloNum.zero(N)
    for t in combinations(range(1, k), d - 1):
        ms = t + (k,)
        term = CycloNum.one(N)
        for i, (x, e) in enumerate(zip(ms, exps)):
            nxt = roots[i + 1] if i + 1 < d else 0
            term = term * root_of_unity(N, (nxt - roots[i]) * x) * Fraction(x) ** (-e)
        total = total + term
    return total


def _loc_word(blocks, N):
    """Word e0^{n_d-1} (e0')^{nt_d} x_{j_d} ... from blocks (n_i, nt_i, j_i), innermost first."""
    letters = []
    for n, nt, j in reversed(blocks):
        letters += [E0] * (n - 1) + [E0_INV] * nt + [Letter(j)]
    return Word(tuple(letters), N)


def verify_kz(W: int = 4, D: int = 40, N_values=(1, 2), margin: int | None = None) -> VerificationReport:
    """Fixed-point residual, shuffle equation, explicit series and the harmonic-sum bridge."""
    margin = 2 * W if margin is None else margin
    params = dict(W=W, D=D, N=list(N_values), margin=margin)
    report = VerificationReport("kz", params)
    with _Timer(report):
        for N in N_values:
            plain = solve_kz(False, W, D, N)
            loc = solve_kz(True, W, D, N)
            for name, L, flag in (("plain", plain, False), ("localized", loc, True)):
                report.cases += 1
                bad = fixed_point_residual(L, flag, margin)
                if bad:
                    report.fail({"N": N, "series": name}, "residual words", ",".join(map(format_word, bad[:5])))
            # shuffle equation on proper words
            words = list(all_words(alphabet(N), W, N, 1))
            for i, u in enumerate(words):
                for v in words[i:]:
                    if len(u) + len(v) > W:
                        continue
                    report.cases += 1
                    lhs, rhs = shuffle_defect(plain, u, v)
                    if not lhs.agrees(rhs, D):
                        report.fail({"N": N, "u": u, "v": v}, repr(lhs.records()[:3]), repr(rhs.records()[:3]))
            # explicit localized series, including the inverse e0 families
            for d in (1, 2):
                for ns in product(range(1, W + 1), repeat=d):
                    for nts in product(range(W + 1), repeat=d):
                        if sum(ns) + sum(nts) > W:
                            continue
                        for roots in product(range(N), repeat=d):
                            w = _loc_word(tuple(zip(ns, nts, roots)), N)
                            if len(w) > W:
                                continue
                            _check_series(report, loc, w, [n - t for n, t in zip(ns, nts)], roots, N, D)
            # words ending with an inverse letter have vanishing coefficient
            for w in all_words(alphabet(N, localized=True), W, N, 1):
                if w.letters[-1].inv:
                    report.cases += 1
                    if loc[w].terms:
                        report.fail({"N": N, "w": w}, repr(loc[w].records()[:3]), "0")
            # bridge with harmonic sums at m = D
            for d in (1, 2):
                for ns in product(range(1, W + 1), repeat=d):
                    if sum(ns) > W:
                        continue
                    for roots in product(range(N), repeat=d):
                        a = SeriesIndex(ns, roots + (0,), N)
                        w = word_of_index(a)
                        inner = SeriesIndex(ns[:-1], roots, N)
                        expected = mhs_table(D, inner)[D] * Fraction(D) ** (-ns[-1])
                        report.cases += 1
                        got = plain[w].coefficient(D, 0)
                        if got != expected:
                            report.fail({"N": N, "a": a, "k": D}, got, expected)
    return report


def _check_series(report, L, w, exps, roots, N, D) -> None:
    report.cases += 1
    f = L[w]
    top = valid_degree(w, D)
    if any(j for (k, j) in f.terms if k <= top):
        report.fail({"N": N, "w": w}, "log terms", "none")
        return
    for k in range(0, top + 1):
        expected = _series_coefficient(exps, roots, N, k) if k >= len(exps) else CycloNum.zero(N)
        got = f.coefficient(k, 0)
        if got != expected:
            report.fail({"N": N, "w": w, "k": k}, got, expected)
            return


# -- harmonic action ---------------------------------------------------------------


def _valuation(x, p: int) -> float:
    if isinstance(x, CycloNum) and x.is_rational():
        return vp(x.to_fraction(), p)
    if isinstance(x, CycloNum):
        return to_padic(x, p, 80).valuation
    return vp(x, p)


def verify_action(
    primes=(5, 7),
    alpha: int = 1,
    M: int = 6,
    N: int = 1,
    max_depth: int = 2,
    max_abs: int = 3,
    m_max: int = 10,
    domains=("strict", "tilde"),
) -> VerificationReport:
    """har_{p^alpha m}(a) against its evaluated expansion, mod p^M, with certified tails."""
    params = dict(primes=list(primes), alpha=alpha, M=M, N=N, max_depth=max_depth, max_abs=max_abs,
                  m_max=m_max, domains=list(domains))
    report = VerificationReport("action", params)
    achieved = float("inf")
    with _Timer(report):
        for p in primes:
            env = HarmonicEnv(p, alpha, N, M, m_max=m_max)
            for a in index_grid(N, max_depth, max_abs, min_depth=1):
                for domain in domains:
                    exp = action_expansion(env, a, domain=domain)
                    report.cases += 1
                    if exp.certificate.evaluation_bound < M:
                        report.fail({"p": p, "a": a, "domain": domain}, exp.certificate.evaluation_bound, M,
                                    "tail not certified")
                        continue
                    vals = exp.evaluate_range(m_max)
                    for m in range(1, m_max + 1):
                        direct = direct_har(env, a, m, domain)
                        v = _valuation(direct - vals[m], p)
                        achieved = min(achieved, v)
                        if v < M:
                            report.fail({"p": p, "a": a, "domain": domain, "m": m}, direct, vals[m])
                            break
    report.achieved_M = M if achieved == float("inf") else int(min(achieved, M))
    return report


# -- totally negative adjoint values ---------------------------------------------------


def verify_negative(primes=(5, 7, 13), alpha: int = 1, max_n: int = 4, max_depth: int = 2) -> VerificationReport:
    """Closed forms against extraction, support bound, prefactor law and odd Bernoulli zeros."""
    params = dict(primes=list(primes), alpha=alpha, max_n=max_n, max_depth=max_depth)
    report = VerificationReport("negative", params)
    with _Timer(report):
        base: dict = {}
        for p in primes:
            env = HarmonicEnv(p, alpha, 1, 6)
            q = env.q
            for d in range(1, max_depth + 1):
                for ns in product(range(max_n + 1), repeat=d):
                    exp = action_expansion(env, SeriesIndex.of(*[-n for n in ns]), domain="tilde", kind="coefficient")
                    coeffs = exp.empty_coefficients()
                    lo, hi = support_range(ns)
                    report.cases += 1
                    for (chi, l), c in coeffs.items():
                        if chi != 0 or not lo <= l <= hi:
                            report.fail({"p": p, "n": list(ns), "l": l}, c, "0 outside support")
                    for l in range(lo - 2, hi + 3):
                        report.cases += 1
                        c = coeffs.get((0, l))
                        extracted = c.to_fraction() if c is not None else Fraction(0)
                        t = l + sum(ns)
                        closed = totally_negative_closed(t, ns, q=q)
                        # extraction sees har_{qm} as a polynomial in qm, hence q^l
                        if closed != extracted * Fraction(q) ** (-t):
                            report.fail({"p": p, "n": list(ns), "l": l}, closed, extracted * Fraction(q) ** (-t))
                        core = closed * Fraction(q) ** sum(ns)
                        key = (ns, t)
                        if key in base and base[key] != core:
                            report.fail({"p": p, "n": list(ns), "t": t}, core, base[key], "p-dependence")
                        base.setdefault(key, core)
        for n in range(3, 2 * max_n + 2, 2):
            report.cases += 1
            v = totally_negative_closed(1, (n,), q=1)
            if v != 0:
                report.fail({"n": n, "t": 1}, v, 0, "odd Bernoulli")
    return report


# -- depth one p-adic zeta --------------------------------------------------------------


def verify_zeta1(
    p: int = 5, M: int = 3, ns=(2, 3, 4, 6), extra: int = 10, kummer=((5, 2, 6), (7, 2, 8)), binomial_top: str = "1-n"
) -> VerificationReport:
    """Cauchy stability under L -> L + extra and Kummer congruences mod p."""
    params = dict(p=p, M=M, ns=list(ns), extra=extra, kummer=[list(k) for k in kummer], binomial_top=binomial_top)
    report = VerificationReport("zeta1", params)
    with _Timer(report):
        env = HarmonicEnv(p, 1, 1, M)
        for n in ns:
            report.cases += 1
            L = depth_one_truncation(p, n, M)
            a = depth_one_series_zeta(env.with_(L=L), n, binomial_top=binomial_top)
            b = depth_one_series_zeta(env.with_(L=L + extra), n, binomial_top=binomial_top)
            if not a.congruent(b, M):
                report.fail({"p": p, "n": n, "L": L}, a, b)
        for q, n, n2 in kummer:
            report.cases += 1
            prec = n2 + 2
            e = HarmonicEnv(q, 1, 1, prec)
            a = depth_one_series_zeta(e, n, binomial_top=binomial_top).shift(-n)
            b = depth_one_series_zeta(e, n2, binomial_top=binomial_top).shift(-n2)
            if not a.congruent(b, 1):
                report.fail({"p": q, "n": n, "n2": n2}, a, b)
    return report


# -- adjoint quasi-shuffle shadow ----------------------------------------------------------


def adjoint_stuffle_grid(max_abs: int = 3, N: int = 1):
    """Pairs with depth(a) + depth(b) <= 2."""
    empty = SeriesIndex.empty(N)
    ones = list(index_grid(N, 1, max_abs, min_depth=1))
    twos = list(index_grid(N, 2, max_abs, min_depth=2))
    pairs = [(empty, empty)] + [(empty, a) for a in ones + twos]
    pairs += [(a, b) for i, a in enumerate(ones) for b in ones[i:]]
    return pairs


def verify_adjoint_stuffle(
    p: int = 5, alpha: int = 1, N: int = 1, M: int = 5, m_max: int = 10, pairs=None, max_abs: int = 3
) -> VerificationReport:
    """Expansion(a) * expansion(b) against sum_c expansion(c) over a * b, evaluated mod p^M.

    Each expansion is built at the precision needed for the product to be
    certified to p^M; the achieved precision is reported.
    """
    params = dict(p=p, alpha=alpha, N=N, M=M, m_max=m_max, max_abs=max_abs)
    report = VerificationReport("adjoint_stuffle", params)
    if pairs is None:
        pairs = adjoint_stuffle_grid(max_abs, N)
    achieved = float("inf")
    with _Timer(report):
        for a, b in pairs:
            if a.depth + b.depth > 2:
                raise ValueError(f"depth({a}) + depth({b}) exceeds the action depth cap")
            report.cases += 1
            ok, got = _adjoint_pair(report, p, alpha, N, M, m_max, a, b)
            achieved = min(achieved, got)
    report.achieved_M = M if achieved == float("inf") else int(min(achieved, M))
    return report


def _values(env, a, m_max):
    if a.depth == 0:
        return [None] + [mhs_table(m, a)[m] for m in range(1, m_max + 1)]
    return action_expansion(env, a).evaluate_range(m_max)


def _adjoint_pair(report, p, alpha, N, M, m_max, a, b):
    # lowest valuation of the factors decides the extra precision needed
    probe = HarmonicEnv(p, alpha, N, M, m_max=m_max)
    slack = 0
    for x in (a, b):
        if x.depth:
            vals = _values(probe, x, m_max)
            low = min(_valuation(vals[m], p) for m in range(1, m_max + 1))
            if low < 0:
                slack = max(slack, int(-low))
    env = probe.with_(M=M + slack)
    va, vb = _values(env, a, m_max), _values(env, b, m_max)
    terms = {c: k for c, k in quasi_shuffle(a, b).items()}
    vc = {c: _values(env, c, m_max) for c in terms}
    certified = float("inf")
    observed = float("inf")
    for m in range(1, m_max + 1):
        lhs = va[m] * vb[m]
        rhs = CycloNum.zero(N)
        for c, k in terms.items():
            rhs = rhs + vc[c][m] * k
        # tail errors: M + slack per expansion, shifted by the other factor
        xa = _valuation(va[m], p) if a.depth else 0
        xb = _valuation(vb[m], p) if b.depth else 0
        cert = min(env.M + min(xa, xb, 0), env.M)
        certified = min(certified, cert)
        v = _valuation(lhs - rhs, p)
        observed = min(observed, v)
        if cert < M or v < M:
            report.fail({"a": a, "b": b, "m": m, "certified": cert}, lhs, rhs)
            return False, min(cert, v)
    return True, min(certified, observed)


SUITES = {
    "stuffle": verify_stuffle,
    "loc-sigma": verify_loc_sigma,
    "bcoeff": verify_bcoeff,
    "kz": verify_kz,
    "action": verify_action,
    "negative": verify_negative,
    "zeta1": verify_zeta1,
    "adjoint-stuffle": verify_adjoint_stuffle,
}
