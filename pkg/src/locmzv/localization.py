"""Reduction of mixed-sign harmonic sums to proper ones with PolyExp coefficients.

A *domain sum* is described by exponents, characters and relation flags
(``gaps[k]`` relates m_k and m_{k+1}, with m_0 = 0; True means <=; the top
relation with m is always strict).  ``reduce_domain`` repeatedly sums out the
leftmost position with a non-positive exponent in closed form: the summed
variable runs over [lo', hi') and the antiderivative F splits into F(hi'),
absorbed by the upper neighbour (or by m), minus F(lo'), absorbed by the lower
neighbour (or evaluated at 0).  Remaining large relations between positive
positions are split into a strict part and a diagonal part.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .cyclo import CycloNum
from .faulhaber import PolyExp, power_sum
from .harmonic import mhs, mhs_table, sign_data, tilde_gaps
from .indices import SeriesIndex


class PartitionError(ValueError):
    pass


def _add_into(acc: dict, key, value: PolyExp) -> None:
    if key in acc:
        acc[key] = acc[key] + value
    else:
        acc[key] = value


@lru_cache(maxsize=None)
def _reduce(exps: tuple, chars: tuple, gaps: tuple, N: int) -> tuple:
    d = len(exps)
    neg = next((i for i, n in enumerate(exps) if n <= 0), None)
    acc: dict = {}
    if neg is None:
        k = next((k for k, g in enumerate(gaps) if g), None)
        if k is None:
            return (((exps, chars), PolyExp.const(N)),)
        if k == 0:
            raise ZeroDivisionError("positive exponent with summation variable allowed to be 0")
        strict = gaps[:k] + (False,) + gaps[k + 1 :]
        for key, v in _reduce(exps, chars, strict, N):
            _add_into(acc, key, v)
        # diagonal m_{k-1} = m_k: merge the two positions
        mexps = exps[: k - 1] + (exps[k - 1] + exps[k],) + exps[k + 1 :]
        mchars = chars[: k - 1] + ((chars[k - 1] + chars[k]) % N,) + chars[k + 1 :]
        mgaps = gaps[:k] + gaps[k + 1 :]
        for key, v in _reduce(mexps, mchars, mgaps, N):
            _add_into(acc, key, v)
        return tuple((k_, v) for k_, v in acc.items() if not v.is_zero())

    i = neg
    F = power_sum(-exps[i], chars[i], N)
    lo_large = gaps[i]
    hi_large = gaps[i + 1] if i + 1 < d else False
    upper = F.shift(1) if hi_large else F
    lower = F if lo_large else F.shift(1)
    merged = lo_large and hi_large
    rest_exps = exps[:i] + exps[i + 1 :]
    rest_chars = chars[:i] + chars[i + 1 :]
    rest_gaps = gaps[:i] + ((merged,) if i + 1 < d else ()) + gaps[i + 2 :]

    # F(hi'): absorbed by the upper neighbour, or by m when i is outermost
    for (chi, delta), c in upper.terms.items():
        if i + 1 < d:
            e = rest_exps[:i] + (rest_exps[i] - delta,) + rest_exps[i + 1 :]
            ch = rest_chars[:i] + ((rest_chars[i] + chi) % N,) + rest_chars[i + 1 :]
            factor = PolyExp.const(N, c)
        else:
            e, ch = rest_exps, rest_chars
            factor = PolyExp.monomial(N, chi, delta, c)
        for key, v in _reduce(e, ch, rest_gaps, N):
            _add_into(acc, key, v * factor)

    # -F(lo'): absorbed by the lower neighbour, or evaluated at 0
    if i > 0:
        for (chi, delta), c in lower.terms.items():
            j = i - 1
            e = rest_exps[:j] + (rest_exps[j] - delta,) + rest_exps[j + 1 :]
            ch = rest_chars[:j] + ((rest_chars[j] + chi) % N,) + rest_chars[j + 1 :]
            for key, v in _reduce(e, ch, rest_gaps, N):
                _add_into(acc, key, v.scale(-c))
    else:
        c0 = lower.evaluate(0)
        if c0 != 0:
            for key, v in _reduce(rest_exps, rest_chars, rest_gaps, N):
                _add_into(acc, key, v.scale(-c0))
    return tuple((k_, v) for k_, v in acc.items() if not v.is_zero())


def reduce_domain(exps, chars, gaps, N: int) -> dict:
    """{(proper exponents, characters): PolyExp} with
    domain_sum(m, exps, chars, gaps, 0) = sum P(m) * h_m(target with outer twist 0)."""
    exps, chars, gaps = tuple(exps), tuple(c % N for c in chars), tuple(bool(g) for g in gaps)
    if not (len(exps) == len(chars) == len(gaps)):
        raise ValueError("exponents, characters and gaps must have equal length")
    return dict(_reduce(exps, chars, gaps, N))


class LocalizedExpansion(Mapping):
    """Proper target index -> PolyExp coefficient; targets have outer twist 0."""

    def __init__(self, source: SeriesIndex, terms: dict):
        self.source = source
        self._terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def __getitem__(self, key):
        return self._terms[key]

    def __iter__(self):
        return iter(sorted(self._terms, key=lambda a: (a.depth, a.exponents, a.twists)))

    def __len__(self):
        return len(self._terms)

    def evaluate(self, m: int) -> CycloNum:
        total = CycloNum.zero(self.source.N)
        for a, P in self._terms.items():
            total = total + P.evaluate(m) * mhs(m, a)
        return total

    def evaluate_table(self, M: int) -> list:
        """Values for m = 1..M (index 0 unused)."""
        N = self.source.N
        out = [CycloNum.zero(N) for _ in range(M + 1)]
        for a, P in self._terms.items():
            h = mhs_table(M, a)
            for m in range(1, M + 1):
                out[m] = out[m] + P.evaluate(m) * h[m]
        return out

    def records(self) -> list[tuple[str, str]]:
        return [(str(a), str(self._terms[a])) for a in self]

    def __str__(self):
        return "\n".join(f"{a} : {p}" for a, p in self.records())


def _expansion(a: SeriesIndex, gaps: tuple) -> LocalizedExpansion:
    N = a.N
    twist = PolyExp.monomial(N, -a.outer, 0)
    terms: dict = {}
    for (exps, chars), P in reduce_domain(a.exponents, a.characters(), gaps, N).items():
        target = SeriesIndex.from_letters(tuple(zip(exps, chars)), 0, N)
        _add_into(terms, target, P * twist)
    return LocalizedExpansion(a, terms)


def loc_sigma(a: SeriesIndex) -> LocalizedExpansion:
    """Expansion with mhs_tilde(m, a) = sum_{w'} P_{w'}(m) mhs(m, w') for every m >= 1."""
    return _expansion(a, tilde_gaps(a))


def loc_strict(a: SeriesIndex) -> LocalizedExpansion:
    """Same for the strict-domain sum mhs(m, a)."""
    return _expansion(a, (False,) * a.depth)


# -- sign-partition trees ------------------------------------------------


@dataclass(frozen=True)
class PartitionTree:
    minus: frozenset
    plus: frozenset
    children: tuple = field(default=())

    def label(self) -> str:
        # runs of equal sign, e.g. (1)^-(23)^+
        labels = sorted(self.minus | self.plus)
        out, run, sign = [], [], None
        for x in labels:
            s = "-" if x in self.minus else "+"
            if s != sign and run:
                out.append(f"({''.join(map(str, run))})^{sign}")
                run = []
            sign = s
            run.append(x)
        if run:
            out.append(f"({''.join(map(str, run))})^{sign}")
        return "".join(out) or "()"

    def leaves(self) -> list[PartitionTree]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def render(self, indent: int = 0) -> str:
        lines = ["  " * indent + self.label()]
        for c in self.children:
            lines.append(c.render(indent + 1))
        return "\n".join(lines)


def _runs(members, order) -> list[frozenset]:
    out, cur = [], []
    for x in order:
        if x in members:
            cur.append(x)
        elif cur:
            out.append(frozenset(cur))
            cur = []
    if cur:
        out.append(frozenset(cur))
    return out


def _check_partition(parts, minus: frozenset, order) -> list[frozenset]:
    parts = [frozenset(p) for p in parts]
    seen: set = set()
    for p in parts:
        if not p:
            raise PartitionError("empty part")
        if p & seen:
            raise PartitionError("parts overlap")
        seen |= p
        pos = sorted(order.index(x) for x in p if x in order)
        if len(pos) != len(p) or pos[-1] - pos[0] != len(p) - 1:
            raise PartitionError(f"part {sorted(p)} is not a segment")
    if seen != set(minus):
        raise PartitionError("parts must cover exactly the negative positions")
    return parts


def _build(minus: frozenset, plus: frozenset, parts: list[frozenset]) -> PartitionTree:
    if not minus or not plus:
        return PartitionTree(minus, plus)
    order = sorted(minus | plus)
    events = []
    for C in sorted(parts, key=min):
        lo = order.index(min(C)) - 1
        hi = order.index(max(C)) + 1
        if lo >= 0 and order[lo] in plus:
            events.append((C, order[lo], max(C)))
        if hi < len(order) and order[hi] in plus:
            events.append((C, order[hi], min(C)))
    hits: dict = {}
    for _, q, _ in events:
        hits[q] = hits.get(q, 0) + 1
    # an event is named after the positive position it hits, or after the
    # facing negative position when that positive position is hit twice
    names = [q if hits[q] == 1 else near for _, q, near in events]
    if len(set(names)) != len(names):
        raise PartitionError("event labels collide; the tree is not determined")
    untouched = plus - set(hits)
    children = []
    for k in range(len(events) + 1):
        for S in combinations(range(len(events)), k):
            new_minus = frozenset(names[e] for e in S)
            new_plus = frozenset(names[e] for e in range(len(events)) if e not in S) | untouched
            new_order = sorted(new_minus | new_plus)
            children.append(_build(new_minus, new_plus, _runs(new_minus, new_order)))
    return PartitionTree(minus, plus, tuple(children))


def partition_tree(a: SeriesIndex, parts=None) -> PartitionTree:
    """Tree of sign patterns; ``parts`` is a connected partition of the negative positions
    (default: singletons)."""
    sd = sign_data(a)
    minus, plus = sd.sign_minus, sd.sign_plus
    order = list(range(1, a.depth + 1))
    if parts is None:
        parts = [frozenset([i]) for i in sorted(minus)]
    parts = _check_partition(parts, minus, order)
    return _build(minus, plus, parts)


def tree_paths(t: PartitionTree) -> list[list[PartitionTree]]:
    if not t.children:
        return [[t]]
    return [[t] + rest for c in t.children for rest in tree_paths(c)]
