from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locmzv.action import (
    HarmonicEnv,
    TruncationCertificateError,
    UnsupportedDepthError,
    action_expansion,
    adjoint_exact,
    adjoint_pmzv,
    choose_L,
    configurations,
    depth_one_exact,
    depth_one_series_zeta,
    direct_har,
    gen_binomial,
    support_range,
    tail_bound,
    totally_negative_closed,
)
from locmzv.bernoulli import bernoulli
from locmzv.faulhaber import faulhaber_poly
from locmzv.harmonic import mhs
from locmzv.indices import AdjointIndex, SeriesIndex
from locmzv.padic import UnsupportedLevelError, vp

ENV = HarmonicEnv(5, 1, 1, 6)


def test_env_validation():
    with pytest.raises(ValueError):
        HarmonicEnv(6)
    with pytest.raises(ValueError):
        HarmonicEnv(5, 0)
    with pytest.raises(UnsupportedLevelError):
        HarmonicEnv(5, 1, 3)
    assert HarmonicEnv(7, 2, 3).q == 49
    assert ENV.with_(M=3).M == 3


def test_depth_cap():
    with pytest.raises(UnsupportedDepthError):
        action_expansion(ENV, SeriesIndex.of(1, 1, 1))
    with pytest.raises(UnsupportedDepthError):
        totally_negative_closed(1, (1, 1, 1), q=5)


def test_explicit_L_too_small():
    with pytest.raises(TruncationCertificateError):
        action_expansion(ENV.with_(L=0), SeriesIndex.of(3))
    L = choose_L(ENV, SeriesIndex.of(3))
    assert tail_bound(ENV, SeriesIndex.of(3), L) >= ENV.M
    assert action_expansion(ENV.with_(L=L + 2), SeriesIndex.of(3)).L == L + 2


def test_configurations():
    assert len(list(configurations(1))) == 2
    shapes = list(configurations(2))
    assert len(shapes) == 5
    assert sum(1 for u, _ in shapes if u == (0, 0)) == 2


def test_gen_binomial():
    assert [gen_binomial(-2, l) for l in range(4)] == [1, -2, 3, -4]
    assert gen_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert gen_binomial(3, -1) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_depth_one_structure(n):
    q = ENV.q
    exp = action_expansion(ENV, SeriesIndex.of(n))
    assert exp.terms[SeriesIndex.of(n)].evaluate(7) == 1
    P = exp.terms[SeriesIndex.empty()]
    F = [faulhaber_poly(l) for l in range(exp.L + 1)]
    for m in range(1, 6):
        lit = sum(
            gen_binomial(-n, l) * Fraction(q) ** (n + l) * mhs(q, SeriesIndex.of(n + l)).to_fraction() * F[l].evaluate(m).to_fraction()
            for l in range(exp.L + 1)
        )
        assert P.evaluate(m).to_fraction() == lit * Fraction(m) ** n


@pytest.mark.parametrize("index", [(2,), (-1,), (1, 1), (-1, 2), (2, -1), (0, 3)])
@pytest.mark.parametrize("domain", ["strict", "tilde"])
def test_expansion_matches_direct_sum(index, domain):
    a = SeriesIndex.of(*index)
    exp = action_expansion(ENV, a, domain=domain)
    for m, value in enumerate(exp.evaluate_range(6)[1:], start=1):
        diff = (value - direct_har(ENV, a, m, domain)).to_fraction()
        assert diff == 0 or vp(diff, 5) >= ENV.M


def test_expansion_level_two():
    env = HarmonicEnv(5, 1, 2, 5)
    a = SeriesIndex((1, -1), (1, 0, 1), 2)
    exp = action_expansion(env, a, domain="tilde")
    for m in range(1, 5):
        diff = (exp.evaluate(m) - direct_har(env, a, m, "tilde")).to_fraction()
        assert diff == 0 or vp(diff, 5) >= env.M


def test_block_valuations_checked():
    assert action_expansion(ENV, SeriesIndex.of(1, 2)).certificate.block_bound_checked


def test_cauchy_stability():
    # raising L beyond the certified value does not move the coefficients mod p^M
    a = SeriesIndex.of(1, -1)
    e1 = action_expansion(ENV, a, kind="coefficient")
    e2 = action_expansion(ENV.with_(L=e1.L + 5), a, kind="coefficient")
    p1, p2 = e1.padic_terms(), e2.padic_terms()
    for w in p1:
        for k, v in p1[w].items():
            assert v == p2[w][k]


def test_adjoint_examples():
    idx = AdjointIndex(1, (-1,), (0,), 1)
    assert adjoint_exact(ENV, idx) == Fraction(5, 2)
    assert adjoint_exact(ENV, AdjointIndex(0, (-1,), (0,), 1)) == Fraction(-1, 2)
    assert adjoint_exact(ENV, AdjointIndex(-1, (-2,), (0,), 1)) == Fraction(1, 30)
    assert adjoint_pmzv(ENV, AdjointIndex(3, (-1,), (0,), 1)).is_zero()
    assert str(adjoint_pmzv(ENV, idx)).startswith("3*5 + 2*5^2")


def test_totally_negative_closed_examples():
    assert totally_negative_closed(1, (1,), q=5) == Fraction(-1, 10)
    assert totally_negative_closed(2, (1,), q=5) == Fraction(1, 10)
    assert totally_negative_closed(3, (1,), q=5) == 0
    assert totally_negative_closed(0, (), q=5) == 1
    assert totally_negative_closed(2, (0, 0), q=5) == Fraction(1, 2)
    assert support_range((1, 2)) == (-2, 2)


@pytest.mark.parametrize("ns", [(1,), (2,), (3,), (1, 1), (2, 1), (0, 2), (1, 3)])
@pytest.mark.parametrize("p", [5, 7])
def test_adjoint_matches_closed_form(ns, p):
    env = HarmonicEnv(p, 1, 1, 6)
    s = sum(ns)
    lo, hi = support_range(ns)
    for L in range(lo - 2, hi + 3):
        idx = AdjointIndex(L, tuple(-n for n in ns), (0,) * len(ns), 1)
        value = adjoint_exact(env, idx)
        t = L + s
        if lo <= L <= hi:
            assert value * Fraction(p) ** (-t) == totally_negative_closed(t, ns, q=p)
        else:
            assert value == 0


def test_zeta_values():
    env = HarmonicEnv(5, 1, 1, 4)
    assert str(depth_one_series_zeta(env, 3)) == "2*5^3 + O(5^4)"
    for n in (2, 4, 6):
        assert depth_one_series_zeta(env, n).is_zero()
    with pytest.raises(TruncationCertificateError):
        depth_one_series_zeta(env.with_(L=0), 3)
    with pytest.raises(ValueError):
        depth_one_series_zeta(HarmonicEnv(5, 1, 2, 4), 3)


def _normalized(p, n, top="1-n"):
    return depth_one_exact(p, n, 40, top) / Fraction(p) ** n


@pytest.mark.parametrize("p,a,b", [(5, 3, 7), (7, 3, 9), (5, 2, 6), (7, 2, 8), (5, 4, 8)])
def test_kummer_congruence(p, a, b):
    # a = b mod p - 1: p^-a zeta(a) and p^-b zeta(b) agree mod p
    x, y = _normalized(p, a), _normalized(p, b)
    assert vp(x, p) >= 0 and (x == y or vp(x - y, p) >= 1)


@pytest.mark.parametrize("p,a,b", [(5, 2, 6), (7, 2, 8)])
def test_other_binomial_reading_breaks_kummer(p, a, b):
    x, y = _normalized(p, a, "-n"), _normalized(p, b, "-n")
    assert vp(x - y, p) == 0
    # odd arguments are insensitive to the reading
    assert vp(_normalized(p, 3, "-n") - _normalized(p, p + 2, "-n"), p) >= 1


def test_odd_bernoulli_vanish_in_closed_form():
    for k in range(3, 12, 2):
        assert bernoulli(k) == 0
        assert totally_negative_closed(1, (k - 1,), q=1) == bernoulli(k - 1)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.sampled_from([5, 7, 11]))
def test_closed_form_independent_of_prime(n1, n2, p):
    ns = (n1, n2)
    lo, hi = support_range(ns)
    for t in range(lo + n1 + n2, hi + n1 + n2 + 1):
        assert totally_negative_closed(t, ns, q=p) * Fraction(p) ** (n1 + n2) == totally_negative_closed(t, ns, q=1)
