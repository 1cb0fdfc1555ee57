from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locmzv.cyclo import root_of_unity
from locmzv.faulhaber import (
    PolyExp,
    PolyExp2,
    antiderivative,
    bcoeff,
    bcoeff_literal,
    dump_bcoeff_table,
    faulhaber_poly,
    power_sum,
    twisted_power_sum,
)


def coeffs(P):
    return {k: v.to_fraction() for k, v in P.terms.items()}


def test_faulhaber_examples():
    assert coeffs(faulhaber_poly(0)) == {(0, 1): 1}
    assert coeffs(faulhaber_poly(1)) == {(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)}
    assert coeffs(faulhaber_poly(2)) == {(0, 3): Fraction(1, 3), (0, 2): Fraction(-1, 2), (0, 1): Fraction(1, 6)}
    assert faulhaber_poly(2).evaluate(5) == 30


@pytest.mark.parametrize("l", range(8))
def test_faulhaber_against_sums(l):
    P = faulhaber_poly(l)
    assert (0, 0) not in P.terms
    for m in range(1, 31):
        assert P.evaluate(m) == sum(x**l for x in range(m))


def test_twisted_examples():
    P = twisted_power_sum(0, 1, 2)
    assert coeffs(P) == {(0, 0): Fraction(1, 2), (1, 0): Fraction(-1, 2)}
    for m in range(1, 11):
        assert P.evaluate(m) == Fraction(1 - (-1) ** m, 2)
    assert twisted_power_sum(1, 1, 2).evaluate(3) == 1
    for l in range(1, 5):
        assert twisted_power_sum(l, 1, 3).evaluate(1) == 0
    with pytest.raises(ValueError):
        twisted_power_sum(1, 0, 3)


@pytest.mark.parametrize("N,chi", [(3, 1), (3, 2), (4, 1), (4, 2), (6, 5)])
def test_twisted_against_sums(N, chi):
    for l in range(5):
        P = twisted_power_sum(l, chi, N)
        # the trivial-character part is constant, the rest has degree <= l
        assert all(d == 0 for (c, d) in P.terms if c == 0)
        assert all(d <= l for (c, d) in P.terms)
        for m in range(1, 13):
            lit = sum((root_of_unity(N, chi * x) * x**l for x in range(m)), 0 * root_of_unity(N, 0))
            assert P.evaluate(m) == lit


def test_polyexp_arithmetic():
    f = PolyExp.monomial(2, 1, 2, 3) + PolyExp.const(2, Fraction(1, 2))
    g = PolyExp.monomial(2, 1, 1)
    for m in range(1, 8):
        assert (f * g).evaluate(m) == f.evaluate(m) * g.evaluate(m)
        assert (f - g).evaluate(m) == f.evaluate(m) - g.evaluate(m)
        assert f.shift(2).evaluate(m) == f.evaluate(m + 2)
    assert (f - f).is_zero()


def test_antiderivative():
    f = PolyExp.monomial(3, 2, 2) + PolyExp.monomial(3, 0, 3, Fraction(1, 5))
    F = antiderivative(f)
    for m in range(1, 10):
        assert F.evaluate(m) == sum((f.evaluate(x) for x in range(m)), 0 * F.evaluate(1))


def test_bcoeff_examples():
    one = bcoeff((0,), (0,))
    for m, m2 in combinations(range(13), 2):
        assert one.evaluate(m, m2) == m2 - m - 1
        assert bcoeff((1,), (0,)).evaluate(m, m2) == Fraction(m2 * m2 - m2, 2) - Fraction(m * m + m, 2)
        n = m2 - m - 1
        assert bcoeff((0, 0), (0, 0)).evaluate(m, m2) == n * (n - 1) // 2


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([1, 2, 3]).flatmap(
        lambda N: st.tuples(
            st.just(N),
            st.lists(st.integers(0, 3), min_size=1, max_size=3),
            st.lists(st.integers(0, N - 1), min_size=3, max_size=3),
        )
    ),
    st.integers(0, 6),
    st.integers(1, 6),
)
def test_bcoeff_against_literal(data, m, gap):
    N, ls, cs = data
    cs = cs[: len(ls)]
    P = bcoeff(ls, cs, N)
    assert P.evaluate(m, m + gap) == bcoeff_literal(ls, cs, N, m, m + gap)


def test_bcoeff_degree_bound():
    for ls in product(range(4), repeat=2):
        P = bcoeff(ls, (0, 0))
        assert all(da + db <= sum(ls) + 3 for ((_, da), (_, db)) in P.terms)


def test_bcoeff_errors():
    with pytest.raises(ValueError):
        bcoeff((), ())
    with pytest.raises(ValueError):
        bcoeff((-1,), (0,))


def test_polyexp2_outer():
    f, g = faulhaber_poly(1, 2), power_sum(2, 1, 2)
    h = PolyExp2.outer(f, g)
    assert h.evaluate(4, 7) == f.evaluate(4) * g.evaluate(7)


def test_dump_table(tmp_path):
    path = dump_bcoeff_table(2, 2, 2, tmp_path)
    assert path.name == "bcoeff_N2.json"
    table = json.loads(path.read_text())
    assert table["1|0"] == bcoeff((1,), (0,), 2).to_records()
    assert len(table) == 3 * 2 + 9 * 4
