from __future__ import annotations

import json
import random

import jsonschema
import pytest

from locmzv.cli import load_schema
from locmzv.harness import (
    SUITES,
    VerificationReport,
    index_grid,
    random_index,
    verify_action,
    verify_adjoint_stuffle,
    verify_bcoeff,
    verify_kz,
    verify_loc_sigma,
    verify_negative,
    verify_stuffle,
    verify_zeta1,
)
from locmzv.indices import SeriesIndex

SMALL = {
    "stuffle": lambda: verify_stuffle(max_depth=1, max_abs=2, m_max=8),
    "loc-sigma": lambda: verify_loc_sigma(count=30, m_max=12),
    "bcoeff": lambda: verify_bcoeff(max_depth=1, max_l=3, m2_max=8),
    "kz": lambda: verify_kz(W=2, D=10),
    "action": lambda: verify_action(primes=(5,), max_abs=1, m_max=4, M=4),
    "negative": lambda: verify_negative(primes=(5,), max_n=2),
    "zeta1": lambda: verify_zeta1(),
    "adjoint-stuffle": lambda: verify_adjoint_stuffle(max_abs=1, M=3, m_max=4),
}


def strip_time(doc):
    return {k: v for k, v in doc.items() if k != "wall_time"}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_small_suites_pass(name):
    report = SMALL[name]()
    assert report.passed, report.to_table()
    assert report.cases > 0
    jsonschema.validate(report.to_json(), load_schema())


def test_registry_is_complete():
    assert set(SUITES) == set(SMALL)


@pytest.mark.parametrize("name", ["stuffle", "loc-sigma", "adjoint-stuffle"])
def test_deterministic(name):
    a, b = SMALL[name](), SMALL[name]()
    assert strip_time(a.to_json()) == strip_time(b.to_json())


def test_seeded_sampling():
    a = verify_stuffle(max_depth=2, max_abs=2, m_max=6, sample=40, seed=3)
    b = verify_stuffle(max_depth=2, max_abs=2, m_max=6, sample=40, seed=3)
    assert a.cases == b.cases == 40 * 2 and a.passed
    assert verify_loc_sigma(count=20, seed=1, named=False).to_json()["cases"] == 20


def test_grid_enlargement_keeps_passing():
    small = verify_stuffle(N_values=(1,), max_depth=1, max_abs=1, m_max=6)
    large = verify_stuffle(N_values=(1,), max_depth=1, max_abs=2, m_max=6)
    assert small.passed and large.passed and large.cases > small.cases
    assert verify_action(primes=(5, 7), max_abs=1, m_max=3, M=3).cases > SMALL["action"]().cases


def test_grid_generators():
    grid = list(index_grid(2, 1, 1))
    assert len(grid) == 2 + 3 * 4
    rng = random.Random(0)
    for _ in range(50):
        a = random_index(rng, 3, 3, 2)
        assert 1 <= a.depth <= 3 and all(abs(n) <= 2 for n in a.exponents)


def test_adjoint_stuffle_depth_cap():
    pair = (SeriesIndex.of(1, 1), SeriesIndex.of(1))
    with pytest.raises(ValueError):
        verify_adjoint_stuffle(pairs=[pair])


def test_adjoint_stuffle_reports_precision():
    report = SMALL["adjoint-stuffle"]()
    assert report.achieved_M == 3
    assert report.to_json()["achieved_M"] == 3


def test_failing_report_shape():
    report = VerificationReport("demo", {"seed": None, "N": [1, 2]})
    report.cases = 1
    report.fail({"m": 3}, 1, 2, note="mismatch")
    doc = report.to_json()
    assert doc["pass"] is False and doc["params"]["seed"] is None
    assert doc["failures"] == [{"case": {"m": "3"}, "lhs": "1", "rhs": "2", "note": "mismatch"}]
    jsonschema.validate(doc, load_schema())
    assert "FAIL m=3" in report.to_table()
    json.dumps(doc)


def test_other_binomial_reading_is_reported():
    report = verify_zeta1(binomial_top="-n")
    assert not report.passed
    assert {f["case"]["n"] for f in report.failures} == {"2"}
