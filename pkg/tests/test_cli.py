from __future__ import annotations

import io
import json
import subprocess
import sys

import jsonschema
import pytest

from locmzv.cli import load_schema, main
from locmzv.indices import format_index, parse_index

SCHEMA = load_schema()


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--format", "json", *argv)
    assert code == 0, text
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return doc


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["mhs", "--m", "5", "--index", "(2|0,0)"], "205/144"),
        (["mhs-tilde", "--m", "5", "--index", "(0|0,0)"], "5"),
        (["mhs", "--N", "2", "--m", "4", "--index", "(1|1,0)"], "-5/6"),
        (["bernoulli", "--l", "1"], "-1/2"),
        (["bernoulli", "--l", "12"], "-691/2730"),
        (["neg-closed", "--n1", "1", "--l", "1", "--p", "5"], "-1/10"),
        (["neg-closed", "--n1", "0", "--n2", "0", "--l", "2", "--p", "5"], "1/2"),
        (["zeta1", "--p", "5", "--n", "3", "--M", "4"], "2*5^3 + O(5^4)"),
        (["adjoint", "--p", "5", "--index", "(-1|0,0)", "--l", "0"], "2 + 2*5 + 2*5^2 + 2*5^3 + 2*5^4 + 2*5^5 + O(5^6)"),
    ],
)
def test_values(argv, expected):
    code, text = run(*argv)
    assert code == 0 and text.strip() == expected


def test_records_tables():
    code, text = run("loc", "--index", "(-1,3|0,0,0)")
    assert code == 0 and text.splitlines() == ["(1|0,0)\t1/2", "(2|0,0)\t-1/2"]
    code, text = run("bcoeff", "--l", "0")
    assert code == 0 and text.strip()
    code, text = run("kz-coeff", "--word", "e0 x0", "--W", "2", "--D", "4")
    assert code == 0 and text.splitlines()[0] == "word: e0 x0"
    assert text.splitlines()[1:3] == ["1\t0\t1", "2\t0\t1/4"]


@pytest.mark.parametrize(
    "argv",
    [
        ["mhs", "--m", "3", "--index", "(1,-1|0,0,0)"],
        ["mhs-tilde", "--N", "3", "--m", "3", "--index", "(0|1,2)"],
        ["loc", "--N", "2", "--index", "(-1,2|1,0,1)"],
        ["bcoeff", "--N", "2", "--l", "1,0", "--c", "1,1"],
        ["bernoulli", "--l", "4"],
        ["kz-coeff", "--word", "x0' x0", "--localized", "--W", "2", "--D", "5"],
        ["kz-coeff", "--word", "x0", "--convention", "native", "--W", "1", "--D", "3"],
        ["action", "--p", "5", "--M", "4", "--index", "(1,-1|0,0,0)"],
        ["action", "--p", "5", "--N", "2", "--M", "3", "--index", "(-1|1,0)", "--domain", "tilde"],
        ["adjoint", "--p", "7", "--index", "(-1,-1|0,0,0)", "--l", "1"],
        ["neg-closed", "--n1", "2", "--n2", "1", "--l", "3", "--p", "7"],
        ["zeta1", "--p", "7", "--n", "3", "--M", "3", "--binomial-top=-n"],
        ["verify", "zeta1", "--p", "7"],
        ["verify", "zeta1"],
        ["verify", "stuffle", "--sample", "10", "--m-max", "5"],
    ],
)
def test_json_outputs_validate(argv):
    doc = run_json(*argv)
    if "command" in doc:
        assert doc["command"] == argv[0]
        assert "func" not in doc["params"]


def test_subcommand_format_flag():
    code, text = run("bernoulli", "--l", "2", "--format", "json")
    assert code == 0 and json.loads(text)["value"] == "1/6"


def test_emitted_indices_round_trip():
    doc = run_json("action", "--p", "5", "--N", "2", "--M", "3", "--index", "(1,-1|1,0,1)")
    assert doc["L"] >= 0
    for text, _ in doc["records"]:
        assert format_index(parse_index(text, 2)) == text
    doc = run_json("loc", "--N", "2", "--index", "(-2,1,-1|1,1,0,1)")
    for text, _ in doc["records"]:
        assert parse_index(text, 2).is_proper()


@pytest.mark.parametrize(
    "argv",
    [
        ["mhs", "--m", "3", "--index", "(1,2|0)"],
        ["mhs", "--m", "3", "--index", "1,2"],
        ["action", "--p", "5", "--N", "3", "--index", "(1|0,0)"],
        ["action", "--p", "5", "--index", "(1,1,1|0,0,0,0)"],
        ["action", "--p", "5", "--L", "0", "--index", "(3|0,0)"],
        ["zeta1", "--p", "5", "--n", "3", "--L", "0"],
        ["bcoeff", "--l", "1,2", "--c", "0"],
        ["bernoulli", "--l", "-1"],
        ["kz-coeff", "--word", "e0 e0 e0", "--W", "2"],
        ["kz-coeff", "--word", "y7"],
        ["verify", "zeta1", "--seed", "3"],
        ["verify", "kz", "--binomial-top=-n"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_failing_verification_exits_1():
    # the depth-one suite fails under the other binomial reading
    code, text = run("--format", "json", "verify", "zeta1", "--binomial-top=-n")
    doc = json.loads(text)
    assert code == 1 and doc["pass"] is False
    jsonschema.validate(doc, SCHEMA)
    code, text = run("verify", "zeta1")
    assert code == 0 and text.splitlines()[1].split() == ["pass", "yes"]


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "locmzv.cli", "bernoulli", "--l", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "0"
