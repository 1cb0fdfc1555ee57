"""Command line: ``locmzv <command> [options]``.

Exit status is 0 on success or a passing verification, 1 on a failing
verification and 2 on usage, parse or configuration errors.
"""
from __future__ import annotations

import argparse
import inspect
import json
import sys
from importlib import resources

from .action import (
    HarmonicEnv,
    TruncationCertificateError,
    UnsupportedDepthError,
    action_expansion,
    adjoint_pmzv,
    depth_one_series_zeta,
    totally_negative_closed,
)
from .bernoulli import bernoulli
from .cyclo import format_cyclo
from .faulhaber import bcoeff
from .harmonic import mhs, mhs_tilde
from .harness import SUITES, fmt
from .indices import AdjointIndex, parse_index
from .kz import CONVENTIONS, solve_kz
from .localization import loc_sigma
from .padic import UnsupportedLevelError, format_padic
from .words import ParseError, parse_word


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def load_schema() -> dict:
    """JSON Schema for every ``--format json`` output."""
    return json.loads(resources.files("locmzv").joinpath("report.schema.json").read_text())


def _env(args) -> HarmonicEnv:
    return HarmonicEnv(args.p, args.alpha, args.N, args.M, L=args.L)


# -- commands ------------------------------------------------------------------


def cmd_mhs(args):
    a = parse_index(args.index, args.N)
    return {"value": format_cyclo(mhs(args.m, a))}


def cmd_mhs_tilde(args):
    a = parse_index(args.index, args.N)
    return {"value": format_cyclo(mhs_tilde(args.m, a))}


def cmd_loc(args):
    exp = loc_sigma(parse_index(args.index, args.N))
    return {"records": [list(r) for r in exp.records()]}


def cmd_bcoeff(args):
    chars = args.c if args.c is not None else [0] * len(args.l)
    if len(chars) != len(args.l):
        raise UsageError("--l and --c need the same length")
    return {"records": bcoeff(args.l, chars, args.N).to_records()}


def cmd_bernoulli(args):
    if args.l < 0:
        raise UsageError("--l must be non-negative")
    return {"value": str(bernoulli(args.l))}


def cmd_kz_coeff(args):
    w = parse_word(args.word, args.N)
    if len(w) > args.W:
        raise UsageError(f"word of weight {len(w)} exceeds W={args.W}")
    L = solve_kz(args.localized, args.W, args.D, args.N, args.convention)
    return {"word": str(w), "records": [[str(k), str(j), v] for k, j, v in L[w].records()]}


def cmd_action(args):
    exp = action_expansion(_env(args), parse_index(args.index, args.N), domain=args.domain)
    records = []
    for w in sorted(exp.terms, key=lambda a: (a.depth, a.exponents, a.twists)):
        records.append([str(w), str(exp.terms[w])])
    cert = exp.certificate
    return {
        "L": exp.L,
        "certificate": {
            "evaluation_bound": fmt(cert.evaluation_bound),
            "coefficient_bound": fmt(cert.coefficient_bound),
        },
        "records": records,
    }


def cmd_adjoint(args):
    a = parse_index(args.index, args.N)
    idx = AdjointIndex(args.l, a.exponents, a.twists[:-1], args.N)
    value = adjoint_pmzv(_env(args), idx, j=args.j, domain=args.domain, outer=a.outer)
    return {"value": format_padic(value)}


def cmd_neg_closed(args):
    ns = [args.n1] + ([args.n2] if args.n2 is not None else [])
    q = args.p**args.alpha
    return {"value": str(totally_negative_closed(args.l, ns, q=q))}


def cmd_zeta1(args):
    env = HarmonicEnv(args.p, 1, 1, args.M, L=args.L)
    return {"value": format_padic(depth_one_series_zeta(env, args.n, args.lmin, args.binomial_top))}


def cmd_verify(args):
    fn = SUITES[args.suite]
    accepted = inspect.signature(fn).parameters
    kw = {}
    for name in ("seed", "sample", "count", "M", "p", "m_max", "binomial_top"):
        value = getattr(args, name, None)
        if value is not None:
            if name not in accepted:
                raise UsageError(f"suite {args.suite!r} has no option --{name.replace('_', '-')}")
            kw[name] = value
    return fn(**kw)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locmzv", description="Localized harmonic sums and adjoint p-adic MZVs.")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
        p.set_defaults(func=fn)
        return p

    def level(p):
        p.add_argument("--N", type=int, default=1)

    def padic(p, M=6):
        level(p)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--alpha", type=int, default=1)
        p.add_argument("--M", type=int, default=M)
        p.add_argument("--L", type=int, default=None)

    for name, fn in (("mhs", cmd_mhs), ("mhs-tilde", cmd_mhs_tilde)):
        p = add(name, fn, f"evaluate {name} at m")
        level(p)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--index", required=True)

    p = add("loc", cmd_loc, "expansion of a mixed-sign sum in proper sums")
    level(p)
    p.add_argument("--index", required=True)

    p = add("bcoeff", cmd_bcoeff, "two-boundary coefficients")
    level(p)
    p.add_argument("--l", type=_int_list, required=True)
    p.add_argument("--c", type=_int_list, default=None)

    p = add("bernoulli", cmd_bernoulli, "Bernoulli number B_l (B_1 = -1/2)")
    p.add_argument("--l", type=int, required=True)

    p = add("kz-coeff", cmd_kz_coeff, "coefficient of a word in the KZ fixed point")
    level(p)
    p.add_argument("--word", required=True)
    p.add_argument("--W", type=int, default=4)
    p.add_argument("--D", type=int, default=40)
    p.add_argument("--localized", action="store_true")
    p.add_argument("--convention", choices=CONVENTIONS, default="positive")

    p = add("action", cmd_action, "expansion of har_{p^alpha m}")
    padic(p)
    p.add_argument("--index", required=True)
    p.add_argument("--domain", choices=("strict", "tilde"), default="strict")

    p = add("adjoint", cmd_adjoint, "adjoint value: coefficient of xi^{jm} m^l har_m(empty)")
    padic(p)
    p.add_argument("--index", required=True, help="source index; its last twist is the outer twist")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--domain", choices=("strict", "tilde"), default="tilde")

    p = add("neg-closed", cmd_neg_closed, "closed form for totally negative indices")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=int, default=1)

    p = add("zeta1", cmd_zeta1, "depth-one p-adic zeta value")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--M", type=int, default=6)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--lmin", type=int, default=0)
    p.add_argument("--binomial-top", choices=("1-n", "-n"), default="1-n")

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--m-max", dest="m_max", type=int, default=None)
    p.add_argument("--binomial-top", dest="binomial_top", choices=("1-n", "-n"), default=None)
    return parser


def _emit(args, result, out) -> int:
    if hasattr(result, "to_json"):
        if args.format == "json":
            out.write(json.dumps(result.to_json(), indent=2) + "\n")
        else:
            out.write(result.to_table() + "\n")
        return 0 if result.passed else 1
    if args.format == "json":
        params = {k: v for k, v in vars(args).items() if k not in ("func", "format", "command") and v is not None}
        out.write(json.dumps({"command": args.command, "params": params, **result}, indent=2) + "\n")
    elif "value" in result:
        out.write(result["value"] + "\n")
    else:
        for key in ("L", "word"):
            if key in result:
                out.write(f"{key}: {result[key]}\n")
        for rec in result["records"]:
            out.write("\t".join(rec) + "\n")
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        result = args.func(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    except (UnsupportedLevelError, UnsupportedDepthError, TruncationCertificateError) as e:
        sys.stderr.write(f"configuration error: {e}\n")
        return 2
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    return _emit(args, result, out)


if __name__ == "__main__":
    sys.exit(main())
