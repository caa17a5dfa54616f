"""Command-line entry points.

Every numeric result is exact (pretty radical form and/or QuadNum JSON)
plus an optional decimal rendering; decimals never feed back into any
computation.  Exit codes: 0 all requested checks pass, 1 verification
failure (report printed), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import atf, ech, perfclass, staircase
from .exactnum import QuadNum

_BETA_RE = re.compile(
    r"^\s*(-?\d+)/(\d+)\s*\+\s*(-?\d+)/(\d+)\s*\*\s*sqrt\((\d+)\)\s*$")


def default_digits() -> int:
    return int(os.environ.get("STAIRCASE_PRECISION", "40"))


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def parse_beta(text: str) -> QuadNum:
    m = _BETA_RE.match(text)
    if m:
        return QuadNum(Fraction(int(m.group(1)), int(m.group(2))),
                       Fraction(int(m.group(3)), int(m.group(4))),
                       int(m.group(5)))
    try:
        return QuadNum.of(Fraction(text))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"beta must be 'a_num/a_den+b_num/b_den*sqrt(D)' or a rational: {text!r}")


def resolve_beta(args: argparse.Namespace) -> QuadNum:
    if getattr(args, "beta", None) is not None:
        return args.beta
    preset = getattr(args, "preset", None) or "main"
    if preset == "main":
        return staircase.MAIN_BETA
    m = re.match(r"^n=(\d+)$", preset)
    if m:
        return perfclass.family_n(int(m.group(1))).beta
    raise SystemExit(2)


def _add_beta_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta", type=parse_beta, default=None,
                   help="exact beta as a_num/a_den+b_num/b_den*sqrt(D) or a rational")
    p.add_argument("--preset", default=None,
                   help="'main' (the (6+5√30)/12 staircase) or 'n=<k>' for the k-th family")


def _class_from_args(args: argparse.Namespace) -> perfclass.QuasiPerfectClass:
    if args.outer is not None:
        return perfclass.outer_family(args.outer)
    if args.inner is not None:
        return perfclass.inner_family(args.inner)
    if args.tuple is not None:
        vals = [int(v) for v in args.tuple.split(",")]
        if len(vals) != 5:
            raise SystemExit(2)
        return perfclass.QuasiPerfectClass(*vals)
    return perfclass.STEP_MAIN


def _print_value(v: QuadNum, digits: int, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"exact": v.to_json(), "pretty": v.pretty(),
                          "decimal": v.decimal(digits, "down")}, sort_keys=True))
    else:
        print(f"{v.pretty()}  ≈ {v.decimal(digits, 'down')}")


def cmd_acc(args: argparse.Namespace) -> int:
    beta = resolve_beta(args)
    acc = staircase.acc_point(beta)
    vol = staircase.vol_at_acc(beta)
    digits = args.digits
    if args.json:
        print(json.dumps({"beta": beta.to_json(), "acc": acc.to_json(),
                          "vol": vol.to_json(),
                          "acc_pretty": acc.pretty(), "vol_pretty": vol.pretty(),
                          "acc_decimal": acc.decimal(digits, "down"),
                          "vol_decimal": vol.decimal(digits, "down")}, sort_keys=True))
    else:
        print(f"beta = {beta.pretty()}")
        print(f"acc  = {acc.pretty()}  ≈ {acc.decimal(digits, 'down')}")
        print(f"vol  = {vol.pretty()}  ≈ {vol.decimal(digits, 'down')}")
    return 0


def cmd_classes(args: argparse.Namespace) -> int:
    if args.from_pq is not None:
        p, q = (int(v) for v in args.from_pq.split(","))
        c = perfclass.from_pq(p, q)
        if c is None:
            print(f"no quasi-perfect class centered at {p}/{q}")
            return 1
    elif args.blocker is not None:
        c = perfclass.blocker_class(args.blocker)
    else:
        c = _class_from_args(args)
    if args.json:
        print(json.dumps({"class": c.to_json(), "center": str(c.center),
                          "ech_index": perfclass.ech_index(c)}, sort_keys=True))
    else:
        print(f"{c}  center {c.center}  ech index {perfclass.ech_index(c)}")
    return 0


def cmd_mu(args: argparse.Namespace) -> int:
    beta = resolve_beta(args)
    c = _class_from_args(args)
    z = QuadNum.of(args.z) if args.z is not None else staircase.acc_point(beta)
    _print_value(perfclass.mu(c, beta, z), args.digits, args.json)
    return 0


def cmd_ech_caps(args: argparse.Namespace) -> int:
    beta = resolve_beta(args)
    if args.ellipsoid is not None:
        a, b = (Fraction(v) for v in args.ellipsoid.split(","))
        table = ech.ellipsoid_caps(a, b, args.kmax)
    else:
        table = ech.polydisk_cap_table(args.kmax, beta)
    if args.json:
        print(json.dumps({"target": table.target,
                          "values": [v.to_json() for v in table.values]}, sort_keys=True))
    else:
        for k, v in enumerate(table.values):
            print(f"{k}\t{v.pretty()}\t{v.decimal(args.digits, 'down')}")
    return 0


def default_sweep_samples(lo: Fraction, hi: Fraction, n: int,
                          max_den: int) -> list[Fraction]:
    step = (hi - lo) / n
    return [(lo + step * i).limit_denominator(max_den) for i in range(n)]


def cmd_sweep(args: argparse.Namespace) -> int:
    beta = resolve_beta(args)
    samples = default_sweep_samples(Fraction(args.lo), Fraction(args.hi),
                                    args.samples, args.max_den)
    results = ech.lower_bound_sweep(beta, args.kmax, samples)
    ech.sweep_to_csv(results, args.out)
    print(f"wrote {len(results)} samples to {args.out}")
    return 0


def cmd_mutate(args: argparse.Namespace) -> int:
    beta = resolve_beta(args)
    poly = atf.apply_word(atf.init_polydisk(beta), args.word)
    payload = {"polygon": poly.to_json()}
    try:
        payload["embedding"] = atf.extract_embedding(poly).to_json()
    except (atf.EmbeddingPreconditionError, atf.LabelError):
        payload["embedding"] = None
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(atf.to_svg(poly, digits=6))
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_blocked(args: argparse.Namespace) -> int:
    if args.n is not None:
        beta: QuadNum = QuadNum.of(args.n)
        c = perfclass.blocker_class(args.n)
    else:
        beta = resolve_beta(args)
        c = _class_from_args(args)
    verdict = staircase.is_blocked(c, beta)
    print(json.dumps({"class": c.to_json(), "beta": beta.to_json(),
                      "verdict": verdict}, sort_keys=True) if args.json else verdict)
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    fd = perfclass.family_n(args.n)
    out = {
        "beta": fd.beta.to_json(),
        "beta_pretty": fd.beta.pretty(),
        "blocker": fd.blocker.to_json(),
        "step_class": fd.step_class.to_json(),
        "step_ech_index": perfclass.ech_index(fd.step_class),
        "seed_centers": [str(c) for c in fd.seed_centers],
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


_SUITES = ("diophantine", "alternation", "cf", "closed-forms", "atf", "filling")


def _run_suite(name: str, k_max: int, beta: QuadNum) -> list[dict]:
    if name == "diophantine":
        return perfclass.verify_families(k_max)
    if name == "alternation":
        return staircase.verify_alternation(k_max, beta)
    if name == "cf":
        return staircase.verify_cf_recursion(max(k_max, 2))
    if name == "closed-forms":
        return staircase.verify_closed_forms(k_max)
    if name == "atf":
        return atf.verify_formula_suite(k_max, beta)
    if name == "filling":
        return atf.verify_full_filling(k_max, beta)
    raise SystemExit(2)


def cmd_verify(args: argparse.Namespace) -> int:
    beta = resolve_beta(args)
    suites = _SUITES if args.suite == "all" else (args.suite,)
    failures = 0
    for name in suites:
        rep = _run_suite(name, args.kmax, beta)
        bad = [e for e in rep if e["status"] != "pass"]
        failures += len(bad)
        print(f"{name}: {len(rep) - len(bad)}/{len(rep)} checks pass")
        for e in bad:
            print("  FAIL " + json.dumps(e, sort_keys=True))
    if failures:
        print(f"{failures} checks failed")
        return 1
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polycap",
        description="Exact capacity bounds, Diophantine classes and "
                    "almost-toric mutations for polydisk targets")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=default_digits(),
                        help="decimal digits for renderings (STAIRCASE_PRECISION)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = add("acc", help="accumulation point and volume value")
    _add_beta_opts(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_acc)

    p = add("classes", help="generate or test quasi-perfect classes")
    _add_beta_opts(p)
    p.add_argument("--outer", type=int, default=None)
    p.add_argument("--inner", type=int, default=None)
    p.add_argument("--tuple", default=None, help="d,e,p,q,t")
    p.add_argument("--from-pq", dest="from_pq", default=None, help="p,q")
    p.add_argument("--blocker", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classes)

    p = add("mu", help="class obstruction value at z")
    _add_beta_opts(p)
    p.add_argument("--outer", type=int, default=None)
    p.add_argument("--inner", type=int, default=None)
    p.add_argument("--tuple", default=None, help="d,e,p,q,t")
    p.add_argument("--z", type=parse_fraction, default=None,
                   help="rational z (default: acc(beta))")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mu)

    p = add("ech-caps", help="ECH capacity tables")
    _add_beta_opts(p)
    p.add_argument("--ellipsoid", default=None, help="a,b (rationals)")
    p.add_argument("--kmax", type=int, default=50)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ech_caps)

    p = add("sweep", help="capacity-ratio lower-bound sweep to CSV")
    _add_beta_opts(p)
    p.add_argument("--kmax", type=int, default=2000)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--lo", default="1")
    p.add_argument("--hi", default="9")
    p.add_argument("--max-den", type=int, default=64)
    p.add_argument("--out", default="sweep.csv")
    p.set_defaults(func=cmd_sweep)

    p = add("mutate", help="apply a mutation word to the rectangle")
    _add_beta_opts(p)
    p.add_argument("--word", required=True)
    p.add_argument("--svg", default=None, help="write an SVG rendering here")
    p.set_defaults(func=cmd_mutate)

    p = add("blocked", help="blocked / equal / below at the accumulation point")
    _add_beta_opts(p)
    p.add_argument("--n", type=int, default=None,
                   help="integer polydisk: beta = n with its blocker class")
    p.add_argument("--outer", type=int, default=None)
    p.add_argument("--inner", type=int, default=None)
    p.add_argument("--tuple", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_blocked)

    p = add("family", help="family data for the n-th staircase")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_family)

    p = add("verify", help="run identity suites; exit 1 on failure")
    _add_beta_opts(p)
    p.add_argument("--suite", choices=_SUITES + ("all",), default="all")
    p.add_argument("--kmax", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = add("serve", help="run the JSON session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
