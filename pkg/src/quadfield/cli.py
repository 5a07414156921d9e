"""Command-line front end.

Exit codes: 0 success, 2 bad usage or input, 3 internal consistency violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from . import scan
from .cf_pell import QuadSurd, cf_expand, fundamental_unit, solve_norm_form
from .forms import classify_rd, wide_class_number
from .intbase import BudgetExceeded
from .theorem_lab import ConsistencyError, FamilyParams, verify_theorem

FORMATS = ("table", "csv", "json")


class InputError(Exception):
    pass


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _emit_mapping(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=1, default=str) + "\n"
    width = max(len(k) for k in obj)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in obj.items())


def cmd_classnum(args):
    try:
        summary = wide_class_number(args.d)
    except ValueError as exc:
        raise InputError(str(exc))
    return scan.format_rows([scan.row_from_summary("field", summary)], args.format)


def cmd_unit(args):
    try:
        u = fundamental_unit(args.d)
    except ValueError as exc:
        raise InputError(str(exc))
    return _emit_mapping(asdict(u), args.format)


def cmd_cf(args):
    try:
        s = QuadSurd(args.P, args.Q, args.D)
    except ValueError as exc:
        raise InputError(str(exc))
    cf = cf_expand(s)
    obj = {"a0": cf.a0, "preperiod": list(cf.preperiod), "period": list(cf.period)}
    return _emit_mapping(obj, args.format)


def cmd_pell(args):
    try:
        w = solve_norm_form(args.d, args.N)
    except (ValueError, BudgetExceeded) as exc:
        raise InputError(str(exc))
    obj = {"d": args.d, "N": args.N, "solvable": w is not None,
           "x": w.x if w else None, "y": w.y if w else None}
    return _emit_mapping(obj, args.format)


def report_to_dict(report) -> dict:
    fp = report.params
    out = {
        "a": fp.a, "m": fp.m, "p": fp.p, "d": fp.d,
        "hypothesis_ok": report.hypothesis_ok, "reason": report.reason,
        "gcd_mp": report.gcd_mp, "verdict": report.verdict.value,
    }
    if report.hypothesis_ok:
        rep = report.representation
        out["rep_plus"] = list(rep.plus.pair()) if rep.plus else None
        out["rep_minus"] = list(rep.minus.pair()) if rep.minus else None
        out["splitting"] = report.splitting.value
        out.update({k: v for k, v in asdict(report.summary).items() if k != "d"})
        out["descent"] = report.descent
    return out


def cmd_verify(args):
    return _emit_mapping(report_to_dict(verify_theorem(FamilyParams(args.a, args.m, args.p))), args.format)


def cmd_classify_rd(args):
    return _emit_mapping(asdict(classify_rd(args.d)), args.format)


def cmd_scan(args):
    bounds = {"max_a": args.max_a, "max_m": args.max_m, "max_p": args.max_p, "max_d": args.max_d}
    rows = scan.run_scan(args.family, jobs=max(1, args.jobs), cache_path=args.cache, **bounds)
    text = scan.format_rows(rows, args.format)
    summary = scan.summarize(rows)
    if args.format == "table":
        return text + summary + "\n"
    print(summary, file=sys.stderr)
    return text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadfield", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=FORMATS, default="table")
        p.set_defaults(func=func)
        return p

    p = add("classnum", cmd_classnum, "class numbers of Q(sqrt d)")
    p.add_argument("d", type=int)
    p = add("unit", cmd_unit, "fundamental unit of Q(sqrt d)")
    p.add_argument("d", type=int)
    p = add("cf", cmd_cf, "continued fraction of (P + sqrt D)/Q")
    p.add_argument("D", type=int)
    p.add_argument("--P", type=int, default=0)
    p.add_argument("--Q", type=int, default=1)
    p = add("pell", cmd_pell, "least-y solution of x^2 - d y^2 = N")
    p.add_argument("d", type=int)
    p.add_argument("N", type=int)
    p = add("verify", cmd_verify, "evaluate one instance d = a^2 m^2 + 4ap")
    p.add_argument("a", type=int)
    p.add_argument("m", type=int)
    p.add_argument("p", type=int)
    p = add("classify-rd", cmd_classify_rd, "extended Richaud-Degert decomposition of d")
    p.add_argument("d", type=int)
    p = add("scan", cmd_scan, "sweep a parametric family")
    p.add_argument("family", choices=scan.FAMILIES)
    p.add_argument("--max-a", type=_positive, default=15)
    p.add_argument("--max-m", type=_positive, default=15)
    p.add_argument("--max-p", type=_positive, default=47)
    p.add_argument("--max-d", type=_positive, default=10**4)
    p.add_argument("--cache", default=None, help="JSON cache of class group summaries")
    p.add_argument("--jobs", type=_positive, default=1)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(out)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
