"""Command-line entry point.  Exit codes: 0 success, 1 input error, 2 verification failure."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import report
from .bricks import DEFAULT_BUDGET, EnumerationError, enumerate_bricks, fpdim_search, loop_extension_report
from .dsl import DSLError, QuiverFile, load
from .linalg import GF, Field, parse_field
from .polynomial import poly_ext1
from .quiver import QuiverError, check_admissible, check_loop_commutativity
from .spectral import FactoredPoly, isolated_max_value, run_max_value, shifted_root
from .suites import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _cap(text: Optional[str], qf: QuiverFile):
    bq = qf.bound_quiver
    if text is None:
        return {v: 1 for v in bq.vertices}
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--cap must be comma-separated integers, got {text!r}") from None
    if len(parts) == 1:
        return {v: parts[0] for v in bq.vertices}
    if len(parts) != len(bq.vertices):
        raise InputError(f"--cap has {len(parts)} entries for {len(bq.vertices)} vertices")
    return dict(zip(bq.vertices, parts))


def _field(args, qf: Optional[QuiverFile] = None) -> Field:
    if args.field is not None:
        try:
            return parse_field(args.field)
        except ValueError as e:
            raise InputError(f"bad --field: {e}") from None
    if qf is not None and qf.field is not None:
        return qf.field
    return GF(2)


def _scalars(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated rationals, got {text!r}") from None


def cmd_check(args) -> tuple[dict, int]:
    qf = load(args.file)
    bq = qf.bound_quiver
    adm = check_admissible(bq, args.max_len)
    ok, bad = check_loop_commutativity(bq) if adm.admissible else (False, [])
    results = {
        "admissible": adm.admissible,
        "nilpotency_bound": adm.nilpotency_bound,
        "algebra_dim": adm.algebra_dim,
        "witness": None if adm.witness is None else str(adm.witness),
        "reason": adm.reason,
        "connected": bq.quiver.is_connected(),
        "loop_counts": {str(v): c for v, c in sorted(bq.loop_counts().items())},
        "loop_commutativity": ok,
        "loop_violations": bad,
    }
    return report.document("check", {"file": args.file, "max_len": args.max_len}, results), \
        EXIT_OK if adm.admissible else EXIT_INPUT


def cmd_bricks(args) -> tuple[dict, int]:
    qf = load(args.file)
    field = _field(args, qf)
    cap = _cap(args.cap, qf)
    bl = enumerate_bricks(qf.bound_quiver, cap, field, args.budget)
    inputs = {"file": args.file, "cap": [cap[v] for v in qf.bound_quiver.vertices], "field": str(field)}
    return report.bricks_report(qf, bl, inputs), EXIT_OK


def cmd_fpdim(args) -> tuple[dict, int]:
    qf = load(args.file)
    field = _field(args, qf)
    cap = _cap(args.cap, qf)
    est = fpdim_search(qf.bound_quiver, cap, args.max_set, field, args.tol, args.budget)
    inputs = {"file": args.file, "cap": [cap[v] for v in qf.bound_quiver.vertices], "field": str(field),
              "max_set": args.max_set, "tol": args.tol}
    return report.fpdim_report(qf, est, inputs), EXIT_OK


def cmd_loopcheck(args) -> tuple[dict, int]:
    qf = load(args.file)
    field = _field(args, qf)
    cap = _cap(args.cap, qf)
    rep = loop_extension_report(qf.bound_quiver, cap, field, args.budget)
    inputs = {"file": args.file, "cap": [cap[v] for v in qf.bound_quiver.vertices], "field": str(field)}
    return report.loop_report(qf, rep, inputs), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_formula(args) -> tuple[dict, int]:
    if args.kind == "case2":
        if args.nmax is None:
            raise InputError("case2 needs --nmax")
        value = isolated_max_value(args.nmax)
        inputs, extra = {"nmax": args.nmax}, {}
    elif args.kind == "case3":
        if args.nmax is None or args.s is None:
            raise InputError("case3 needs --nmax and --s")
        value = run_max_value(args.nmax, args.s)
        inputs, extra = {"nmax": args.nmax, "s": args.s}, {}
    else:
        if args.factors is None:
            raise InputError("root needs --factors")
        root = shifted_root(FactoredPoly.parse(args.factors))
        value = root.value
        inputs = {"factors": args.factors}
        extra = {"polynomial": str(root.poly), "bracket": [str(root.lo), str(root.hi)]}
    n = args.nmax if args.kind != "root" else None
    if n is not None:
        extra["interval"] = [n, n + 1]
    return report.document(f"formula {args.kind}", inputs, {"value": value, **extra}), EXIT_OK


def cmd_polyext(args) -> tuple[dict, int]:
    lam, mu = _scalars(args.lam), _scalars(args.mu)
    if args.r is not None and not (len(lam) == len(mu) == args.r):
        raise InputError(f"--lambda and --mu must have {args.r} entries")
    field = parse_field(args.field) if args.field else parse_field("Q")
    value = poly_ext1(lam, mu, field)
    inputs = {"r": len(lam), "lambda": [str(x) for x in lam], "mu": [str(x) for x in mu], "field": str(field)}
    return report.document("polyext", inputs, {"ext1": value}), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    res = run_suite(args.suite)
    for line in res.lines():
        print(line, file=sys.stderr)
    results = {"passed": res.passed, "seconds": round(res.seconds, 3),
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in res.checks]}
    return report.document("verify", {"suite": args.suite}, results), EXIT_OK if res.passed else EXIT_FAIL


def cmd_recheck(args) -> tuple[dict, int]:
    doc = report.read(args.report)
    problems = report.verify_certificate(doc)
    return report.document("recheck", {"report": args.report}, {"passed": not problems, "problems": problems}), \
        EXIT_OK if not problems else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fpquiver", description="Hom/Ext, bricks and Frobenius-Perron dimension of bound quiver algebras.")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name: str, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="quiver file")
        sp.add_argument("--out", default=argparse.SUPPRESS)
        return sp

    sp = with_file("check", "admissibility and loop commutativity")
    sp.add_argument("--max-len", type=int, default=8)
    sp.set_defaults(func=cmd_check)

    for name, func, help_ in (("bricks", cmd_bricks, "enumerate bricks"),
                              ("fpdim", cmd_fpdim, "Frobenius-Perron lower bound from brick sets"),
                              ("loopcheck", cmd_loopcheck, "compare with the loop-reduced algebra")):
        sp = with_file(name, help_)
        sp.add_argument("--cap", help="per-vertex dimension cap, e.g. 2,2,2,2 (default all ones)")
        sp.add_argument("--field", help="prime p or Q (default from the file, else 2)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        if name == "fpdim":
            sp.add_argument("--max-set", type=int, default=3)
            sp.add_argument("--tol", type=float, default=1e-9)
        sp.set_defaults(func=func)

    sp = sub.add_parser("formula", help="closed-form radii")
    sp.add_argument("kind", choices=("case2", "case3", "root"))
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--factors", help='root:multiplicity list, e.g. "0:1,2:2"')
    sp.add_argument("--out", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("polyext", help="Ext^1 between one-dimensional polynomial representations")
    sp.add_argument("--r", type=int)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--field")
    sp.add_argument("--out", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_polyext)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=tuple(SUITES))
    sp.add_argument("--out", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("recheck", help="recompute a report certificate")
    sp.add_argument("report")
    sp.add_argument("--out", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_recheck)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, code = args.func(args)
    except (DSLError, QuiverError, EnumerationError, InputError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    report.write(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
