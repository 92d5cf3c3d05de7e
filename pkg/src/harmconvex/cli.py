"""Command-line front end: verify, coeff, sweep, means.

Exit codes: 0 when every checked statement holds, 1 when a bound is
violated, 2 on usage or domain errors. JSON is the primary output format;
CSV is available for sweep rows only.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import coefficients as coeffs
from . import means
from .convexity import SampleScheme
from .errors import HarmconvexError
from .functions import REGISTRY_FORMS, resolve
from .inequalities import check_hypothesis
from .reports import VerificationReport
from .sweep import SWEEPABLE_STATEMENTS, SweepConfig, run_sweep, to_csv_bytes, to_json_bytes
from .sweep import evaluate_statement

VERIFY_STATEMENTS = SWEEPABLE_STATEMENTS

_HYPOTHESIS_STATEMENTS = ("eq-1-1", "eq-1-4", "thm-2.2", "thm-2.3", "thm-2.4", "thm-2.5")

_FN_STATEMENTS = tuple(s for s in VERIFY_STATEMENTS if not s.startswith("prop-"))


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_verify(args) -> int:
    statement = args.statement
    f = None
    if statement in _FN_STATEMENTS:
        if not args.fn:
            raise HarmconvexError(f"statement {statement} requires --fn")
        f = resolve(args.fn)
    elif args.fn:
        raise HarmconvexError(f"statement {statement} does not take --fn")
    report = evaluate_statement(
        statement,
        f,
        args.a,
        args.b,
        alpha=args.alpha,
        m=args.m,
        q=args.q,
        p=args.p,
        tolerance=args.tolerance,
    )
    if args.check_hypothesis and statement in _HYPOTHESIS_STATEMENTS:
        hyp = check_hypothesis(statement, f, args.a, args.b, args.alpha, args.m, args.q)
        tag = "hypothesis holds (no violation found)" if hyp.holds else "hypothesis violated"
        report.notes.append(f"{tag}: {hyp.statement_id}")
        if not hyp.holds and hyp.counterexample:
            report.notes.append(f"hypothesis counterexample: {json.dumps(hyp.counterexample)}")
    _emit(report.to_json(), args.output)
    return 0 if report.holds else 1


def _cmd_coeff(args) -> int:
    sets = coeffs.coefficient_sets(args.family, args.a, args.b, alpha=args.alpha, q=args.q)
    rows = []
    for cs in sets:
        row = {
            "name": cs.name,
            "value": cs.value,
            "provenance": cs.provenance,
            "a": cs.a,
            "b": cs.b,
            "alpha": cs.alpha,
            "q": cs.q,
        }
        rows.append(row)
    if args.oracle:
        oracle_sets = coeffs.coefficient_sets(
            args.family, args.a, args.b, alpha=args.alpha, q=args.q, oracle=True
        )
        for row, ocs in zip(rows, oracle_sets):
            row["oracle_value"] = ocs.value
            row["relative_difference"] = abs(row["value"] - ocs.value) / max(1.0, abs(row["value"]))
    _emit(json.dumps(rows, indent=2), args.output)
    return 0


def _cmd_sweep(args) -> int:
    cfg = SweepConfig(
        seed=args.seed,
        count=args.count,
        statements=tuple(args.statement),
        functions=tuple(args.fn) if args.fn else ("pow:0.5",),
        a_range=tuple(args.a_range),
        b_range=tuple(args.b_range),
        alpha_range=tuple(args.alpha_range),
        m_range=tuple(args.m_range),
        q_range=tuple(args.q_range),
        tolerance=args.tolerance,
        check_hypothesis=args.check_hypothesis,
    )
    result = run_sweep(cfg)
    payload = to_csv_bytes(result) if args.format == "csv" else to_json_bytes(result)
    if args.output:
        try:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(payload)
    return result.exit_code


def _cmd_means(args) -> int:
    a, b, alpha, q = args.a, args.b, args.alpha, args.q
    table = {
        "A_w": means.mean("A_w", a, b, weight=alpha),
        "A": means.mean("A", a, b),
        "G": means.mean("G", a, b),
        "H": means.mean("H", a, b),
        "L_p": means.mean("L_p", a, b, p=args.p if args.p is not None else q),
    }
    reports = [
        means.check_prop31(a, b, alpha, args.tolerance),
        means.check_prop32(a, b, alpha, q, args.tolerance),
        means.check_prop33(a, b, alpha, q, args.tolerance),
        means.check_prop34(a, b, alpha, q, args.p, args.tolerance),
    ]
    doc = {"means": table, "propositions": [r.to_dict() for r in reports]}
    _emit(json.dumps(doc, indent=2), args.output)
    return 0 if all(r.holds for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmconvex",
        description=(
            "Verify harmonic-mean convexity inequalities, print coefficient tables "
            "with quadrature oracles, and run seeded fuzz sweeps."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tolerance", type=float, default=1e-9, help="margin tolerance (default 1e-9)")
        p.add_argument("--output", help="write the result to this path instead of stdout")

    pv = sub.add_parser("verify", help="evaluate one statement and report both sides")
    pv.add_argument("statement", choices=VERIFY_STATEMENTS)
    pv.add_argument("--fn", help=f"registry function, one of: {', '.join(REGISTRY_FORMS)}")
    pv.add_argument("--a", type=float, required=True)
    pv.add_argument("--b", type=float, required=True)
    pv.add_argument("--alpha", type=float, default=1.0)
    pv.add_argument("--m", type=float, default=1.0)
    pv.add_argument("--q", type=float, default=1.0)
    pv.add_argument("--p", type=float, default=None, help="conjugate exponent (prop-3.4 only)")
    pv.add_argument("--check-hypothesis", action="store_true", help="also run the convexity hypothesis check")
    common(pv)
    pv.set_defaults(handler=_cmd_verify)

    pc = sub.add_parser("coeff", help="print one coefficient family, optionally with its oracle")
    pc.add_argument("family", choices=("lambda", "mu", "nu", "lambda123", "mu12"))
    pc.add_argument("--alpha", type=float, default=None)
    pc.add_argument("--q", type=float, default=None)
    pc.add_argument("--a", type=float, required=True)
    pc.add_argument("--b", type=float, required=True)
    pc.add_argument("--oracle", action="store_true", help="also print the quadrature oracle column")
    common(pc)
    pc.set_defaults(handler=_cmd_coeff)

    ps = sub.add_parser("sweep", help="seeded fuzz sweep over statements and functions")
    ps.add_argument("--statement", action="append", required=True, choices=SWEEPABLE_STATEMENTS)
    ps.add_argument("--fn", action="append", help="registry function (repeatable)")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--count", type=int, default=100)
    ps.add_argument("--a-range", nargs=2, type=float, default=(0.5, 2.0), metavar=("LO", "HI"))
    ps.add_argument("--b-range", nargs=2, type=float, default=(1.0, 4.0), metavar=("LO", "HI"))
    ps.add_argument("--alpha-range", nargs=2, type=float, default=(0.0, 1.0), metavar=("LO", "HI"))
    ps.add_argument("--m-range", nargs=2, type=float, default=(0.25, 1.0), metavar=("LO", "HI"))
    ps.add_argument("--q-range", nargs=2, type=float, default=(1.0, 3.0), metavar=("LO", "HI"))
    ps.add_argument("--format", choices=("json", "csv"), default="json")
    ps.add_argument("--check-hypothesis", action="store_true")
    common(ps)
    ps.set_defaults(handler=_cmd_sweep)

    pm = sub.add_parser("means", help="print the five means and the four proposition reports")
    pm.add_argument("--a", type=float, required=True)
    pm.add_argument("--b", type=float, required=True)
    pm.add_argument("--alpha", type=float, required=True)
    pm.add_argument("--q", type=float, default=2.0)
    pm.add_argument("--p", type=float, default=None)
    common(pm)
    pm.set_defaults(handler=_cmd_means)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except HarmconvexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
