"""Command-line interface: ``report``, ``family`` and ``verify``.

Exit status is 0 on success, 2 for input errors (including curvature
requested for a degenerate index) and 3 when a verification check fails.
"""

import argparse
import csv
import json
import sys

from .report import FAMILY_COLUMNS, build_report, cell, family_rows
from .verification import VerifyConfig, run_checks

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3


def _cmd_report(args, out):
    try:
        rep = build_report(
            args.p,
            args.q,
            oracle_budget=args.oracle_budget or None,
            seed=args.seed,
            curvature=not args.no_curvature,
        )
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.write(rep.to_text())
    if rep.document["curvature"]["status"] == "refused":
        print(f"error: curvature refused: {rep.document['curvature']['reason']}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _write_family(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(FAMILY_COLUMNS)
    for row in rows:
        w.writerow([cell(row[c]) for c in FAMILY_COLUMNS])


def _cmd_family(args, out):
    try:
        rows = family_rows(args.n_max)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            _write_family(rows, fh)
    else:
        _write_family(rows, out)
    return EXIT_OK


def _cmd_verify(args, out):
    if args.budget < 1000:
        print("error: --budget must be at least 1000", file=sys.stderr)
        return EXIT_INPUT
    cfg = VerifyConfig(budget=args.budget, seed=args.seed, tol=args.tol)
    results = run_checks(cfg)
    for r in results:
        print(r.line(), file=sys.stderr)
    summary = {
        "passed": all(r.passed for r in results),
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    out.write(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK if summary["passed"] else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="aloffwallach", description="Geometry of Aloff-Wallach spaces W(p, q).")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="volume, curvature and injectivity bounds for one W(p, q)")
    rep.add_argument("--p", type=int, required=True)
    rep.add_argument("--q", type=int, required=True)
    rep.add_argument("--oracle-budget", type=int, default=10_000, help="planes screened by the oracle; 0 disables it")
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--no-curvature", action="store_true", help="report volume bounds only")
    rep.set_defaults(func=_cmd_report)

    fam = sub.add_parser("family", help="CSV table along W(n, n+1)")
    fam.add_argument("--n-max", type=int, required=True)
    fam.add_argument("--csv", metavar="PATH", help="write to PATH instead of stdout")
    fam.set_defaults(func=_cmd_family)

    ver = sub.add_parser("verify", help="run all oracle-versus-closed-form checks")
    ver.add_argument("--budget", type=int, default=10_000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--tol", type=float, default=1e-3, help="oracle agreement tolerance")
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    return args.func(args, out or sys.stdout)


def main_entry():
    sys.exit(main())
