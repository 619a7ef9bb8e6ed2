"""Command-line front end.

Commands: spectrum | bound | count | verify | mixing-check.  Output formats:
table (default), json, csv.  Exit codes: 0 all checks passed, 1 a check
failed, 2 usage error (argparse's own), 3 enumeration budget exceeded.

JSON is canonical: keys sorted, rationals as {"num": "...", "den": "..."}
decimal strings plus a non-authoritative float "approx"; parsing and
re-serializing a report is byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import bounds, exactnum, forms, oracle, spectrum
from .bounds import QuadExt
from .linalg import BudgetError

CSV_COLUMNS = [
    "family",
    "eps",
    "sigma1",
    "sigma2",
    "e1",
    "e2",
    "q",
    "alpha1",
    "alpha2",
    "bound",
    "threshold",
    "pass",
    "method",
    "seconds",
]


def frac_jsonable(x: Fraction) -> dict:
    return {
        "num": str(x.numerator),
        "den": str(x.denominator),
        "approx": x.numerator / x.denominator,
    }


def quad_jsonable(x: QuadExt) -> dict:
    return {
        "a": frac_jsonable(x.a),
        "b": frac_jsonable(x.b),
        "sqrt_base": x.base,
        "approx": x.approx(),
    }


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def frac_str(x) -> str:
    if x is None:
        return ""
    if isinstance(x, QuadExt):
        if x.is_rational:
            return frac_str(x.as_fraction())
        return str(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _sign_str(s) -> str:
    return "" if s is None else exactnum.sign_char(s)


def bound_report_jsonable(rep: bounds.BoundReport) -> dict:
    return {
        "family": rep.family,
        "q": rep.q,
        "e1": rep.e1,
        "e2": rep.e2,
        "eps": _sign_str(rep.eps),
        "sigma1": _sign_str(rep.sigma1),
        "sigma2": _sign_str(rep.sigma2),
        "alpha1": frac_jsonable(rep.alpha1) if rep.alpha1 is not None else None,
        "alpha2": frac_jsonable(rep.alpha2) if rep.alpha2 is not None else None,
        "lower_bound": quad_jsonable(rep.lower_bound),
        "relaxed_bound": frac_jsonable(rep.relaxed_bound)
        if rep.relaxed_bound is not None
        else None,
        "threshold": frac_jsonable(rep.threshold),
        "pass": rep.passed,
        "tight": rep.tight,
        "formula_id": rep.formula_id,
        "note": rep.note,
        "seconds": round(rep.seconds, 6),
    }


def count_report_jsonable(rep: oracle.CountReport) -> dict:
    return {
        "case": rep.case,
        "y1_count": str(rep.y1_count),
        "y2_count": str(rep.y2_count),
        "pairs": str(rep.pairs),
        "proportion": frac_jsonable(rep.proportion),
        "threshold": frac_jsonable(rep.threshold) if rep.threshold is not None else None,
        "pass": rep.passed,
        "method": rep.method,
        "seed": rep.seed,
        "seconds": round(rep.seconds, 6),
    }


def _bound_csv_row(rep: bounds.BoundReport) -> dict:
    return {
        "family": rep.family,
        "eps": _sign_str(rep.eps),
        "sigma1": _sign_str(rep.sigma1),
        "sigma2": _sign_str(rep.sigma2),
        "e1": rep.e1,
        "e2": rep.e2,
        "q": rep.q,
        "alpha1": frac_str(rep.alpha1),
        "alpha2": frac_str(rep.alpha2),
        "bound": frac_str(rep.lower_bound),
        "threshold": frac_str(rep.threshold),
        "pass": rep.passed,
        "method": rep.formula_id,
        "seconds": f"{rep.seconds:.6f}",
    }


def _count_csv_row(rep: oracle.CountReport) -> dict:
    case = rep.case
    return {
        "family": case.get("kind", ""),
        "eps": case.get("eps", ""),
        "sigma1": case.get("sigma1", ""),
        "sigma2": case.get("sigma2", ""),
        "e1": case.get("e1", ""),
        "e2": case.get("e2", ""),
        "q": case.get("q", ""),
        "alpha1": "",
        "alpha2": "",
        "bound": frac_str(rep.proportion),
        "threshold": frac_str(rep.threshold) if rep.threshold is not None else "",
        "pass": rep.passed,
        "method": rep.method,
        "seconds": f"{rep.seconds:.6f}",
    }


def _emit_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _print_report(args, jsonable, csv_rows, table_lines):
    if args.format == "json":
        print(dumps_canonical(jsonable))
    elif args.format == "csv":
        sys.stdout.write(_emit_csv(csv_rows))
    else:
        for line in table_lines:
            print(line)


# -- commands -----------------------------------------------------------------


def cmd_spectrum(args) -> int:
    e1, e2 = max(args.e1, args.e2), min(args.e1, args.e2)
    closed = spectrum.eigen_exponents(e1, e2)
    via_chars = spectrum.eigen_exponents_via_characters(e1, e2)
    agree = closed == via_chars
    exps = closed.exponents
    lines = [f"graph: e1={e1} e2={e2} q={args.q} (regular degree {closed.degree(args.q)})"]
    lines.append("exponents m_j: " + ", ".join(str(m) for m in exps))
    lines.append(
        "eigenvalues: "
        + ", ".join(f"+-{spectrum.eigenvalue_str(args.q, m)}" for m in exps)
    )
    lines.append(f"character-route cross-check: {'ok' if agree else 'MISMATCH'}")
    jsonable = {
        "e1": e1,
        "e2": e2,
        "q": args.q,
        "exponents_twice": [m.twice for m in exps],
        "exponents": [str(m) for m in exps],
        "eigenvalues": [spectrum.eigenvalue_str(args.q, m) for m in exps],
        "character_route_agrees": agree,
    }
    _print_report(args, jsonable, [], lines)
    return 0 if agree else 1


def _require(args, names) -> bool:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        print(f"error: --{' --'.join(missing)} required for this family", file=sys.stderr)
        return False
    return True


def cmd_bound(args) -> int:
    fam = args.family
    if fam == "orthogonal":
        if not _require(args, ["eps", "sigma1", "sigma2"]):
            return 2
        if args.e1 % 2 or args.e2 % 2:
            print("error: orthogonal dimensions must be even", file=sys.stderr)
            return 2
        rep = bounds.bound_orthogonal(
            args.eps, args.sigma1, args.sigma2, args.e1 // 2, args.e2 // 2, args.q
        )
    elif fam == "symplectic":
        if args.e1 % 2 or args.e2 % 2:
            print("error: symplectic dimensions must be even", file=sys.stderr)
            return 2
        rep = bounds.bound_symplectic(args.e1 // 2, args.e2 // 2, args.q)
    else:
        rep = bounds.bound_unitary(args.e1, args.e2, args.q)
    lines = [
        f"{rep.label()}",
        f"alpha1 = {frac_str(rep.alpha1)}, alpha2 = {frac_str(rep.alpha2)}",
        f"lower bound = {rep.lower_bound} (~{rep.lower_bound.approx():.6f})",
        f"threshold = {frac_str(rep.threshold)}",
        ("PASS (equality)" if rep.tight else "PASS") if rep.passed else "FAIL",
    ]
    if rep.note:
        lines.append(f"note: {rep.note}")
        print(f"note: {rep.note}", file=sys.stderr)
    _print_report(args, bound_report_jsonable(rep), [_bound_csv_row(rep)], lines)
    return 0 if rep.passed else 1


def cmd_count(args) -> int:
    fam = args.family
    threshold = None
    if fam == "orthogonal":
        if not _require(args, ["eps", "sigma1", "sigma2"]):
            return 2
        form = forms.standard_form(forms.ORTHOGONAL, args.e1 + args.e2, args.q, args.eps)
        y1 = oracle.build_yset(form, args.e1, args.sigma1, args.budget, args.workers)
        y2 = oracle.build_yset(form, args.e2, args.sigma2, args.budget, args.workers)
        threshold = 1 - Fraction(3, 2 * args.q)
    elif fam == "symplectic":
        form = forms.standard_form(forms.SYMPLECTIC, args.e1 + args.e2, args.q)
        y1 = oracle.build_yset(form, args.e1, budget=args.budget, workers=args.workers)
        y2 = oracle.build_yset(form, args.e2, budget=args.budget, workers=args.workers)
        threshold = 1 - Fraction(10, 7 * args.q)
    else:
        form = forms.standard_form(forms.HERMITIAN, args.e1 + args.e2, args.q)
        y1 = oracle.build_yset(form, args.e1, budget=args.budget, workers=args.workers)
        y2 = oracle.build_yset(form, args.e2, budget=args.budget, workers=args.workers)
        if (args.e1, args.e2, args.q) == (1, 1, 2):
            threshold = Fraction(1, 2)
        else:
            threshold = 1 - Fraction(3, 2 * args.q**2)
    if args.full_pairs:
        rep = oracle.count_complementary(y1, y2, threshold, workers=args.workers)
    else:
        rep = oracle.count_complementary_transitive(y1, y2, threshold)
    lines = [
        f"case: {rep.case}",
        f"|Y1| = {rep.y1_count}, |Y2| = {rep.y2_count}, complementary pairs = {rep.pairs}",
        f"proportion = {frac_str(rep.proportion)} (~{float(rep.proportion):.6f})",
        f"threshold = {frac_str(rep.threshold)}",
        f"method = {rep.method}",
        "PASS" if rep.passed else "FAIL",
    ]
    _print_report(args, count_report_jsonable(rep), [_count_csv_row(rep)], lines)
    return 0 if rep.passed else 1


def cmd_verify(args) -> int:
    families = (
        ["orthogonal", "symplectic", "unitary"] if args.family == "all" else [args.family]
    )
    overall_failures = []
    all_bound_rows = []
    all_jsonable = {}
    lines = []
    for fam in families:
        kwargs = {}
        if fam == "orthogonal":
            kwargs = {
                "run_oracle": not args.skip_oracle,
                "full_pairs_d4": args.full_pairs,
                "workers": args.workers,
            }
        rep = bounds.verify_theorem(fam, **kwargs)
        overall_failures.extend(rep.failures)
        n_bound = len(rep.bound_reports)
        n_count = len(rep.count_reports)
        n_tail = len(rep.tail_checks)
        lines.append(
            f"{fam}: {'PASS' if rep.passed else 'FAIL'} "
            f"({n_bound} closed-form tuples, {n_count} oracle dispatches, {n_tail} tail checks)"
        )
        for f in rep.failures:
            lines.append(f"  FAILURE: {f}")
        all_bound_rows.extend(_bound_csv_row(r) for r in rep.bound_reports)
        all_bound_rows.extend(_count_csv_row(r) for r in rep.count_reports)
        all_jsonable[fam] = {
            "passed": rep.passed,
            "bound_reports": [bound_report_jsonable(r) for r in rep.bound_reports],
            "count_reports": [count_report_jsonable(r) for r in rep.count_reports],
            "tail_checks": [
                {
                    "name": t.name,
                    "q": t.q,
                    "value": frac_jsonable(t.value),
                    "threshold": frac_jsonable(t.threshold),
                    "pass": t.passed,
                }
                for t in rep.tail_checks
            ],
            "failures": rep.failures,
        }
    _print_report(args, all_jsonable, all_bound_rows, lines)
    if overall_failures:
        print(f"first failure: {overall_failures[0]}", file=sys.stderr)
        return 1
    return 0


def cmd_mixing_check(args) -> int:
    reports = oracle.mixing_suite(args.e1, args.e2, args.q, args.trials, args.seed)
    bad = [r for r in reports if not r.holds or r.charpoly_ok is False]
    lines = [
        f"mixing suite on e1={args.e1} e2={args.e2} q={args.q}: "
        f"{len(reports)} subset pairs, seed={args.seed}",
        f"inequality held: {len(reports) - len(bad)}/{len(reports)}"
        + (f", {sum(1 for r in reports if r.tight)} with equality" if reports else ""),
        "PASS" if not bad else "FAIL",
    ]
    jsonable = {
        "e1": args.e1,
        "e2": args.e2,
        "q": args.q,
        "seed": args.seed,
        "trials": args.trials,
        "all_hold": not bad,
        "tight_cases": sum(1 for r in reports if r.tight),
        "charpoly_checked": sum(1 for r in reports if r.charpoly_ok is not None),
    }
    _print_report(args, jsonable, [], lines)
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oppmix",
        description="Exact spectra and density bounds for complementary-subspace graphs "
        "over finite classical spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_case=True):
        p.add_argument("--format", choices=["table", "json", "csv"], default="table")
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        p.add_argument("--budget", type=int, default=oracle.DEFAULT_ENUM_BUDGET)
        p.add_argument("--seed", type=int, default=0)
        if with_case:
            p.add_argument("--e1", type=int, required=True)
            p.add_argument("--e2", type=int, required=True)
            p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("spectrum", help="distinct eigenvalues of the bipartite graph")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bound", help="closed-form lower bound for one case")
    common(p)
    p.add_argument("--family", choices=["orthogonal", "symplectic", "unitary"], required=True)
    p.add_argument("--eps", type=exactnum.parse_sign, default=None)
    p.add_argument("--sigma1", type=exactnum.parse_sign, default=None)
    p.add_argument("--sigma2", type=exactnum.parse_sign, default=None)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("count", help="exact enumeration of one case")
    common(p)
    p.add_argument("--family", choices=["orthogonal", "symplectic", "unitary"], required=True)
    p.add_argument("--eps", type=exactnum.parse_sign, default=None)
    p.add_argument("--sigma1", type=exactnum.parse_sign, default=None)
    p.add_argument("--sigma2", type=exactnum.parse_sign, default=None)
    p.add_argument("--full-pairs", action="store_true", help="count every pair (no orbit shortcut)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run a family's theorem sweep")
    common(p, with_case=False)
    p.add_argument(
        "--family",
        choices=["orthogonal", "symplectic", "unitary", "all"],
        required=True,
    )
    p.add_argument("--full-pairs", action="store_true", help="cross-check d=4 exceptions with all pairs")
    p.add_argument("--skip-oracle", action="store_true", help="closed-form sweep only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mixing-check", help="exact mixing-lemma property suite")
    common(p)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_mixing_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
