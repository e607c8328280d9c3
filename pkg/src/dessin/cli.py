"""Command-line surface: exact computations and verification suites.

Exit codes: 0 success (or all checks passed), 1 verification failure,
2 usage error.  Output is JSON by default (``--format text`` for a human
rendering) and deterministic given the arguments; with ``--seedless`` the
elapsed-time field is omitted so re-runs are byte-identical.

The Virasoro memo table persists as a versioned JSON cache.  Resolution
order for its directory: ``--cache PATH`` flag, then the
``DESSIN_CACHE_DIR`` environment variable, then ``./.dessin-cache``.
A warm cache can only change timings, never a reported value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Tuple

from . import airy, closedforms
from .eo import ALPHA, BETA, EOEngine
from .laurent import LaurentPolynomial
from .npoint import index_tuples
from .report import VerificationReport, run_comparisons
from .virasoro import CacheFormatError, CorrelatorTable, VirasoroEngine

CACHE_FILE = "correlators.json"

CLOSED_FORM_TARGETS = {"G01": (0, 1), "G02": (0, 2), "G03": (0, 3), "G11": (1, 1)}


# -- cache plumbing ------------------------------------------------------------


def resolve_cache_dir(flag: Optional[str]) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get("DESSIN_CACHE_DIR")
    if env:
        return Path(env)
    return Path(".dessin-cache")


def load_engine(cache_dir: Path) -> VirasoroEngine:
    path = cache_dir / CACHE_FILE
    if path.exists():
        return VirasoroEngine(CorrelatorTable.load(path))
    return VirasoroEngine()


def save_engine(cache_dir: Path, engine: VirasoroEngine) -> None:
    cache_dir.mkdir(parents=True, exist_ok=True)
    engine.table.save(cache_dir / CACHE_FILE)


# -- verification suite matrix ---------------------------------------------------


def _frozen_one_point_fixtures():
    S, U, V = closedforms.S, closedforms.U, closedforms.V
    return {
        1: S * U * V,
        2: S ** 2 * U * V * (U + V),
        3: S ** 3 * U * V * (U ** 2 + 3 * U * V + V ** 2),
        4: S ** 4 * U * V * (U ** 3 + 6 * U ** 2 * V + 6 * U * V ** 2 + V ** 3),
        5: S ** 5 * U * V * (U ** 4 + 10 * U ** 3 * V + 20 * U ** 2 * V ** 2 + 10 * U * V ** 3 + V ** 4),
    }


def suite_one_point_fixtures(vir: VirasoroEngine) -> VerificationReport:
    fixtures = _frozen_one_point_fixtures()
    return run_comparisons(
        "one-point-fixtures",
        {"n_max": 5},
        ((n, expected, vir.weighted_correlator(0, (n,))) for n, expected in fixtures.items()),
    )


def suite_narayana_law(vir: VirasoroEngine, n_max: int) -> VerificationReport:
    def comparisons():
        for n in range(1, n_max + 1):
            yield ((n, "row"), closedforms.narayana_one_point_law(n), vir.weighted_correlator(0, (n,)))
            row_sum = sum(closedforms.narayana(n, k) for k in range(1, n + 1))
            yield ((n, "catalan"), closedforms.catalan(n), row_sum)

    return run_comparisons("narayana-law", {"n_max": n_max}, comparisons())


def suite_closed_form(vir: VirasoroEngine, which: str, order: int) -> VerificationReport:
    which = which.upper()
    if which not in CLOSED_FORM_TARGETS:
        raise KeyError(f"unknown closed form {which!r}; expected one of {', '.join(CLOSED_FORM_TARGETS)}")
    g, n = CLOSED_FORM_TARGETS[which]
    closed = closedforms.dessin_closed_series(which, order)
    direct = vir.npoint_series(g, n, order)
    return run_comparisons(
        f"closed-form:{which}",
        {"which": which, "g": g, "n": n, "order": order},
        ((key, closed.coefficient(key), direct.coefficient(key)) for key in index_tuples(n, order)),
    )


def suite_eo_base(eo: EOEngine) -> VerificationReport:
    gap2inv = LaurentPolynomial.monomial(Fraction(1, 16), {"a": -2, "b": -2})
    w03_expected = (BETA * LaurentPolynomial.monomial(1, {"z1": -2, "z2": -2, "z3": -2}) - ALPHA) * gap2inv
    z1 = LaurentPolynomial.variable("z1")
    inv8 = LaurentPolynomial.monomial(Fraction(1, 128), {"a": -2, "b": -2})
    w11_expected = inv8 * (
        BETA * LaurentPolynomial.monomial(1, {"z1": -4})
        - (2 * BETA + ALPHA) * LaurentPolynomial.monomial(1, {"z1": -2})
        + (2 * ALPHA + BETA)
        - ALPHA * z1 ** 2
    )
    return run_comparisons(
        "eo-base",
        {},
        [
            ((0, 3), w03_expected, eo.omega(0, 3).poly),
            ((1, 1), w11_expected, eo.omega(1, 1).poly),
        ],
    )


def suite_t_rows(n_max: int = 20) -> VerificationReport:
    def comparisons():
        yield ("row0", [1], [int(x) for x in airy.t_row(0).values])
        yield ("row1", [2, 2], [int(x) for x in airy.t_row(1).values])
        yield ("row2", [5, 6, 5], [int(x) for x in airy.t_row(2).values])
        for n in range(n_max + 1):
            row = airy.t_row(n)  # integrality asserted inside
            yield ((n, "symmetric"), tuple(row.values), tuple(reversed(row.values)))

    return run_comparisons("t-rows", {"n_max": n_max}, comparisons())


SuiteRunner = Callable[[], List[VerificationReport]]


def acceptance_matrix() -> List[Tuple[str, int, SuiteRunner]]:
    """The full verification matrix: (name, required order budget, runner)."""

    def fresh_vir() -> VirasoroEngine:
        return VirasoroEngine()

    entries: List[Tuple[str, int, SuiteRunner]] = [
        ("one-point-fixtures", 6, lambda: [suite_one_point_fixtures(fresh_vir())]),
        ("narayana-law", 26, lambda: [suite_narayana_law(fresh_vir(), 25)]),
        ("two-point-closed", 12, lambda: [suite_closed_form(fresh_vir(), "G02", 12)]),
        (
            "fixture-forms",
            10,
            lambda: [suite_closed_form(fresh_vir(), "G03", 10), suite_closed_form(fresh_vir(), "G11", 10)],
        ),
        ("eo-base", 4, lambda: [suite_eo_base(EOEngine())]),
        (
            "main-theorem",
            10,
            lambda: (
                lambda vir, eo: [eo.verify_main_theorem(g, n, 10, vir) for g, n in
                                 [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 1)]]
            )(fresh_vir(), EOEngine()),
        ),
        ("kp-oracle", 12, lambda: [fresh_vir().kp_oracle_report(12)]),
        (
            "operator-form",
            8,
            lambda: (
                lambda vir: [vir.operator_form_report(g, n, 8) for g, n in [(0, 2), (1, 0), (1, 1)]]
            )(fresh_vir()),
        ),
        (
            "airy-local",
            6,
            lambda: [suite_t_rows(20)] + [airy.local_identity_check(name, 6) for name in airy.local_identity_names()],
        ),
        (
            "catalog",
            12,
            lambda: [
                closedforms.catalog_check("hermitian/one", 12),
                closedforms.catalog_check("hermitian/two", 8),
                closedforms.catalog_check("wk/one", 8),
                closedforms.catalog_check("wk/two", 8),
                closedforms.catalog_check("even-coupling/one", 10),
                closedforms.catalog_check("even-coupling/two", 10),
            ],
        ),
        (
            "identities",
            10,
            lambda: [closedforms.gf_identity_check(name, 10) for name in closedforms.identity_names()],
        ),
    ]
    return entries


def suite_all(order_budget: int, jobs: int = 1):
    """Run every suite whose required order fits the budget; others are skipped."""
    matrix = acceptance_matrix()
    results = []

    def run_one(entry):
        name, required, runner = entry
        if required > order_budget:
            return name, "skipped", []
        reports = runner()
        status = "pass" if all(r.passed for r in reports) else "fail"
        return name, status, reports

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, matrix))
    else:
        results = [run_one(entry) for entry in matrix]
    return results


# -- output helpers ---------------------------------------------------------------


def emit(obj, fmt: str, text_renderer=None) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text_renderer(obj) if text_renderer else obj)


def render_report_text(payload: dict) -> str:
    status = payload["status"].upper()
    params = " ".join(f"{k}={v}" for k, v in payload["parameters"].items())
    line = f"{status} {payload['suite']} {params} ({payload['checked_count']} checks)"
    if payload.get("first_discrepancy"):
        d = payload["first_discrepancy"]
        line += f"\n  first discrepancy at {d['location']}: expected {d['expected']}, got {d['actual']}"
    return line


def report_payload(report: VerificationReport, seedless: bool) -> dict:
    return report.to_json(include_elapsed=not seedless)


# -- command implementations -------------------------------------------------------


def cmd_correlator(args) -> int:
    parts = _parse_parts(args.parts)
    cache_dir = resolve_cache_dir(args.cache)
    engine = load_engine(cache_dir)
    value = (
        engine.weighted_correlator(args.genus, parts)
        if args.weighted
        else engine.raw_correlator(args.genus, parts)
    )
    save_engine(cache_dir, engine)
    payload = {
        "genus": args.genus,
        "parts": sorted(parts),
        "weighted": bool(args.weighted),
        "poly": value.to_json(("s", "u", "v")),
    }
    emit(payload, args.format, lambda p: str(value))
    return 0


def cmd_npoint(args) -> int:
    cache_dir = resolve_cache_dir(args.cache)
    engine = load_engine(cache_dir)
    series = engine.npoint_series(args.genus, args.n, args.order)
    save_engine(cache_dir, engine)
    payload = series.to_json()
    emit(payload, args.format, lambda p: "\n".join(
        f"{key}: {series.coefficient(key)}" for key in series.keys()
    ))
    return 0


def cmd_eo(args) -> int:
    form = EOEngine().omega(args.g, args.n)
    emit(form.to_json(), args.format, lambda p: str(form.poly))
    return 0


def cmd_expand(args) -> int:
    series = closedforms.dessin_closed_series(args.which, args.order)
    payload = series.to_json()
    emit(payload, args.format, lambda p: "\n".join(
        f"{key}: {series.coefficient(key)}" for key in series.keys()
    ))
    return 0


def cmd_times(args) -> int:
    y = airy.y_branch_series(args.branch, args.order)
    payload = {
        "branch": args.branch,
        "order": args.order,
        "alphabet": ["qs", "qa", "qb", "r"],
        "coefficients": [
            {"k": k, "poly": c.to_json(("qs", "qa", "qb", "r"))} for k, c in y.items()
        ],
    }
    emit(payload, args.format, lambda p: "\n".join(f"xi^{k}: {c}" for k, c in y.items()))
    return 0


def cmd_identity(args) -> int:
    report = closedforms.gf_identity_check(args.name, args.order)
    payload = {
        "name": args.name,
        "order": args.order,
        "status": report.status,
        "first_discrepancy": report.first_discrepancy,
        **({} if args.seedless else {"elapsed_ms": report.elapsed_ms}),
    }
    emit(payload, args.format, lambda p: f"{report.status.upper()} {args.name} order={args.order}")
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    if args.list:
        names = {
            "suites": [name for name, _, _ in acceptance_matrix()]
            + ["main-theorem", "operator-form", "kp-oracle", "closed-form", "curve-identity", "catalog", "local", "identity"],
            "identities": closedforms.identity_names(),
            "catalog": closedforms.catalog_names(),
            "local": airy.local_identity_names(),
            "closed-forms": sorted(CLOSED_FORM_TARGETS),
        }
        names["suites"] = sorted(set(names["suites"]))
        emit(names, args.format, lambda p: "\n".join(f"{k}: {', '.join(v)}" for k, v in names.items()))
        return 0

    if args.all:
        budget = args.order_budget if args.order_budget is not None else 26
        results = suite_all(budget, jobs=args.jobs)
        failed = 0
        lines = []
        for name, status, reports in results:
            if status == "skipped":
                lines.append({"suite": name, "status": "skipped"})
                continue
            if status == "fail":
                failed += 1
            for report in reports:
                lines.append(report_payload(report, args.seedless))
        summary = {
            "total": len(results),
            "passed": sum(1 for _, sta, _ in results if sta == "pass"),
            "failed": sum(1 for _, sta, _ in results if sta == "fail"),
            "skipped": sum(1 for _, sta, _ in results if sta == "skipped"),
        }
        if args.format == "json":
            print(json.dumps({"reports": lines, "summary": summary}, indent=2))
        else:
            for payload in lines:
                print(render_report_text(payload) if "parameters" in payload else f"SKIPPED {payload['suite']}")
            print(f"summary: {summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped")
        return 0 if failed == 0 else 1

    if not args.suite:
        raise UsageError("verify needs --suite NAME, --all or --list")

    report = _run_named_suite(args)
    payload = report_payload(report, args.seedless)
    emit(payload, args.format, render_report_text)
    return 0 if report.passed else 1


def _run_named_suite(args) -> VerificationReport:
    suite = args.suite
    order = args.order
    if suite == "main-theorem":
        _need(args, "g", "n")
        return EOEngine().verify_main_theorem(args.g, args.n, order or 10, _engine_for(args))
    if suite == "operator-form":
        _need(args, "g", "n")
        return _engine_for(args).operator_form_report(args.g, args.n - 1, order or 8)
    if suite == "kp-oracle":
        return _engine_for(args).kp_oracle_report(order or 12)
    if suite == "closed-form":
        if not args.which:
            raise UsageError("closed-form suite needs --which G01|G02|G03|G11")
        return suite_closed_form(_engine_for(args), args.which, order or 10)
    if suite == "curve-identity":
        return EOEngine().curve_identity_report(order or 20)
    if suite == "narayana-law":
        return suite_narayana_law(_engine_for(args), order or 25)
    if suite == "one-point-fixtures":
        return suite_one_point_fixtures(_engine_for(args))
    if suite == "eo-base":
        return suite_eo_base(EOEngine())
    if suite == "t-rows":
        return suite_t_rows(order or 20)
    if suite == "catalog":
        if not args.name:
            raise UsageError("catalog suite needs --name THEORY/POINTS")
        return closedforms.catalog_check(args.name, order or 8)
    if suite == "local":
        if not args.name:
            raise UsageError("local suite needs --name IDENTITY")
        return airy.local_identity_check(args.name, order or 6)
    if suite == "identity":
        if not args.name:
            raise UsageError("identity suite needs --name IDENTITY")
        return closedforms.gf_identity_check(args.name, order or 10)
    raise UsageError(f"unknown suite {suite!r}; run verify --list for valid names")


def _engine_for(args) -> VirasoroEngine:
    cache_dir = resolve_cache_dir(getattr(args, "cache", None))
    engine = load_engine(cache_dir)
    return engine


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"suite {args.suite!r} needs --{name}")


def cmd_cache(args) -> int:
    cache_dir = resolve_cache_dir(args.cache)
    path = cache_dir / CACHE_FILE
    if args.action == "info":
        entries = 0
        if path.exists():
            entries = len(CorrelatorTable.load(path))
        emit(
            {"path": str(path), "exists": path.exists(), "entries": entries},
            args.format,
            lambda p: f"{path}: {'%d entries' % entries if path.exists() else 'absent'}",
        )
        return 0
    if args.action == "clear":
        existed = path.exists()
        if existed:
            path.unlink()
        emit({"path": str(path), "removed": existed}, args.format, lambda p: f"removed: {existed}")
        return 0
    if args.action == "warm":
        engine = load_engine(cache_dir)
        order = args.order or 10
        for n in range(1, 3):
            for g in range(0, 3):
                if 2 * g - 2 + n > 0 or (g, n) in ((0, 1), (0, 2)):
                    engine.npoint_series(g, n, order)
        save_engine(cache_dir, engine)
        emit({"path": str(path), "entries": len(engine.table)}, args.format,
             lambda p: f"{path}: {len(engine.table)} entries")
        return 0
    raise UsageError(f"unknown cache action {args.action!r}")


class UsageError(Exception):
    pass


def _parse_parts(text: str):
    try:
        parts = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise UsageError(f"cannot parse --parts {text!r}: {exc}") from exc
    if not parts or any(a < 1 for a in parts):
        raise UsageError("--parts needs a comma-separated list of positive integers")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dessin",
        description="Exact dessin correlators: Virasoro recursion, topological recursion, and identity suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cache=False):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seedless", action="store_true",
                       help="omit timing fields so output is byte-identical across runs")
        if cache:
            p.add_argument("--cache", help="cache directory (overrides DESSIN_CACHE_DIR)")

    p = sub.add_parser("correlator", help="one correlator value")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--parts", required=True, help="comma-separated positive integers, e.g. 1,2,2")
    p.add_argument("--weighted", action="store_true", help="multiply by the product of the parts")
    common(p, cache=True)
    p.set_defaults(func=cmd_correlator)

    p = sub.add_parser("npoint", help="truncated n-point expansion from the recursion")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    common(p, cache=True)
    p.set_defaults(func=cmd_npoint)

    p = sub.add_parser("eo", help="a topological-recursion differential w_{g,n}")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_eo)

    p = sub.add_parser("expand", help="expand a closed form (G01, G02, G03, G11)")
    p.add_argument("--which", required=True)
    p.add_argument("--order", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("times", help="local branch-point expansion coefficients of y")
    p.add_argument("--branch", choices=("plus", "minus"), required=True)
    p.add_argument("--order", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_times)

    p = sub.add_parser("identity", help="check one generating-function identity")
    p.add_argument("--name", required=True)
    p.add_argument("--order", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite")
    p.add_argument("--list", action="store_true", help="list suites and identity names")
    p.add_argument("--all", action="store_true", help="run the full acceptance matrix")
    p.add_argument("--order-budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--which")
    p.add_argument("--name")
    common(p, cache=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", help="inspect or manage the correlator cache")
    p.add_argument("action", choices=("info", "clear", "warm"))
    p.add_argument("--order", type=int)
    common(p, cache=True)
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except (KeyError, ValueError, CacheFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
