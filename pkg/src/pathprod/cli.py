"""Command line front end: multiplication tables, check suites and scenario reports.

Exit codes: 0 when every check passes, 1 when a property check fails, 2 on
usage or catalog errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import CatalogError, default_catalog_path, load_catalog
from .graded import TruncationError
from .liegroup import ScenarioError, distinguish_module_structures, verify_counterexample
from .loops import LoopModelError
from .manifold import ManifoldError, diagonal_class
from .presentations import DEFAULT_TRUNCATION, PresentationError
from .report import CheckResult, Report
from .scalars import QQ, GF, Field
from .stringtop import (check_algebra_over_cs, check_module, check_mu_beta, check_path_ring,
                        check_ring, module_generators_check, mu_beta_table,
                        standard_generators)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TABLE_OPS = ("intersection", "mu_beta", "pontryagin", "cs", "mu_n_omega", "nu")
TRUNCATED = "…"


class UsageError(Exception):
    pass


def parse_field(text: str) -> Field:
    if text.upper() in ("QQ", "Q", "0"):
        return QQ
    try:
        return GF(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be QQ or a prime, got {text!r}") from None


def _window(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("--max-degree must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--max-degree", type=_window, default=DEFAULT_TRUNCATION,
                        help="truncation window (default %(default)s)")
    common.add_argument("--field", type=parse_field, default=QQ,
                        help="coefficient field: QQ or a prime p (default QQ)")
    common.add_argument("--catalog", default=None,
                        help="catalog JSON file (default: $PATHPROD_CATALOG or the built-in one)")

    parser = argparse.ArgumentParser(prog="pathprod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print a multiplication table")
    p.add_argument("--op", required=True, choices=TABLE_OPS)
    p.add_argument("--manifold")
    p.add_argument("--loops")
    p.add_argument("--free-loop")
    p.add_argument("--model")

    p = sub.add_parser("check", parents=[common], help="run ring, module and algebra suites")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--model")
    g.add_argument("--manifold")
    g.add_argument("--loops")
    g.add_argument("--map")

    p = sub.add_parser("counterexample", parents=[common],
                       help="SU2 in SU(n): the path product is not an algebra over the loop product")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("distinguish", parents=[common],
                       help="SU2 in SU(n): subgroup and null-homotopic module structures differ")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("series", parents=[common], help="compare Poincaré series of two entries")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("generators", parents=[common], help="finite generation of a path model")
    p.add_argument("--model", required=True)
    p.add_argument("--set", dest="loop_set", default=None,
                   help="comma-separated loop classes; default: the catalog's generator sets")
    return parser


def _load(args):
    path = args.catalog if args.catalog is not None else default_catalog_path()
    return load_catalog(path, window=args.max_degree, field=args.field)


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for --op {args.op}")
    return value


def _sorted(space):
    return space.sorted_basis()


def table_data(args, cat) -> dict:
    """Resolve ``--op`` to a bilinear table and list its entries on sorted bases."""
    op = args.op
    if op == "intersection":
        M = cat.lookup("manifolds", _need(args, "manifold"))
        table, left, right = M.intersection_table, M.homology, M.homology
    elif op == "mu_beta":
        M = cat.lookup("manifolds", _need(args, "manifold"))
        table, left, right = mu_beta_table(M), M.pair_space, M.pair_space
    elif op == "pontryagin":
        L = cat.lookup("loop_spaces", _need(args, "loops"))
        table, left, right = L.ring.table, L.space, L.space
    elif op == "cs":
        F = cat.lookup("free_loops", _need(args, "free_loop"))
        try:
            table = F.cs_table
        except LoopModelError as exc:
            raise UsageError(str(exc)) from None
        left = right = F.space
    elif op == "mu_n_omega":
        P = cat.lookup("models", _need(args, "model"))
        table, left, right = P.mu_table, P.space, P.space
    else:
        P = cat.lookup("models", _need(args, "model"))
        if P.free_loop is None:
            raise UsageError(f"model {args.model} has no free loop model")
        table, left, right = P.nu_table, P.free_loop.space, P.space
    rows, cols = _sorted(left), _sorted(right)
    entries = []
    for u in rows:
        line = []
        for v in cols:
            try:
                val = table.on_basis(u, v)
            except TruncationError:
                line.append(None)
                continue
            line.append(str(val))
        entries.append(line)
    return {"op": op, "table": table.name, "window": args.max_degree, "field": repr(args.field),
            "shift": table.shift, "rows": [s.name for s in rows], "columns": [s.name for s in cols],
            "row_degrees": [s.degree for s in rows], "column_degrees": [s.degree for s in cols],
            "entries": entries}


def format_table(data: dict) -> str:
    head = [f"table {data['op']}: {data['table']}",
            f"window: max degree {data['window']}  field: {data['field']}  "
            f"degree shift: {data['shift']}",
            f"rows act on the left; {TRUNCATED} marks entries beyond the window"]
    grid = [[""] + data["columns"]]
    for name, line in zip(data["rows"], data["entries"]):
        grid.append([name] + [TRUNCATED if v is None else v for v in line])
    widths = [max(len(r[i]) for r in grid) for i in range(len(grid[0]))]
    body = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in grid]
    return "\n".join(head + body)


def _expect(result: CheckResult, expect: bool, label: str) -> CheckResult:
    """Turn a generation check into a pass/fail against its expected outcome."""
    verdict = "generates" if result.passed else "does not generate"
    want = "expected to generate" if expect else "expected not to generate"
    return CheckResult(f"{label} ({want})", result.passed == expect, result.checked,
                       [] if result.passed == expect else result.violations,
                       detail=verdict)


def generator_report(cat, key: str, loop_set: list[str] | None = None) -> Report:
    P = cat.lookup("models", key)
    report = Report(f"module generators: {P.N.name} in {P.M.name}", cat.window)
    if P.free_loop is None:
        report.add(CheckResult("generators", None, detail="skipped: no free loop model"))
        return report
    if loop_set is not None:
        sets = {",".join(loop_set): (loop_set, True)}
    else:
        sets = cat.generator_sets.get(key, {})
    for label, (loops, expect) in sorted(sets.items()):
        for u in loops:
            try:
                P.loops.space.symbol(u)
            except KeyError:
                raise UsageError(f"{u!r} is not a basis class of {P.loops.name}") from None
        res = module_generators_check(P, standard_generators(P, loops), label)
        report.add(_expect(res, expect, label) if loop_set is None else res)
    return report


def check_report(args, cat) -> Report:
    if args.model:
        P = cat.lookup("models", args.model)
        report = Report(f"check model {args.model}: {P.N.name} in {P.M.name}", cat.window)
        report.extend(check_mu_beta(P.N), "mu_beta")
        report.extend(check_path_ring(P), "mu_N_Omega")
        report.extend(check_module(P), "nu")
        if P.free_loop is not None:
            report.extend(check_algebra_over_cs(P), "algebra")
        report.extend(generator_report(cat, args.model), "generators")
        return report
    if args.manifold:
        M = cat.lookup("manifolds", args.manifold)
        report = Report(f"check manifold {args.manifold}", cat.window)
        report.extend(check_ring(M.homology, M.intersection_table, M.fundamental_class, -M.dim,
                                 name=f"intersection({M.name})"), "intersection")
        report.extend(check_mu_beta(M), "mu_beta")
        report.lines.append(f"diagonal class: {diagonal_class(M)}")
        return report
    if args.loops:
        L = cat.lookup("loop_spaces", args.loops)
        report = Report(f"check loop space {args.loops}", cat.window)
        report.extend(check_ring(L.space, L.ring.table, L.unit, 0, name=f"pontryagin({L.name})"))
        return report
    f = cat.lookup("maps", args.map)
    report = Report(f"check map {args.map}: {f.source.name} -> {f.target.name}", cat.window)
    try:
        f.validate()
        report.add(CheckResult("pullback is a ring map", True, len(f.target.cohomology.space.basis)))
    except ManifoldError as exc:
        report.add(CheckResult("pullback is a ring map", False, 1, [(str(exc),)]))
    report.lines.append(f"codimension: {f.codimension}")
    report.lines.append(f"trivial in positive degrees: {f.is_trivial_in_positive_degrees()}")
    return report


def series_report(args, cat) -> Report:
    W = cat.window
    da, db = cat.space(args.a).dims(W), cat.space(args.b).dims(W)
    report = Report(f"Poincaré series: {args.a} vs {args.b}", W)
    bad = [(f"degree {d}", f"{args.a}: {x}", f"{args.b}: {y}")
           for d, (x, y) in enumerate(zip(da, db)) if x != y]
    report.add(CheckResult("Poincaré series agree", not bad, W + 1, bad))
    report.lines.append(f"{args.a}: {' '.join(map(str, da))}")
    report.lines.append(f"{args.b}: {' '.join(map(str, db))}")
    return report


def run(args, out) -> int:
    if args.command == "counterexample":
        if args.n < 3:
            raise UsageError("--n must be >= 3")
        report = verify_counterexample(args.n, args.max_degree, args.field)
    elif args.command == "distinguish":
        if args.n < 3:
            raise UsageError("--n must be >= 3")
        report = distinguish_module_structures(args.n, args.max_degree, args.field)
    else:
        cat = _load(args)
        if args.command == "table":
            data = table_data(args, cat)
            out.write((json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)
                       if args.json else format_table(data)) + "\n")
            return EXIT_OK
        if args.command == "check":
            report = check_report(args, cat)
        elif args.command == "series":
            report = series_report(args, cat)
        else:
            loop_set = args.loop_set.split(",") if args.loop_set else None
            report = generator_report(cat, args.model, loop_set)
    out.write((report.to_json() if args.json else report.to_text()) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return run(args, sys.stdout)
    except (UsageError, CatalogError, ManifoldError, LoopModelError, PresentationError,
            ScenarioError) as exc:
        print(f"pathprod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
