"""Command-line entry point: searches, single-tree queries, verification and reports."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import analysis, transforms
from .enumeration import (
    BRUTE_FORCE_CAP,
    SearchResult,
    WorkRange,
    brute_force_min_abc,
    merge_results,
    plan_partitions,
)
from .graph import (
    ABC_TOL,
    DomainError,
    PreconditionError,
    TreeFormatError,
    abc_index,
    canonical_form,
    format_levels,
    format_tree,
    minimal_abc_properties,
    parse_tree,
    properties_hold,
    tree_from_levels,
)
from .greedy import DS_SEARCH_CAP, check_greedy_minimality, degree_sequences, ds_search_min_abc, greedy_tree
from .store import ResultStore

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_HEADER = ["n", "brute_abc_min", "brute_config", "ds_greedy_abc_min", "ds_greedy_config",
                 "agree", "properties"]


class UsageError(Exception):
    pass


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _orders(args) -> list[int]:
    if args.n is not None and args.range is not None:
        raise UsageError("give either --n or --range, not both")
    if args.n is not None:
        return [args.n]
    if args.range is not None:
        return _parse_range(args.range)
    raise UsageError("one of --n or --range is required")


def _read_tree(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_tree(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------

def _brute_slice(job: tuple[int, WorkRange, bool, float]) -> SearchResult:
    n, part, force, tol = job
    return brute_force_min_abc(n, part, force=force, tol=tol)


def _ds_slice(job: tuple[int, WorkRange, bool, float]) -> SearchResult:
    n, part, force, tol = job
    return ds_search_min_abc(n, part, force=force, tol=tol)


def run_search(method: str, n: int, jobs: int = 1, force: bool = False,
               tol: float = ABC_TOL) -> SearchResult:
    """One search, split over ``jobs`` worker processes and min-merged."""
    if method == "brute":
        if n > BRUTE_FORCE_CAP and not force:
            raise DomainError(f"n={n} exceeds the brute-force cap {BRUTE_FORCE_CAP}; use --force")
        if jobs <= 1:
            return brute_force_min_abc(n, force=force, tol=tol)
        parts = plan_partitions(n, jobs)
        worker = _brute_slice
    elif method == "ds-greedy":
        if n > DS_SEARCH_CAP and not force:
            raise DomainError(f"n={n} exceeds the degree-sequence cap {DS_SEARCH_CAP}; use --force")
        if jobs <= 1:
            return ds_search_min_abc(n, force=force, tol=tol)
        total = sum(1 for _ in degree_sequences(n, prune=True))
        bounds = [total * i // jobs for i in range(jobs + 1)]
        parts = [WorkRange(a, b) for a, b in zip(bounds, bounds[1:])]
        worker = _ds_slice
    else:
        raise ValueError(method)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(worker, [(n, p, force, tol) for p in parts]))
    return merge_results(results, tol)


def _search_config(args, method: str, n: int) -> dict:
    return {"command": method, "n": n, "tol": args.tol, "force": args.force}


def cmd_search(args, method: str) -> int:
    store = ResultStore(args.store) if args.store else ResultStore()
    rows = []
    for n in _orders(args):
        res = run_search(method, n, jobs=args.jobs, force=args.force, tol=args.tol)
        rec = store.append("search", res.payload(), _search_config(args, method, n),
                           {"seconds": res.seconds})
        rows.append((res, rec["config_hash"]))
    if args.format == "json":
        text = "".join(json.dumps(res.to_record(), sort_keys=True) + "\n" for res, _ in rows)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "method", "abc_min", "argmin", "examined", "config_hash"])
        for res, h in rows:
            w.writerow([res.n, res.method, f"{res.abc_min:.12f}",
                        ";".join(format_levels(s) for s in res.trees), res.examined, h])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Single-tree commands
# ---------------------------------------------------------------------------

def cmd_index(args) -> int:
    t = _read_tree(args.tree)
    val = abc_index(t)
    if args.format == "json":
        _emit(json.dumps({"n": t.n, "abc": val, "canonical": list(canonical_form(t))}) + "\n", args.out)
    else:
        _emit(f"{val:.6f}\n", args.out)
    return EXIT_OK


def cmd_greedy(args) -> int:
    try:
        ds = [int(x) for x in args.degrees.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad degree list {args.degrees!r}") from None
    g = greedy_tree(ds)
    val = abc_index(g.tree)
    if args.format == "json":
        _emit(json.dumps({"degrees": list(g.degrees), "abc": val, "edges": [list(e) for e in g.tree.edges],
                          "canonical": list(canonical_form(g.tree))}) + "\n", args.out)
    else:
        _emit(format_tree(g.tree), args.out)
        print(f"abc {val:.12f}", file=sys.stderr)
    return EXIT_OK


def cmd_props(args) -> int:
    t = _read_tree(args.tree)
    report = minimal_abc_properties(t, force=args.force)
    _emit(json.dumps({"n": t.n, "abc": abc_index(t), "checks": report,
                      "all_hold": properties_hold(report)}, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    try:
        kind = transforms.TransformKind[args.kind]
    except KeyError:
        raise UsageError(f"unknown kind {args.kind!r}; one of "
                         + ", ".join(k.name for k in transforms.TransformKind)) from None
    t = _read_tree(args.tree)
    if args.root is not None:
        t = t.rooted(args.root)
    locs = transforms.find_configuration(t, kind)
    if not locs:
        raise PreconditionError(f"no {kind.value} configuration in this tree")
    if not 0 <= args.loc < len(locs):
        raise PreconditionError(f"--loc {args.loc} out of range; {len(locs)} location(s) found")
    out = transforms.apply(t, kind, locs[args.loc])
    rec = out.to_record()
    rec["loc_index"] = args.loc
    # two tree-file blocks, each self-delimiting by its first line, then the record
    text = format_tree(t) + format_tree(out.after) + json.dumps(rec, sort_keys=True) + "\n"
    _emit(text, args.out)
    return EXIT_OK if out.consistent and out.delta_exact < -ABC_TOL else EXIT_FAIL


# ---------------------------------------------------------------------------
# Verification and reports
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    store = ResultStore(args.store) if args.store else ResultStore()
    cfg = {"command": f"verify {args.what}", "seed": args.seed}
    ok = True
    if args.what == "constants":
        rows = analysis.constant_table()
        ok = all(r.passed for r in rows)
        for r in rows:
            store.append("constant", {"id": r.id, "paper_value": r.paper_value, "computed": r.computed,
                                      "abs_error": r.abs_error, "passed": r.passed}, cfg)
        text = analysis.constants_csv(rows)
    elif args.what == "propositions":
        reports = [analysis.monotonicity_scan(fid) for fid in analysis.PROP_FUNCTIONS]
        reports.append(analysis.identity_checks())
        ok = all(r.ok for r in reports)
        lines = []
        for r in reports:
            store.append("scan", json.loads(r.to_json()), cfg)
            lines.append(r.to_json())
        text = "\n".join(lines) + "\n"
    elif args.what == "transforms":
        lines = []
        for kind in transforms.TransformKind:
            rep = transforms.verify_decrease(kind, seed=args.seed)
            ok = ok and rep.ok
            store.append("transform-sweep", rep.to_record(), cfg)
            lines.append(json.dumps(rep.to_record(), sort_keys=True))
        text = "\n".join(lines) + "\n"
    else:
        chk = check_greedy_minimality(args.max_n)
        ok = chk.ok
        payload = {"max_n": args.max_n, "sequences": chk.sequences, "labeled": chk.labeled,
                   "violations": chk.violations, "ok": chk.ok}
        store.append("greedy-check", payload, cfg)
        text = json.dumps(payload, sort_keys=True) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _property_summary(levels: Sequence[Sequence[int]]) -> str:
    failed: set[str] = set()
    applicable = False
    for seq in levels:
        rep = minimal_abc_properties(tree_from_levels(tuple(seq)))
        if any(v is not None for v in rep.values()):
            applicable = True
        failed |= {k for k, v in rep.items() if v is False}
    if not applicable:
        return "n/a"
    return "pass" if not failed else "fail:" + "|".join(sorted(failed))


def build_report(store: ResultStore, orders: Optional[Sequence[int]] = None) -> tuple[str, list[int]]:
    """CSV comparing the latest brute and degree-sequence results per order,
    plus the orders in range that have no record at all."""
    latest: dict[tuple[int, str], dict] = {}
    for rec in store.records("search"):
        p = rec["payload"]
        latest[(p["n"], p["method"])] = rec
    have = sorted({n for n, _ in latest})
    wanted = list(orders) if orders is not None else have
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    gaps = []
    for n in wanted:
        b = latest.get((n, "brute"))
        d = latest.get((n, "ds-greedy"))
        if b is None and d is None:
            gaps.append(n)
            continue
        agree = ""
        if b is not None and d is not None:
            pb, pd = b["payload"], d["payload"]
            agree = str(abs(pb["abc_min"] - pd["abc_min"]) <= ABC_TOL and pb["trees"] == pd["trees"])
        src = b or d
        w.writerow([
            n,
            repr(b["payload"]["abc_min"]) if b else "",
            b["config_hash"] if b else "",
            repr(d["payload"]["abc_min"]) if d else "",
            d["config_hash"] if d else "",
            agree,
            _property_summary(src["payload"]["trees"]),
        ])
    return buf.getvalue(), gaps


def cmd_report(args) -> int:
    store = ResultStore(args.store) if args.store else ResultStore()
    orders = _parse_range(args.range) if args.range else None
    text, gaps = build_report(store, orders)
    _emit(text, args.out)
    if gaps:
        print("gaps: " + ",".join(str(n) for n in gaps), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="csv")
    common.add_argument("--store", help="results file (default: $ABC_RESULTS or ./abc_results.jsonl)")

    p = argparse.ArgumentParser(prog="abctree", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("index", parents=[common], help="ABC index of a tree file")
    s.add_argument("tree", help="tree file, or - for stdin")

    for name in ("brute", "dsearch"):
        s = sub.add_parser(name, parents=[common],
                           help="exhaustive search" if name == "brute" else "greedy degree-sequence search")
        s.add_argument("--n", type=int)
        s.add_argument("--range", help="orders A..B")
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--tol", type=float, default=ABC_TOL)
        s.add_argument("--force", action="store_true", help="lift the order cap")

    s = sub.add_parser("greedy", parents=[common], help="greedy tree of a degree sequence")
    s.add_argument("--degrees", required=True, help="comma-separated degrees")

    s = sub.add_parser("props", parents=[common], help="structural checks on a tree file")
    s.add_argument("tree")
    s.add_argument("--force", action="store_true", help="run the checks below order 10 too")

    s = sub.add_parser("transform", parents=[common], help="apply one rewrite to a tree file")
    s.add_argument("--kind", required=True)
    s.add_argument("--tree", required=True)
    s.add_argument("--loc", type=int, default=0, help="index into the found locations")
    s.add_argument("--root", type=int, help="root the tree here (default: its center)")

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("what", choices=("constants", "propositions", "transforms", "greedy"))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-n", type=int, default=10, help="largest order for the greedy check")

    s = sub.add_parser("report", parents=[common], help="CSV summary of stored searches")
    s.add_argument("--range", help="orders A..B (default: all stored)")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    handlers = {
        "index": cmd_index,
        "brute": lambda a: cmd_search(a, "brute"),
        "dsearch": lambda a: cmd_search(a, "ds-greedy"),
        "greedy": cmd_greedy,
        "props": cmd_props,
        "transform": cmd_transform,
        "verify": cmd_verify,
        "report": cmd_report,
    }
    try:
        return handlers[args.command](args)
    except TreeFormatError as exc:
        print(f"error: {args.tree if hasattr(args, 'tree') else 'input'}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError, PreconditionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
