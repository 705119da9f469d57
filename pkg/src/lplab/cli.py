"""Command-line interface: analyze, verify, search, construct, bounds."""

from __future__ import annotations

import argparse
import json
import os
import sys

from typing import Optional, Sequence

from .bounds import frac_str, ratio_table, theorem_bound, theorem_bound_parts
from .construct import build_gt
from .errors import FormatError, LplabError, UsageError
from .graphs import Graph, parse_edge_list, parse_graph6
from .harness import (
    DEFAULT_CHECKS,
    ScanConfig,
    check_conjecture,
    generate_connected_graphs,
    iter_ksubsets,
    scan_stream,
)
from .longest import enumerate_longest_paths
from .systems import certified_system, make_path_system, path_distance_value

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


def load_graph(spec: str) -> Graph:
    """Load a graph from an inline graph6/sparse6 string or a file path.

    Files holding an 'n m' header parse as edge lists; otherwise the first
    nonempty line is taken as graph6/sparse6.
    """
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        if len(first.split()) == 2 and all(p.isdigit() for p in first.split()):
            return parse_edge_list(text)
        return parse_graph6(first)
    return parse_graph6(spec)


def _emit(payload: dict | list, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    lps = enumerate_longest_paths(g, cap=args.path_cap)
    common = lps.common_mask()
    print(f"n = {g.n}, m = {g.m}")
    print(f"ell(G) = {lps.length}")
    print(f"|L(G)| = {len(lps.paths)}{' (truncated)' if lps.truncated else ''}")
    print(f"pairwise intersection: {'holds' if common else 'see subsets'}")
    common_verts = [v for v in range(g.n) if common >> v & 1]
    print(f"common vertices of all longest paths: {common_verts}")
    k = args.k
    verdict = check_conjecture(g, k, path_cap=args.path_cap, seed=args.seed, lps=lps)
    print(
        f"k = {k}: {verdict.status} "
        f"({verdict.subsets_checked}/{verdict.total_subsets} subsets"
        f"{', via common-vertex shortcut' if verdict.used_shortcut else ''})"
    )
    if verdict.witness:
        print(f"witness: {json.dumps(verdict.witness)}")
        return EXIT_FINDING
    if len(lps.paths) >= k:
        max_f = 0
        subsets, checked, _ = iter_ksubsets(
            len(lps.paths), k, args.subset_cap, args.seed, f"analyze:{k}"
        )
        for subset in subsets:
            ps = certified_system(g, [lps.paths[i] for i in subset], lps.length)
            f, _ = path_distance_value(ps)
            max_f = max(max_f, f)
        print(f"max f over {checked} {k}-subsets: {max_f}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .harness import _run_lemma_checks

    g = load_graph(args.graph)
    checks = tuple(args.checks.split(",")) if args.checks else DEFAULT_CHECKS
    unknown = set(checks) - set(DEFAULT_CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}")
    lps = enumerate_longest_paths(g, cap=args.path_cap)
    if len(lps.paths) < args.k:
        print(
            f"lplab: only {len(lps.paths)} longest paths, no {args.k}-subsets",
            file=sys.stderr,
        )
        _emit([], args.out)
        return EXIT_OK
    subsets, _, _ = iter_ksubsets(
        len(lps.paths), args.k, args.subset_cap, args.seed, f"verify:{args.k}"
    )
    reports = []
    failed = False
    for subset in subsets:
        ps = certified_system(g, [lps.paths[i] for i in subset], lps.length)
        for rep in _run_lemma_checks(ps, checks):
            reports.append(rep.to_json())
            failed = failed or rep.status == "fail"
    _emit(reports, args.out)
    return EXIT_FINDING if failed else EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    config = ScanConfig(
        k=args.k,
        path_cap=args.path_cap,
        subset_cap=args.subset_cap,
        lemma_subset_cap=args.lemma_subset_cap,
        seed=args.seed,
        checks=tuple(args.checks.split(",")) if args.checks else DEFAULT_CHECKS,
        jobs=args.jobs,
        strict=args.strict,
    )
    if args.file:
        with open(args.file) as fh:
            source = fh.read().splitlines()
    else:
        source = generate_connected_graphs(args.gen_n)
    report = scan_stream(source, config)
    _emit(report.to_json(), args.out)
    print(
        f"lplab: scanned {report.graphs_scanned} graphs "
        f"({report.graphs_skipped_disconnected} disconnected skipped), "
        f"conjecture: {report.conjecture_status}, "
        f"max f = {report.max_f}, max ratio = {frac_str(report.max_ratio)}, "
        f"{len(report.failures)} failures, {report.wall_time:.2f}s",
        file=sys.stderr,
    )
    return EXIT_FINDING if report.has_findings else EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.paths == "longest":
        lps = enumerate_longest_paths(g)
        ps = certified_system(g, lps.paths, lps.length)
    else:
        members = json.loads(args.paths)
        ps = make_path_system(g, members, require_longest=True)
    result = build_gt(g, ps, args.t)
    _emit(result.to_json(), args.out)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    if args.table is not None:
        for row in ratio_table(args.table):
            upper, lower = row["upper"], row["lower"]
            print(
                f"k={row['k']}: d_k <= {frac_str(upper)} ({float(upper):.6g}), "
                f"lower bound {frac_str(lower)} ({float(lower):.6g})"
            )
        return EXIT_OK
    if args.n is None:
        raise UsageError("bounds needs --n N or --table KMAX")
    bound = theorem_bound(args.k, args.n)
    parts = theorem_bound_parts(args.k, args.n)
    print(f"f <= {frac_str(bound)} ({float(bound):.6g})")
    if parts["k4"] is not None:
        print(
            f"  general-k formula gives {frac_str(parts['general'])}, "
            f"k=4 sharpening gives {frac_str(parts['k4'])}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lplab",
        description="Longest-path intersection toolkit: analyze, verify, search, construct, bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, k_default: Optional[int] = 3) -> None:
        p.add_argument("--k", type=int, default=k_default)
        p.add_argument("--path-cap", type=int, default=100_000)
        p.add_argument("--subset-cap", type=int, default=10_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)

    p = sub.add_parser("analyze", help="summarize longest paths and f of one graph")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run lemma/theorem checkers on one graph")
    p.add_argument("graph")
    p.add_argument("--checks", default=None, help="comma list: " + ",".join(DEFAULT_CHECKS))
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="scan a corpus for counterexamples and extremal f")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", default=None, help="graph6/sparse6 file, one graph per line")
    src.add_argument("--gen-n", type=int, default=None, help="built-in connected corpus on N vertices")
    p.add_argument("--checks", default=None)
    p.add_argument("--lemma-subset-cap", type=int, default=10)
    p.add_argument("--jobs", type=int, default=int(os.environ.get("LPLAB_JOBS", "1")))
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="build G_t from a base graph and path system")
    p.add_argument("graph")
    p.add_argument("--paths", required=True, help='"longest" or a JSON list of vertex arrays')
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="print theorem bounds / ratio table as exact rationals")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--table", type=int, default=None)
    p.set_defaults(func=cmd_bounds)

    return parser


def cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, FormatError, json.JSONDecodeError, OSError) as exc:
        print(f"lplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LplabError as exc:
        print(f"lplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
