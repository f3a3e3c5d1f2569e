"""Command-line front end: ``decompose``, ``validate`` and ``bench``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 disconnected
graph, 3 a property failed during ``validate``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .builder import build_split_tree
from .glt import SplitTree, export, to_dict
from .graph import DisconnectedGraphError, Graph, GraphFormatError, connected_components, format_edge_list, parse_edge_list
from .oracle import random_connected_graph
from .validate import MUTATIONS, PROPERTIES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_DISCONNECTED, EXIT_PROPERTY = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _decompose_one(g: Graph, start):
    if g.n == 0:
        return SplitTree(), None
    return build_split_tree(g, start=start)


def cmd_decompose(args) -> int:
    try:
        g = parse_edge_list(_read(args.file))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.start is not None and not 0 <= args.start < g.n:
        print(f"error: start vertex {args.start} is not in the graph", file=sys.stderr)
        return EXIT_PARSE

    if args.per_component:
        parts = []
        for comp in connected_components(g):
            h, names = g.induced(comp)
            start = names.index(args.start) if args.start in comp else None
            tree, stats = _decompose_one(h, start)
            parts.append((tree, stats, names))
    else:
        try:
            tree, stats = _decompose_one(g, args.start)
        except DisconnectedGraphError:
            print("error: graph is disconnected (try --per-component)", file=sys.stderr)
            return EXIT_DISCONNECTED
        parts = [(tree, stats, None)]

    if args.format == "json":
        docs = []
        for tree, stats, names in parts:
            doc = to_dict(tree, names)
            if args.stats and stats is not None:
                doc["stats"] = stats
            docs.append(doc)
        text = json.dumps(docs if args.per_component else docs[0], indent=1) + "\n"
    else:
        chunks = []
        for tree, stats, names in parts:
            chunk = export(tree, "dot", names)
            if args.stats and stats is not None:
                chunk += "// stats " + json.dumps(stats, sort_keys=True) + "\n"
            chunks.append(chunk)
        text = "".join(chunks)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    t0 = time.perf_counter()
    res = run_suite(args.exhaustive_n, args.random, args.seed, args.max_n, args.mutate)
    print(f"checked {res.graphs} graphs in {time.perf_counter() - t0:.1f}s")
    for prop in PROPERTIES:
        found = res.failures[prop]
        print(f"{prop:15s} {'FAIL' if found else 'pass'}  ({len(found)} failing graphs)")
    print(f"most new non-root degenerate markers in one insertion: {res.max_degenerate_markers}")
    print(f"insertions whose spanning subtree exceeds 2|N(x)| nodes+leaves: {res.spanning_over}")
    if res.ok:
        return EXIT_OK
    for prop, g in res.minimal.items():
        print(f"\nminimal counterexample for {prop}:")
        sys.stdout.write(format_edge_list(g))
    return EXIT_PROPERTY


def _path_chord(n: int) -> Graph:
    # a path on n vertices and one more vertex seeing both ends, inserted last
    return Graph(n + 1, [(i, i + 1) for i in range(n - 1)] + [(0, n), (n - 1, n)])


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        print(f"error: bad size list {args.sizes!r}", file=sys.stderr)
        return EXIT_PARSE
    if not sizes or any(n < 1 for n in sizes):
        print("error: sizes must be positive", file=sys.stderr)
        return EXIT_PARSE
    rows = []
    for n in sizes:
        if args.family == "path-chord":
            g = _path_chord(n)
            order = list(range(g.n))
        else:
            m = min(max(n - 1, round(n * args.avg_degree / 2)), n * (n - 1) // 2)
            g = random_connected_graph(n, m, seed=args.seed)
            order = None
        t0 = time.perf_counter()
        _, stats = build_split_tree(g, order=order)
        secs = time.perf_counter() - t0
        work = stats["finds"] + stats["unions"] + stats["make_sets"] + stats["new_label_edges"]
        ratio = work / (g.n + g.m)
        stats.update(seconds=round(secs, 3), ratio=round(ratio, 4))
        rows.append(stats)
        print(f"n={g.n:<8d} m={g.m:<9d} {secs:8.2f}s  ratio={ratio:.3f}  "
              f"joins={stats['node_joins']} splits={stats['node_splits']}")
    if args.json:
        print(json.dumps(rows, indent=1))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitdecomp", description="Split decomposition of graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="build the split-tree of an edge-list file")
    d.add_argument("file", help="edge-list file, '-' for stdin")
    d.add_argument("--format", choices=("json", "dot"), default="json")
    d.add_argument("--start", type=int, default=None, help="first vertex of the LBFS")
    d.add_argument("--stats", action="store_true", help="include operation counters")
    d.add_argument("--per-component", action="store_true",
                   help="decompose each connected component on its own")
    d.add_argument("--out", default=None, help="write here instead of stdout")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("validate", help="run the oracle property suite")
    v.add_argument("--exhaustive-n", type=int, default=6)
    v.add_argument("--random", type=int, default=500)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-n", type=int, default=10, help=argparse.SUPPRESS)
    v.add_argument("--mutate", choices=MUTATIONS, default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("bench", help="operation counts on random graphs")
    b.add_argument("--sizes", default="1000,10000,100000")
    b.add_argument("--avg-degree", type=float, default=6.0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--family", choices=("random", "path-chord"), default="random")
    b.add_argument("--json", action="store_true", help="also print the counters as JSON")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "exhaustive_n", 0) > 6:
        print("error: --exhaustive-n is limited to 6", file=sys.stderr)
        return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
