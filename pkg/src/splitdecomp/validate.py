"""Property suite behind ``splitdecomp validate``: the builder against the brute-force oracle."""

from __future__ import annotations

import contextlib
import random
from dataclasses import dataclass, field

from . import builder
from .builder import build_split_tree, fast_prime_test
from .glt import accessibility_graph, canonical_form, check_reduced, splits_from_tree
from .graph import Graph, is_connected
from .lbfs import verify_lbfs
from .oracle import (
    classify_case_bruteforce,
    enumerate_connected_graphs,
    enumerate_splits_bruteforce,
    is_prime_bruteforce,
    random_connected_graph,
)

PROPERTIES = (
    "lbfs",
    "splits",
    "reconstruction",
    "reduced",
    "uniqueness",
    "one-case",
    "prime-test",
)

MUTATIONS = ("skip-cleaning",)


@contextlib.contextmanager
def mutation(name: str | None):
    """Temporarily break the builder, to show the suite notices."""
    if name is None:
        yield
        return
    if name != "skip-cleaning":
        raise ValueError(f"unknown mutation {name!r}")
    saved = builder.clean
    builder.clean = lambda tree, ctx: ctx.fm
    try:
        yield
    finally:
        builder.clean = saved


def check_graph(g: Graph, starts: int = 5, rng: random.Random | None = None) -> list[tuple[str, str]]:
    """Failed properties of one connected graph as ``(property, message)`` pairs."""
    fails = []
    small = g.n <= 10

    def on_case(tree, x, S, result, ctx):
        if tree.n >= 3:
            w = classify_case_bruteforce(tree, S)
            if w.case != result.case:
                raise _CaseMismatch(f"vertex {x}: builder says {result.case}, oracle {w.case}")

    try:
        tree, _ = build_split_tree(g, on_case=on_case if small else None)
    except _CaseMismatch as exc:
        return [("one-case", str(exc))]
    except AssertionError as exc:
        return [("one-case" if small else "reduced", f"assertion: {exc}")]
    except Exception as exc:  # a crash is a failure of every property
        return [("reduced", f"{type(exc).__name__}: {exc}")]

    if g.n <= 200 and not verify_lbfs(g, tree.sigma):
        fails.append(("lbfs", "ordering fails the four-point test"))
    if g.n <= 16 and splits_from_tree(tree) != enumerate_splits_bruteforce(g):
        fails.append(("splits", "split set differs from brute force"))
    if accessibility_graph(tree) != g:
        fails.append(("reconstruction", "accessibility graph differs from input"))
    rep = check_reduced(tree)
    if not rep.ok:
        fails.append(("reduced", rep.problems[0]))
    form = canonical_form(tree)
    for s in range(1, min(starts, g.n)):
        try:
            other = canonical_form(build_split_tree(g, start=s)[0])
        except Exception as exc:
            other = f"{type(exc).__name__}: {exc}"
        if other != form:
            fails.append(("uniqueness", f"start {s} gives a different tree"))
            break
    if g.n <= 9:
        rng = rng or random.Random(g.n * 1000 + g.m)
        S = sorted(v for v in range(g.n) if rng.random() < 0.5) or [rng.randrange(g.n)]
        plus = Graph(g.n + 1, set(g.edges) | {(v, g.n) for v in S})
        if fast_prime_test(tree, S) != is_prime_bruteforce(plus):
            fails.append(("prime-test", f"disagrees with brute force for S={S}"))
    return fails


class _CaseMismatch(Exception):
    pass


def shrink(g: Graph, prop: str) -> Graph:
    """Greedily delete vertices, then edges, while ``prop`` keeps failing."""

    def failing(h):
        return h.n >= 1 and is_connected(h) and any(p == prop for p, _ in check_graph(h))

    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            h, _ = g.induced(w for w in range(g.n) if w != v)
            if failing(h):
                g, changed = h, True
                break
        if changed:
            continue
        for e in g.sorted_edges():
            h = Graph(g.n, g.edges - {e})
            if failing(h):
                g, changed = h, True
                break
    return g


@dataclass
class SuiteResult:
    graphs: int = 0
    failures: dict = field(default_factory=lambda: {p: [] for p in PROPERTIES})
    max_degenerate_markers: int = 0
    spanning_over: int = 0
    minimal: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def run_suite(exhaustive_n: int = 6, n_random: int = 500, seed: int = 0,
              max_n: int = 10, mutate: str | None = None) -> SuiteResult:
    res = SuiteResult()
    rng = random.Random(seed)

    def graphs():
        for n in range(1, exhaustive_n + 1):
            yield from enumerate_connected_graphs(n)
        for _ in range(n_random):
            n = rng.randint(2, max_n)
            m = rng.randint(n - 1, n * (n - 1) // 2)
            yield random_connected_graph(n, m, seed=rng.randrange(1 << 30))

    with mutation(mutate):
        for g in graphs():
            res.graphs += 1
            for prop, msg in check_graph(g, rng=rng):
                res.failures[prop].append((g, msg))
            if g.n >= 3:
                try:
                    tree, _ = build_split_tree(g, check=True)
                except Exception:
                    continue
                res.max_degenerate_markers = max(res.max_degenerate_markers,
                                                 tree.counters.max_new_degenerate_markers)
                res.spanning_over += sum(1 for v in tree.violations if v[1] == "spanning")
        for prop, found in res.failures.items():
            if found:
                smallest = min(found, key=lambda f: (f[0].n, f[0].m))[0]
                res.minimal[prop] = shrink(smallest, prop)
    return res
