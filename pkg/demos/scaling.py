"""
Operation counts against n + m on random sparse graphs
"""

import time

from splitdecomp import Graph, build_split_tree
from splitdecomp.oracle import random_connected_graph

## Union-find and label work per edge stays flat
for n in (1_000, 10_000, 100_000):
    g = random_connected_graph(n, 3 * n, seed=0)
    t0 = time.perf_counter()
    _, s = build_split_tree(g)
    work = s["finds"] + s["unions"] + s["make_sets"] + s["new_label_edges"]
    print(f"n={n:<7d} {time.perf_counter() - t0:6.2f}s  work/(n+m)={work / (n + g.m):.3f}")

## The worst single insertion: a long path closed into a cycle
# start in the middle so that the closing vertex comes last
for n in (101, 1001, 10001):
    g = Graph(n + 1, [(i, i + 1) for i in range(n - 1)] + [(0, n), (n - 1, n)])
    seen = []
    tree, _ = build_split_tree(g, start=(n - 1) // 2,
                               after_insert=lambda t, *a: seen.append(t.counters.node_joins))
    print(f"n={n:<6d} last insertion joined {seen[-1] - seen[-2]} nodes")
