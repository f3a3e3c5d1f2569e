import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from splitdecomp import (
    Graph,
    SplitTree,
    accessibility_graph,
    build_split_tree,
    canonical_form,
    check_reduced,
    fast_prime_test,
    induced_order,
    insert_vertex,
    lbfs_order,
)
from splitdecomp.builder import InsertionContext, marker_states, spanning_size, span_subtree
from splitdecomp.glt import CLIQUE, PRIME, STAR
from splitdecomp.graph import DisconnectedGraphError
from splitdecomp.oracle import (
    classify_case_bruteforce,
    enumerate_splits_bruteforce,
    extremity_states,
    is_prime_bruteforce,
)

from conftest import complete, connected_graphs, cycle, path, star


def kinds(tree):
    st_ = tree.structure()
    return sorted(st_.kind(u) for u in st_.nodes)


def grow(g, upto=None):
    """Tree of the prefix graph on the first ``upto`` LBFS vertices."""
    tree = SplitTree()
    sigma = lbfs_order(g)
    for x in sigma.order[:upto]:
        insert_vertex(tree, x, [y for y in g.neighbors(x) if y in tree.leaves])
    return tree


def with_new_vertex(g, S):
    return Graph(g.n + 1, set(g.edges) | {(v, g.n) for v in S})


def spanned(tree, S):
    leaves = [tree.leaves[v] for v in S]
    ctx = InsertionContext(tree, None, leaves)
    return span_subtree(tree, leaves, ctx), ctx


# -- spanning subtree -----------------------------------------------------------


def test_span_examples():
    tree, _ = build_split_tree(path(4))
    nodes, _ = spanned(tree, [0, 3])
    assert sum(1 for e in nodes if not e.is_leaf) == 2
    nodes, ctx = spanned(tree, [0, 1])
    assert sum(1 for e in nodes if not e.is_leaf) == 1
    tree, _ = build_split_tree(complete(4))
    nodes, ctx = spanned(tree, [1, 3])
    assert [e for e in nodes if not e.is_leaf] == [tree.top_node()]
    assert spanning_size(tree, [1, 3]) == 3
    with pytest.raises(ValueError):
        spanned(tree, [1])


def test_span_trims_path_to_root():
    # leaves deep in the tree: the path up to the root is not part of the span
    tree, _ = build_split_tree(path(6))
    nodes, ctx = spanned(tree, [4, 5])
    assert sum(1 for e in nodes if not e.is_leaf) == 1
    assert not ctx.top.is_leaf


def test_spanning_size_is_read_only():
    tree, _ = build_split_tree(cycle(8))
    before = tree.sets.finds
    spanning_size(tree, [0, 3, 5])
    assert tree.sets.finds == before


# -- case identification and application ------------------------------------------


def test_identify_examples():
    seen = {}

    def record(tree, x, S, result, ctx):
        seen[x] = result.case

    tree, _ = build_split_tree(complete(3))
    insert_vertex(tree, 3, [0, 1, 2], on_case=record)
    assert seen[3] == 1 and kinds(tree) == [CLIQUE]

    tree, _ = build_split_tree(path(3))
    insert_vertex(tree, 3, [0, 2], on_case=record)
    assert seen[3] == 6
    assert accessibility_graph(tree) == cycle(4)

    tree, _ = build_split_tree(path(4))
    insert_vertex(tree, 4, [0, 3], on_case=record)
    assert seen[4] == 7 and kinds(tree) == [PRIME]
    assert accessibility_graph(tree) == cycle(5)


def test_case2_on_star():
    tree, _ = build_split_tree(star(3))
    result = insert_vertex(tree, 4, [0])
    assert result.case == 2
    assert kinds(tree) == [STAR] and tree.top_node().size == 5


def test_case3_on_prime():
    g = cycle(5)
    tree, _ = build_split_tree(g)
    tree.exhaustive_twins = True
    result = insert_vertex(tree, 5, [0, 1, 3])
    assert result.case == 3
    assert kinds(tree) == [PRIME]
    assert accessibility_graph(tree) == with_new_vertex(g, [0, 1, 3])


def test_case4_hybrid_star():
    # hub 3, leaves 0, 1, 2; x sees 0, 1 and the hub
    g = Graph(4, [(3, 0), (3, 1), (3, 2)])
    tree, _ = build_split_tree(g)
    result = insert_vertex(tree, 4, [0, 1, 3])
    assert result.case == 4
    target = with_new_vertex(g, [0, 1, 3])
    assert accessibility_graph(tree) == target
    assert check_reduced(tree).ok
    assert kinds(tree) == [CLIQUE, STAR, STAR]
    assert canonical_form(tree) == canonical_form(build_split_tree(target)[0])


def test_two_leaf_bootstrap():
    tree, _ = build_split_tree(path(2))
    assert insert_vertex(tree, 2, [0, 1]).case == 5
    assert kinds(tree) == [CLIQUE]
    tree, _ = build_split_tree(path(2))
    assert insert_vertex(tree, 2, [0]).case == 6
    assert kinds(tree) == [STAR]
    assert accessibility_graph(tree) == Graph(3, [(0, 1), (0, 2)])
    centre = tree.top_node().centre
    assert centre.opposite is tree.leaves[0]


def test_cleaning_examples():
    # C5 on 0..4 with 5 and 6 false twins of 4
    g = Graph(7, [(i, (i + 1) % 5) for i in range(5)] + [(3, 5), (0, 5), (3, 6), (0, 6)])
    for S in ([4, 5, 0], [0, 4]):
        tree, _ = build_split_tree(g)
        splits = tree.counters.node_splits
        result = insert_vertex(tree, 7, S)
        assert result.case == 7
        assert tree.counters.node_splits - splits == 1
        target = with_new_vertex(g, S)
        assert accessibility_graph(tree) == target
        assert check_reduced(tree).ok
        assert sorted(kinds(tree)) == [PRIME, STAR]


def test_path_chord_contracts_everything():
    for n in range(4, 16):
        g = Graph(n + 1, [(i, i + 1) for i in range(n - 1)] + [(0, n), (n - 1, n)])
        tree = grow(path(n))
        joins = tree.counters.node_joins
        insert_vertex(tree, n, [0, n - 1])
        assert kinds(tree) == [PRIME]
        assert tree.counters.node_joins - joins == n - 3
        assert accessibility_graph(tree) == g


def test_insert_errors():
    tree, _ = build_split_tree(path(3))
    with pytest.raises(ValueError):
        insert_vertex(tree, 1, [0])
    with pytest.raises(ValueError):
        insert_vertex(tree, 5, [])
    with pytest.raises(ValueError):
        insert_vertex(tree, 5, [9])
    with pytest.raises(ValueError):
        insert_vertex(SplitTree(), 0, [1])


def test_build_examples():
    for n in range(3, 9):
        assert kinds(build_split_tree(complete(n))[0]) == [CLIQUE]
        t, _ = build_split_tree(star(n))
        assert kinds(t) == [STAR]
        assert t.top_node().centre.opposite is t.leaves[0]
    for n in range(5, 11):
        assert kinds(build_split_tree(cycle(n))[0]) == [PRIME]
    with pytest.raises(DisconnectedGraphError):
        build_split_tree(Graph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        build_split_tree(Graph(0, []))


def test_stats_keys():
    _, stats = build_split_tree(cycle(6))
    for key in ("finds", "unions", "make_sets", "new_label_edges",
                "new_degenerate_markers", "spanning_total", "n", "m"):
        assert key in stats
    assert stats["n"] == 6 and stats["m"] == 6


# -- invariants over random builds --------------------------------------------------


@given(connected_graphs(max_n=12))
def test_every_prefix_is_decomposed(g):
    def after(tree, x, S, result):
        names = sorted(tree.leaves)
        h, _ = g.induced(names)
        if names == list(range(len(names))):
            assert accessibility_graph(tree) == h
        assert check_reduced(tree).ok

    build_split_tree(g, after_insert=after)


@given(connected_graphs(max_n=10))
def test_splits_match_bruteforce(g):
    tree, _ = build_split_tree(g)
    from splitdecomp import splits_from_tree
    assert splits_from_tree(tree) == enumerate_splits_bruteforce(g)


@given(connected_graphs(min_n=3, max_n=9))
def test_exactly_one_case(g):
    def on_case(tree, x, S, result, ctx):
        if tree.n >= 3:
            assert classify_case_bruteforce(tree, S).case == result.case

    build_split_tree(g, on_case=on_case)


@given(connected_graphs(min_n=2, max_n=10), st.integers(0, 2**31))
def test_any_connected_order_gives_the_same_tree(g, seed):
    rng = random.Random(seed)
    order, seen = [], set()
    frontier = [rng.randrange(g.n)]
    while frontier:
        x = frontier.pop(rng.randrange(len(frontier)))
        if x in seen:
            continue
        seen.add(x)
        order.append(x)
        frontier.extend(y for y in g.neighbors(x) if y not in seen)
    tree, _ = build_split_tree(g, order=order)
    assert check_reduced(tree).ok
    assert canonical_form(tree) == canonical_form(build_split_tree(g)[0])


@given(connected_graphs(min_n=3, max_n=30))
def test_last_marker_is_last_in_induced_order(g):
    def after(tree, x, S, result):
        st_ = tree.structure()
        for u in st_.nodes:
            if u.kind == PRIME:
                assert induced_order(tree, u, tree.sigma)[-1] is u.last

    build_split_tree(g, after_insert=after)


@given(connected_graphs(min_n=3, max_n=14))
def test_universal_marker_is_tracked(g):
    def after(tree, x, S, result):
        st_ = tree.structure()
        for u in st_.nodes:
            if u.kind != PRIME:
                continue
            size = len(st_.markers[u])
            full = [m for m in st_.markers[u] if len(m.adj) == size - 1]
            if full:
                assert u.universal in full
            else:
                assert u.universal is None

    build_split_tree(g, after_insert=after)


@given(connected_graphs(min_n=3, max_n=9), st.integers(0, 2**31))
def test_fast_prime_test(g, seed):
    rng = random.Random(seed)
    S = [v for v in range(g.n) if rng.random() < 0.5] or [rng.randrange(g.n)]
    tree, _ = build_split_tree(g)
    assert fast_prime_test(tree, S) == is_prime_bruteforce(with_new_vertex(g, S))


def test_fast_prime_examples():
    assert fast_prime_test(build_split_tree(path(4))[0], [0, 3])
    assert not fast_prime_test(build_split_tree(complete(3))[0], [0, 1, 2])
    assert not fast_prime_test(build_split_tree(path(3))[0], [0, 2])
    # a true twin of a vertex of a prime graph
    assert not fast_prime_test(build_split_tree(cycle(5))[0], [0, 1, 4])


@given(connected_graphs(min_n=3, max_n=10), st.integers(0, 2**31))
def test_marker_states_match_definitions(g, seed):
    rng = random.Random(seed)
    S = {v for v in range(g.n) if rng.random() < 0.5}
    tree, _ = build_split_tree(g)
    fast = marker_states(tree, S)
    slow = extremity_states(tree, S)
    assert all(fast[m] == slow[m] for m in fast)


@given(connected_graphs(min_n=4, max_n=10))
def test_new_vertex_breaking_primality_is_pendant_or_twin(g):
    sigma = lbfs_order(g)
    x = sigma[-1]
    rest, _ = g.induced(v for v in range(g.n) if v != x)
    if not is_prime_bruteforce(rest) or is_prime_bruteforce(g):
        return
    nx = set(g.neighbors(x))
    pendant = len(nx) == 1
    twin = any(set(g.neighbors(v)) - {x} == nx - {v} for v in range(g.n) if v != x)
    assert pendant or twin


@given(connected_graphs(min_n=3, max_n=25))
def test_spanning_subtree_bound_in_nodes(g):
    tree, _ = build_split_tree(g, check=True)
    assert not [v for v in tree.violations if v[1] == "spanning-nodes"]


def test_collector_state_is_restored():
    import gc
    build_split_tree(cycle(6))
    assert gc.isenabled()
    gc.disable()
    try:
        build_split_tree(cycle(6))
        assert not gc.isenabled()
    finally:
        gc.enable()
    with pytest.raises(ValueError):
        build_split_tree(path(4), order=[0, 2, 1, 3])
    assert gc.isenabled()
