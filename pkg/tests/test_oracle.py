import pytest
from hypothesis import given

from splitdecomp import Graph, build_split_tree
from splitdecomp.oracle import (
    EMPTY,
    MIXED,
    PERFECT,
    Bipartition,
    classify_case_bruteforce,
    decompose_recursive,
    enumerate_connected_graphs,
    enumerate_splits_bruteforce,
    extremity_states,
    is_prime_bruteforce,
    random_connected_graph,
    reassemble,
)
from splitdecomp.graph import is_connected

from conftest import complete, connected_graphs, cycle, path, star


def B(a, b):
    return Bipartition.of(a, b)


def test_split_examples():
    assert enumerate_splits_bruteforce(path(4)) == {B({0, 1}, {2, 3})}
    assert len(enumerate_splits_bruteforce(complete(4))) == 3
    assert enumerate_splits_bruteforce(cycle(5)) == set()


def test_split_definition_by_hand():
    # C4 0-1-2-3: ({0,1},{2,3}) has frontiers {0,1},{2,3} but 0-2 is missing
    splits = enumerate_splits_bruteforce(cycle(4))
    assert splits == {B({0, 2}, {1, 3})}


def test_bipartition_is_canonical():
    assert B({3, 4}, {0, 1}) == B({0, 1}, {3, 4})
    assert B({3, 4}, {0, 1}).a == frozenset({0, 1})


def test_primality_examples():
    assert is_prime_bruteforce(cycle(5))
    assert not is_prime_bruteforce(path(4))
    assert is_prime_bruteforce(path(3))
    with pytest.raises(ValueError):
        is_prime_bruteforce(path(17))


def test_decompose_examples():
    dec = decompose_recursive(path(4))
    assert sorted(c.kind() for c in dec.components) == ["star", "star"]
    assert len(dec.matching) == 1
    assert [c.kind() for c in decompose_recursive(complete(4)).components] == ["clique"]
    assert [c.kind() for c in decompose_recursive(cycle(5)).components] == ["prime"]


@given(connected_graphs(max_n=9))
def test_decompose_reassembles(g):
    dec = decompose_recursive(g)
    assert reassemble(dec) == g
    for comp in dec.components:
        if comp.kind() == "prime":
            masks_graph = Graph(len(comp.vertices), [
                (comp.vertices.index(u), comp.vertices.index(v)) for u, v in comp.edges])
            assert is_prime_bruteforce(masks_graph)


def test_connected_graph_counts():
    # labelled connected graphs: 1, 1, 4, 38, 728
    assert [sum(1 for _ in enumerate_connected_graphs(n)) for n in range(1, 6)] == [1, 1, 4, 38, 728]
    with pytest.raises(ValueError):
        list(enumerate_connected_graphs(7))


@pytest.mark.parametrize("n, m", [(1, 0), (5, 4), (10, 45), (30, 60), (200, 600)])
def test_random_graph_shape(n, m):
    g = random_connected_graph(n, m, seed=7)
    assert (g.n, g.m) == (n, m)
    assert is_connected(g)
    assert g == random_connected_graph(n, m, seed=7)


def test_random_graph_infeasible():
    with pytest.raises(ValueError):
        random_connected_graph(4, 2, seed=0)
    with pytest.raises(ValueError):
        random_connected_graph(4, 7, seed=0)


def test_states_p3():
    # ST(P3): star with the centre opposite leaf 1
    tree, _ = build_split_tree(path(3))
    states = extremity_states(tree, {0, 2})
    leaf = tree.leaves[1]
    assert states[leaf] == PERFECT
    assert states[leaf.opposite] == EMPTY
    assert states[tree.leaves[0].opposite] == PERFECT
    # the leaf side of an end vertex sees 1 and 2 beyond it, but only 1 is accessible
    assert states[tree.leaves[0]] == MIXED


def test_classify_examples():
    tree, _ = build_split_tree(complete(3))
    assert classify_case_bruteforce(tree, {0, 1, 2}).case == 1
    tree, _ = build_split_tree(path(3))
    assert classify_case_bruteforce(tree, {0, 2}).case == 6
    tree, _ = build_split_tree(path(4))
    assert classify_case_bruteforce(tree, {0, 3}).case == 7
    tree, _ = build_split_tree(star(3))
    assert classify_case_bruteforce(tree, {0}).case == 2
    assert classify_case_bruteforce(tree, {1, 2, 0}).case == 4
