import pytest
from hypothesis import given

from splitdecomp import Graph, connected_components, format_edge_list, parse_edge_list
from splitdecomp.graph import (
    DuplicateEdgeError,
    MalformedLineError,
    SelfLoopError,
    VertexOutOfRangeError,
    is_connected,
)

from conftest import complete, graphs, path


def test_parse_p3():
    g = parse_edge_list("3 2\n0 1\n1 2")
    assert g == path(3)
    assert g.neighbors(1) == (0, 2)


def test_parse_single_vertex():
    g = parse_edge_list("1 0")
    assert (g.n, g.m) == (1, 0)


def test_comments_and_blank_lines():
    g = parse_edge_list("# header next\n3 2\n\n0 1\n# c\n2 1\n")
    assert g == path(3)


@pytest.mark.parametrize(
    "text, exc",
    [
        ("3 1\n0 3", VertexOutOfRangeError),
        ("3 2\n0 1\n1 0", DuplicateEdgeError),
        ("3 1\n1 1", SelfLoopError),
        ("3 1\n0 1 2", MalformedLineError),
        ("3 1\na b", MalformedLineError),
        ("3 2\n0 1", MalformedLineError),
        ("", MalformedLineError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_edge_list(text)


def test_error_carries_line_number():
    with pytest.raises(VertexOutOfRangeError) as info:
        parse_edge_list("3 2\n0 1\n1 7\n")
    assert info.value.line == 3


def test_self_loop_rejected_by_constructor():
    with pytest.raises(ValueError):
        Graph(2, [(1, 1)])


@given(graphs())
def test_round_trip(g):
    assert parse_edge_list(format_edge_list(g)) == g


@given(graphs())
def test_adjacency_is_symmetric(g):
    for u in range(g.n):
        for v in g.neighbors(u):
            assert u in g.neighbors(v)


def test_components_examples():
    assert connected_components(path(3)) == [[0, 1, 2]]
    assert connected_components(Graph(2, [])) == [[0], [1]]
    assert connected_components(complete(4)) == [[0, 1, 2, 3]]


@given(graphs())
def test_components_partition(g):
    comps = connected_components(g)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == list(range(g.n))
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    for c in comps:
        assert c == sorted(c)
        h, _ = g.induced(c)
        assert is_connected(h)
    assert is_connected(g) == (len(comps) <= 1)


def test_induced_relabels():
    h, names = path(5).induced([4, 2, 3])
    assert names == [2, 3, 4]
    assert h == path(3)
