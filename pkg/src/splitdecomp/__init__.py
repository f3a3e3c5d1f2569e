"""Split decomposition of graphs by incremental insertion along an LBFS order."""

from .builder import build_split_tree, fast_prime_test, insert_vertex, marker_states
from .disjoint_sets import DisjointSets
from .glt import (
    SplitTree,
    accessibility_graph,
    canonical_form,
    check_reduced,
    export,
    from_json,
    node_join,
    node_split,
    splits_from_tree,
)
from .graph import (
    DisconnectedGraphError,
    Graph,
    GraphFormatError,
    connected_components,
    format_edge_list,
    parse_edge_list,
)
from .lbfs import Ordering, induced_order, lbfs_order, verify_lbfs

__all__ = [
    "DisconnectedGraphError",
    "DisjointSets",
    "Graph",
    "GraphFormatError",
    "Ordering",
    "SplitTree",
    "accessibility_graph",
    "build_split_tree",
    "canonical_form",
    "check_reduced",
    "connected_components",
    "export",
    "fast_prime_test",
    "format_edge_list",
    "from_json",
    "induced_order",
    "insert_vertex",
    "lbfs_order",
    "marker_states",
    "node_join",
    "node_split",
    "parse_edge_list",
    "splits_from_tree",
    "verify_lbfs",
]
