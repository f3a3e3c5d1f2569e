"""
Cleaning before contraction: a vertex whose neighbourhood cuts through a star
"""

from splitdecomp import Graph, accessibility_graph, build_split_tree, check_reduced, insert_vertex
from splitdecomp.builder import marker_states

# a five-cycle where vertex 4 has two false twins, 5 and 6
edges = [(i, (i + 1) % 5) for i in range(5)] + [(3, 5), (0, 5), (3, 6), (0, 6)]
g = Graph(7, edges)

tree, _ = build_split_tree(g)
st = tree.structure()
for u in st.nodes:
    print(st.kind(u), len(st.markers[u]))

## Marker states for a neighbourhood that takes two of the three twins
S = [0, 4, 5]
states = marker_states(tree, S)
print(sorted(states.values()))

## Inserting 7: the star loses the perfect markers, then the rest is contracted
splits = tree.counters.node_splits
joins = tree.counters.node_joins
result = insert_vertex(tree, 7, S)
print("case", result.case)
print("splits", tree.counters.node_splits - splits, "joins", tree.counters.node_joins - joins)

plus = Graph(8, edges + [(v, 7) for v in S])
print(accessibility_graph(tree) == plus, check_reduced(tree).ok)

## Same graph, neighbourhood {0, 4}: this time the empty markers peel off
tree, _ = build_split_tree(g)
insert_vertex(tree, 7, [0, 4])
print(accessibility_graph(tree) == Graph(8, edges + [(0, 7), (4, 7)]))
