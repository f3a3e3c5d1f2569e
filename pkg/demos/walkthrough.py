"""
Building split-trees one vertex at a time, and reading them back
"""

from splitdecomp import (
    Graph, SplitTree, accessibility_graph, build_split_tree, export,
    insert_vertex, lbfs_order, splits_from_tree,
)


def show(tree):
    st = tree.structure()
    for u in st.nodes:
        print(f"  {st.kind(u):6s} node with {len(st.markers[u])} markers")


## A path on four vertices is two stars glued together
p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
tree, stats = build_split_tree(p4)
show(tree)
print(sorted(splits_from_tree(tree)))

## Growing it by hand: one vertex seeing both ends closes a five-cycle
tree = SplitTree()
for x in lbfs_order(p4):
    insert_vertex(tree, x, [y for y in p4.neighbors(x) if y in tree.leaves])
result = insert_vertex(tree, 4, [0, 3])
print("case", result.case)
show(tree)
print(accessibility_graph(tree) == Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]))

## A twin of a cycle vertex splits off again
result = insert_vertex(tree, 5, [4, 1, 3])
print("case", result.case)
show(tree)

## Complete graphs and stars collapse to a single node
for g in (Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]),
          Graph(5, [(0, i) for i in range(1, 5)])):
    show(build_split_tree(g)[0])

## Export for graphviz
print(export(tree, "dot"))
