"""Lexicographic breadth-first search by partition refinement, plus a brute-force checker."""

from __future__ import annotations

from typing import Iterable, Sequence

from .graph import DisconnectedGraphError, Graph, is_connected


class Ordering:
    """A linear order of a vertex set.

    ``order[i]`` is the vertex at position ``i`` and ``pos[v]`` its inverse.
    Positions are 0-based.
    """

    __slots__ = ("order", "pos")

    def __init__(self, order: Iterable):
        self.order = tuple(order)
        self.pos = {v: i for i, v in enumerate(self.order)}
        if len(self.pos) != len(self.order):
            raise ValueError("ordering repeats an element")

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __getitem__(self, i):
        return self.order[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, Ordering):
            return self.order == other.order
        if isinstance(other, (tuple, list)):
            return self.order == tuple(other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"Ordering({self.order})"


class _Cell:
    # One class of the refinement. Items stay sorted by id; entries that left
    # the cell are skipped lazily through the ``head`` cursor.
    __slots__ = ("items", "head", "size", "prev", "next", "stamp", "twin")

    def __init__(self, items):
        self.items = items
        self.head = 0
        self.size = len(items)
        self.prev = None
        self.next = None
        self.stamp = -1
        self.twin = None


def lbfs_order(g: Graph, start: int | None = None) -> Ordering:
    """LBFS of a connected graph; ties go to the lowest vertex id.

    :param start: first vertex, defaults to the tie-break winner ``0``
    :raises DisconnectedGraphError: if ``g`` is disconnected
    :raises ValueError: on an invalid start vertex
    """
    n = g.n
    if start is not None and not (isinstance(start, int) and 0 <= start < n):
        raise ValueError(f"invalid start vertex {start!r}")
    if n == 0:
        return Ordering(())
    if not is_connected(g):
        raise DisconnectedGraphError("LBFS needs a connected graph")
    return _refine(g, start)


def _refine(g: Graph, start: int | None) -> Ordering:
    n = g.n
    first = _Cell(list(range(n)))
    head = first
    cell_of = [first] * n
    numbered = [False] * n
    order = []
    neighbors = g.neighbors
    for i in range(n):
        if i == 0 and start is not None:
            x = start
        else:
            c = head
            items = c.items
            h = c.head
            while True:
                y = items[h]
                if not numbered[y] and cell_of[y] is c:
                    break
                h += 1
            c.head = h
            x = y
        c = cell_of[x]
        numbered[x] = True
        cell_of[x] = None
        c.size -= 1
        if c.size == 0:
            if c.prev is None:
                head = c.next
            else:
                c.prev.next = c.next
            if c.next is not None:
                c.next.prev = c.prev
        order.append(x)

        for y in neighbors(x):
            if numbered[y]:
                continue
            c = cell_of[y]
            if c.stamp != i:
                c.stamp = i
                nc = _Cell([])
                nc.stamp = i
                nc.prev = c.prev
                nc.next = c
                if c.prev is None:
                    head = nc
                else:
                    c.prev.next = nc
                c.prev = nc
                c.twin = nc
            nc = c.twin
            nc.items.append(y)
            nc.size += 1
            cell_of[y] = nc
            c.size -= 1
            if c.size == 0:
                if c.prev is None:
                    head = c.next
                else:
                    c.prev.next = c.next
                if c.next is not None:
                    c.next.prev = c.prev
    return Ordering(order)


def verify_lbfs(g: Graph, sigma: Ordering | Sequence[int]) -> bool:
    """Check the four-point condition on every triple.

    For ``a < b < c`` in ``sigma`` with ``ac`` an edge and ``ab`` not, some
    ``d < a`` must see ``b`` but not ``c``.
    """
    order = sigma.order if isinstance(sigma, Ordering) else tuple(sigma)
    n = g.n
    if sorted(order) != list(range(n)):
        raise ValueError("sigma is not a permutation of the vertex set")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    adj = g.adj
    # neighbours of each vertex from earliest to latest
    by_pos = [sorted(adj[v], key=pos.__getitem__) for v in range(n)]
    earliest = {}

    def witness(b, c):
        # position of the first vertex seeing b but not c
        key = (b, c)
        if key not in earliest:
            best = n
            for d in by_pos[b]:
                if d != c and d not in adj[c]:
                    best = pos[d]
                    break
            earliest[key] = best
        return earliest[key]

    for a in range(n):
        pa = pos[a]
        for c in adj[a]:
            pc = pos[c]
            if pc <= pa:
                continue
            for i in range(pa + 1, pc):
                b = order[i]
                if b in adj[a]:
                    continue
                if witness(b, c) >= pa:
                    return False
    return True


def induced_order(tree, u, sigma: Ordering) -> Ordering:
    """Order the markers of node ``u`` by the earliest leaf each one can reach.

    For a marker ``q`` the key is ``min sigma(A(q))``, where ``A(q)`` is the
    set of leaves reached from ``q`` by alternating tree-edges and
    label-edges. Rebuilds ``A(q)`` by walking the tree.
    """
    st = tree.structure()
    if u not in st.markers:
        raise ValueError("not a live node of this tree")
    pos = sigma.pos

    def earliest(q):
        best = None
        stack = [q.opposite]
        while stack:
            o = stack.pop()
            if o.is_leaf:
                p = pos[o.vertex]
                if best is None or p < best:
                    best = p
                continue
            w = st.owner[o]
            stack.extend(s.opposite for s in st.neighbors(w, o))
        return best

    keys = {q: earliest(q) for q in st.markers[u]}
    return Ordering(sorted(st.markers[u], key=keys.__getitem__))
