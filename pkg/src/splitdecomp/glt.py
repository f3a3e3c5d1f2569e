"""Rooted graph-labelled trees: storage, node-split / node-join, validation and export.

Leaves stand for graph vertices. Each internal node carries a label graph on
its marker vertices, and every marker is paired through a tree-edge with an
``opposite`` (another marker or a leaf). Clique and star labels keep no
explicit edges; prime labels keep adjacency sets on their markers.

Parent lookup follows a two-level scheme. A leaf or node with a direct
``parent`` pointer uses it. Otherwise its ``token`` is an element of the
children-set of a prime node, and the owner of that set is the parent.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

from .disjoint_sets import DisjointSets
from .graph import Graph, is_connected
from .oracle import Bipartition, adjacency_masks, has_split

CLIQUE = "clique"
STAR = "star"
PRIME = "prime"
DEGENERATE = (CLIQUE, STAR)


class Leaf:
    __slots__ = ("vertex", "opposite", "parent", "token", "stamp")
    is_leaf = True

    def __init__(self, vertex: int):
        self.vertex = vertex
        self.opposite = None
        self.parent = None
        self.token = None
        self.stamp = 0

    def __repr__(self) -> str:
        return f"Leaf({self.vertex})"


class Marker:
    __slots__ = ("uid", "node", "opposite", "adj", "stamp")
    is_leaf = False

    def __init__(self, uid: int, node: "Node"):
        self.uid = uid
        # reliable for root markers and for markers of clique/star nodes
        self.node = node
        self.opposite = None
        self.adj = None
        self.stamp = 0

    def __repr__(self) -> str:
        return f"m{self.uid}"


class Node:
    __slots__ = (
        "uid", "kind", "markers", "size", "root_marker", "centre",
        "last", "universal", "parent", "token", "cset", "alive",
    )
    is_leaf = False

    def __init__(self, uid: int, kind: str):
        self.uid = uid
        self.kind = kind
        self.markers = set() if kind != PRIME else None
        self.size = 0
        self.root_marker = None
        self.centre = None
        self.last = None
        self.universal = None
        self.parent = None
        self.token = None
        self.cset = None
        self.alive = True

    def __repr__(self) -> str:
        state = "" if self.alive else " dead"
        return f"<{self.kind} n{self.uid} size={self.size}{state}>"


@dataclass
class Counters:
    new_label_edges: int = 0
    new_degenerate_markers: int = 0
    max_new_degenerate_markers: int = 0
    last_new_degenerate_markers: int = 0
    spanning_total: int = 0
    node_joins: int = 0
    node_splits: int = 0
    cases: dict = field(default_factory=lambda: {c: 0 for c in range(1, 8)})


class SplitTree:
    """Mutable rooted GLT. The root is the leaf of the first inserted vertex."""

    def __init__(self):
        self.leaves: dict[int, Leaf] = {}
        self.root: Leaf | None = None
        self.sets = DisjointSets()
        self.nodes: list[Node] = []
        self.gen = 0
        self.counters = Counters()
        self.created: list | None = None
        self._uids = itertools.count(1)
        self._tokens = itertools.count()

    @property
    def n(self) -> int:
        return len(self.leaves)

    # -- allocation ---------------------------------------------------------

    def new_node(self, kind: str) -> Node:
        u = Node(next(self._uids), kind)
        self.nodes.append(u)
        return u

    def new_marker(self, node: Node) -> Marker:
        m = Marker(next(self._uids), node)
        if self.created is not None:
            self.created.append(m)
        return m

    def adopt(self, u: Node, child) -> None:
        """Put ``child`` into the children-set of the prime node ``u``."""
        sets = self.sets
        e = sets.make_set(next(self._tokens), u)
        child.token = e
        child.parent = None
        if u.cset is None:
            u.cset = e
        else:
            u.cset = sets.union(e, u.cset, u)

    # -- navigation -----------------------------------------------------------

    def parent_of(self, x):
        p = x.parent
        if p is not None:
            return p
        return self.sets.owner_of(x.token)

    @staticmethod
    def child_of(m: Marker):
        o = m.opposite
        return o if o.is_leaf else o.node

    def markers_of(self, u: Node):
        if u.kind != PRIME:
            return u.markers
        seen = {u.root_marker}
        queue = deque(seen)
        while queue:
            m = queue.popleft()
            for t in m.adj:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen

    def top_node(self):
        if self.root is None or self.root.opposite is None or self.root.opposite.is_leaf:
            return None
        return self.root.opposite.node

    def structure(self) -> "Structure":
        """Snapshot of the live tree for whole-tree (oracle grade) algorithms."""
        return Structure(self)

    def live_nodes(self) -> list[Node]:
        return self.structure().nodes

    def fake_nodes(self) -> int:
        return sum(1 for u in self.nodes if not u.alive)

    def label_graph(self, u: Node, st: "Structure | None" = None) -> tuple[Graph, list[Marker]]:
        st = st or self.structure()
        ms = st.markers[u]
        index = {m: i for i, m in enumerate(ms)}
        edges = set()
        for m in ms:
            for t in st.neighbors(u, m):
                a, b = index[m], index[t]
                edges.add((min(a, b), max(a, b)))
        return Graph(len(ms), edges), ms

    def stats(self, m: int | None = None) -> dict:
        c = self.counters
        out = {
            "finds": self.sets.finds,
            "unions": self.sets.unions,
            "make_sets": self.sets.make_sets,
            "new_label_edges": c.new_label_edges,
            "new_degenerate_markers": c.new_degenerate_markers,
            "spanning_total": c.spanning_total,
            "n": self.n,
            "m": m,
            "node_joins": c.node_joins,
            "node_splits": c.node_splits,
            "fake_nodes": self.fake_nodes(),
            "cases": {str(k): v for k, v in c.cases.items()},
        }
        return out


class Structure:
    """Marker lists, marker owners and parents of every live node, found by traversal."""

    def __init__(self, tree: SplitTree):
        self.tree = tree
        self.nodes: list[Node] = []
        self.markers: dict[Node, list[Marker]] = {}
        self.owner: dict[Marker, Node] = {}
        self.parent: dict = {}
        self._kinds: dict = {}
        top = tree.top_node()
        if top is None:
            return
        self.parent[top] = tree.root
        stack = [top]
        while stack:
            u = stack.pop()
            if u in self.markers:
                raise ValueError(f"node {u!r} reached twice: not a tree")
            self.nodes.append(u)
            ms = sorted(tree.markers_of(u), key=lambda m: m.uid)
            self.markers[u] = ms
            for m in ms:
                self.owner[m] = u
            for m in reversed(ms):
                if m is u.root_marker:
                    continue
                o = m.opposite
                if not o.is_leaf:
                    w = o.node
                    self.parent[w] = u
                    stack.append(w)

    def neighbors(self, u: Node, m: Marker):
        if u.kind == PRIME:
            return m.adj
        if u.kind == CLIQUE:
            return [t for t in self.markers[u] if t is not m]
        if m is u.centre:
            return [t for t in self.markers[u] if t is not m]
        return [u.centre]

    def kind(self, u: Node) -> str:
        """Kind read off the label itself, whatever the stored kind says."""
        if u.kind != PRIME:
            return u.kind
        k = self._kinds.get(u)
        if k is None:
            ms = self.markers[u]
            size = len(ms)
            degs = [len(m.adj) for m in ms]
            if all(d == size - 1 for d in degs):
                k = CLIQUE
            elif size >= 3 and degs.count(size - 1) == 1 and degs.count(1) == size - 1:
                k = STAR
            else:
                k = PRIME
            self._kinds[u] = k
        return k

    def centre(self, u: Node):
        if u.kind == STAR:
            return u.centre
        if self.kind(u) == STAR:
            size = len(self.markers[u])
            return next(m for m in self.markers[u] if len(m.adj) == size - 1)
        return None

    def leaf_sets(self) -> dict:
        """``L(m)`` for every marker ``m``: the leaves beyond its tree-edge."""
        below = {}
        for u in reversed(self.nodes):
            acc = set()
            for m in self.markers[u]:
                if m is u.root_marker:
                    continue
                o = m.opposite
                acc |= {o.vertex} if o.is_leaf else below[o.node]
            below[u] = frozenset(acc)
        everything = frozenset(self.tree.leaves)
        out = {}
        for u in self.nodes:
            for m in self.markers[u]:
                if m is u.root_marker:
                    out[m] = everything - below[u]
                else:
                    o = m.opposite
                    out[m] = frozenset((o.vertex,)) if o.is_leaf else below[o.node]
        return out


# -- node-split and node-join ----------------------------------------------------


def _split(tree: SplitTree, v: Node, A: list):
    """Move the markers ``A`` of the degenerate node ``v`` into a new node.

    Returns ``(u, q, r)``: the new node, the fresh marker left in ``v`` and
    its opposite in ``u``.
    """
    aset = set(A)
    k = len(aset)
    u = tree.new_node(v.kind)
    q = tree.new_marker(v)
    r = tree.new_marker(u)
    if v.kind == STAR:
        c = v.centre
        if c in aset:
            u.centre = c
            v.centre = q
        else:
            u.centre = r
    vm = v.markers
    vm.difference_update(aset)
    vm.add(q)
    aset.add(r)
    u.markers = aset
    rm = v.root_marker
    for a in A:
        a.node = u
        if a is not rm:
            o = a.opposite
            (o if o.is_leaf else o.node).parent = u
    q.opposite = r
    r.opposite = q
    u.size = k + 1
    v.size = v.size - k + 1
    if rm in aset:
        u.root_marker = rm
        u.parent, u.token = v.parent, v.token
        v.root_marker = q
        v.parent, v.token = u, None
    else:
        u.root_marker = r
        u.parent, u.token = v, None
    tree.counters.node_splits += 1
    return u, q, r


def node_split(tree: SplitTree, v: Node, A) -> tuple[Node, Node]:
    """Split the degenerate node ``v`` along ``(A, rest)``.

    Returns ``(u, v)`` where the new node ``u`` holds ``A`` plus a fresh
    marker and ``v`` keeps the rest plus the other fresh marker.
    """
    if not v.alive:
        raise ValueError("node is not alive")
    if v.kind == PRIME:
        raise ValueError("only clique and star nodes can be split this way")
    A = list(dict.fromkeys(A))
    if any(a not in v.markers for a in A):
        raise ValueError("A contains markers of another node")
    if not (2 <= len(A) <= v.size - 2):
        raise ValueError("A must leave at least two markers on each side")
    u, _, _ = _split(tree, v, A)
    return u, v


def _materialize(tree: SplitTree, u: Node) -> None:
    ms = u.markers
    if u.kind == CLIQUE:
        for m in ms:
            m.adj = set(ms)
            m.adj.discard(m)
        tree.counters.new_label_edges += len(ms) * (len(ms) - 1) // 2
    else:
        c = u.centre
        for m in ms:
            m.adj = {c}
        c.adj = set(ms)
        c.adj.discard(c)
        tree.counters.new_label_edges += len(ms) - 1


def _make_prime(tree: SplitTree, u: Node, skip=None) -> None:
    """Give ``u`` explicit adjacency and a children-set (``skip`` is left out)."""
    _materialize(tree, u)
    ms = u.markers
    rm = u.root_marker
    u.cset = None
    for m in ms:
        if m is rm:
            continue
        o = m.opposite
        ch = o if o.is_leaf else o.node
        if ch is not skip:
            tree.adopt(u, ch)
    u.kind = PRIME
    u.markers = None
    u.centre = None
    u.last = None
    u.universal = None


def _join(tree: SplitTree, u: Node, c: Node):
    """Merge the child ``c`` into ``u``; ``u`` survives as a prime-stored node.

    Returns the star centre replaced by ``u``'s marker when the star shortcut
    was taken, else ``None``.
    """
    if u.kind != PRIME:
        _make_prime(tree, u, skip=c)
    qc = c.root_marker
    q = qc.opposite
    gen = tree.gen
    counters = tree.counters
    replaced = None
    if c.kind == STAR and c.centre is not qc:
        cc = c.centre
        moved = 0
        for t in c.markers:
            if t is qc or t is cc:
                continue
            t.adj = {q}
            q.adj.add(t)
            moved += 1
            o = t.opposite
            tree.adopt(u, o if o.is_leaf else o.node)
        o = cc.opposite
        q.opposite = o
        o.opposite = q
        tree.adopt(u, o if o.is_leaf else o.node)
        if cc.stamp == gen:
            q.stamp = gen
        cc.stamp = 0
        cc.node = None
        counters.new_label_edges += moved
        replaced = cc
    else:
        if c.kind != PRIME:
            _materialize(tree, c)
            for t in c.markers:
                if t is not qc:
                    o = t.opposite
                    tree.adopt(u, o if o.is_leaf else o.node)
        else:
            u.cset = tree.sets.union(u.cset, c.cset, u)
        nq = q.adj
        nqc = qc.adj
        for a in nq:
            a.adj.discard(q)
        for b in nqc:
            b.adj.discard(qc)
        for a in nq:
            a.adj.update(nqc)
        for b in nqc:
            b.adj.update(nq)
        counters.new_label_edges += len(nq) * len(nqc)
        q.node = None
    u.size += c.size - 2
    qc.node = None
    c.alive = False
    c.markers = None
    c.cset = None
    counters.node_joins += 1
    return replaced


def node_join(tree: SplitTree, u: Node, c: Node) -> Node:
    """Merge the child node ``c`` into its parent ``u``.

    ``u`` is stored as prime afterwards even when the merged label happens to
    be a clique or a star; :class:`Structure` reads the true kind.
    """
    if c.is_leaf or u.is_leaf:
        raise ValueError("both arguments must be nodes")
    if not (u.alive and c.alive) or tree.parent_of(c) is not u:
        raise ValueError("second node is not a child of the first")
    _join(tree, u, c)
    return u


# -- oracle-grade whole-tree algorithms -----------------------------------------


def accessibility_edges(tree: SplitTree) -> set[tuple[int, int]]:
    st = tree.structure()
    owner = st.owner
    edges = set()
    for v, leaf in tree.leaves.items():
        if leaf.opposite is None:
            continue
        stack = [leaf.opposite]
        while stack:
            o = stack.pop()
            if o.is_leaf:
                w = o.vertex
                if v < w:
                    edges.add((v, w))
                continue
            u = owner[o]
            for s in st.neighbors(u, o):
                stack.append(s.opposite)
    return edges


def accessibility_graph(tree: SplitTree) -> Graph:
    """The graph whose edges join leaves linked by an alternating path."""
    if sorted(tree.leaves) != list(range(tree.n)):
        raise ValueError("leaves are not labelled 0..n-1; use accessibility_edges")
    return Graph(tree.n, accessibility_edges(tree))


@dataclass
class Report:
    problems: list = field(default_factory=list)
    assumed_prime: int = 0

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


PRIME_CHECK_LIMIT = 12


def check_reduced(tree: SplitTree) -> Report:
    """Structural sanity plus reducedness: prime or degenerate labels, no clique or star join."""
    rep = Report()
    bad = rep.problems.append
    if tree.root is None:
        if tree.leaves:
            bad("leaves but no root")
        return rep
    for v, leaf in tree.leaves.items():
        if leaf.vertex != v:
            bad(f"leaf registered under {v} has vertex {leaf.vertex}")
        o = leaf.opposite
        if tree.n >= 2 and (o is None or o.opposite is not leaf):
            bad(f"leaf {v}: opposite pointers not mutually inverse")
    try:
        st = tree.structure()
    except ValueError as exc:
        bad(str(exc))
        return rep
    if tree.n <= 2:
        if st.nodes:
            bad("a tree with at most two leaves must have no nodes")
        return rep
    if not st.nodes:
        bad("no nodes in a tree with three or more leaves")
        return rep

    reached = 0
    for u in st.nodes:
        ms = st.markers[u]
        if not u.alive:
            bad(f"{u!r} is fake but still in the tree")
        if len(ms) < 3:
            bad(f"{u!r} has fewer than three markers")
        if len(ms) != u.size:
            bad(f"{u!r} records size {u.size} but has {len(ms)} markers")
        if u.root_marker not in ms:
            bad(f"{u!r} does not contain its root marker")
        if u.root_marker.node is not u:
            bad(f"{u!r} root marker has a stale node pointer")
        par = st.parent[u]
        if tree.parent_of(u) is not par:
            bad(f"{u!r}: parent lookup disagrees with the tree")
        po = u.root_marker.opposite
        if par.is_leaf:
            if po is not par:
                bad(f"{u!r}: root marker is not opposite the root leaf")
        elif st.owner.get(po) is not par:
            bad(f"{u!r}: root marker is not opposite a marker of its parent")
        for m in ms:
            o = m.opposite
            if o is None or o.opposite is not m:
                bad(f"{u!r}: opposite pointers of {m!r} not mutually inverse")
                continue
            if o.is_leaf and m is not u.root_marker:
                reached += 1
                if tree.parent_of(o) is not u:
                    bad(f"{o!r}: parent lookup disagrees with the tree")
        if u.kind == PRIME:
            mset = set(ms)
            for m in ms:
                if m.adj is None or not m.adj <= mset or m in m.adj:
                    bad(f"{u!r}: adjacency of {m!r} leaves the label")
                    break
                if any(m not in t.adj for t in m.adj):
                    bad(f"{u!r}: adjacency of {m!r} is not symmetric")
                    break
            if u.last is not None and u.last not in mset:
                bad(f"{u!r}: last marker is not in the label")
            if u.universal is not None and len(u.universal.adj) != len(ms) - 1:
                bad(f"{u!r}: recorded universal marker is not universal")
            g, _ = tree.label_graph(u, st)
            if not is_connected(g):
                bad(f"{u!r}: label is disconnected")
            elif st.kind(u) == PRIME:
                if len(ms) <= PRIME_CHECK_LIMIT:
                    if has_split(adjacency_masks(g)):
                        bad(f"{u!r}: label has a split")
                else:
                    rep.assumed_prime += 1
        else:
            if any(m.node is not u for m in ms):
                bad(f"{u!r}: marker with a stale node pointer")
            if u.kind == STAR and u.centre not in ms:
                bad(f"{u!r}: star centre missing")
    if reached + 1 != tree.n:
        bad(f"traversal reaches {reached + 1} leaves, tree has {tree.n}")

    for u in st.nodes:
        par = st.parent[u]
        if par.is_leaf:
            continue
        ku, kp = st.kind(u), st.kind(par)
        if ku == CLIQUE and kp == CLIQUE:
            bad(f"{par!r} and {u!r}: two adjacent cliques")
        if ku == STAR and kp == STAR:
            a = u.root_marker is st.centre(u)
            b = u.root_marker.opposite is st.centre(par)
            if a != b:
                bad(f"{par!r} and {u!r}: stars joinable across one centre")
    return rep


def canonical_form(tree: SplitTree) -> str:
    """Text that depends only on the tree up to renaming of internal objects."""
    vs = sorted(tree.leaves)
    if len(vs) <= 2:
        return f"n={len(vs)} " + "-".join(map(str, vs))
    st = tree.structure()
    owner = st.owner
    start = tree.leaves[vs[0]]
    top = owner[start.opposite]
    entry = {top: start.opposite}
    order = []
    stack = [top]
    while stack:
        u = stack.pop()
        order.append(u)
        for m in st.markers[u]:
            if m is entry[u]:
                continue
            o = m.opposite
            if not o.is_leaf:
                w = owner[o]
                entry[w] = o
                stack.append(w)
    low = {}

    def key(m):
        o = m.opposite
        return o.vertex if o.is_leaf else low[owner[o]]

    for u in reversed(order):
        low[u] = min(key(m) for m in st.markers[u] if m is not entry[u])

    index = {}
    seq = []
    stack = [top]
    while stack:
        u = stack.pop()
        index[u] = len(seq)
        seq.append(u)
        kids = [owner[m.opposite] for m in st.markers[u]
                if m is not entry[u] and not m.opposite.is_leaf]
        kids.sort(key=lambda w: low[w], reverse=True)
        stack.extend(kids)

    def token(u, m):
        if m is entry[u]:
            return (0, 0, "^")
        o = m.opposite
        if o.is_leaf:
            return (1, o.vertex, f"L{o.vertex}")
        w = owner[o]
        return (2, index[w], f"N{index[w]}")

    lines = [f"n={len(vs)} root=L{vs[0]}"]
    for u in seq:
        toks = {m: token(u, m) for m in st.markers[u]}
        names = " ".join(t[2] for t in sorted(toks.values()))
        kind = st.kind(u)
        line = f"{index[u]} {kind} [{names}]"
        if kind == STAR:
            line += f" centre={toks[st.centre(u)][2]}"
        elif kind == PRIME:
            pairs = sorted(
                tuple(sorted((toks[m], toks[t])))
                for m in st.markers[u] for t in m.adj if toks[m] < toks[t]
            )
            line += " " + " ".join(f"{a[2]}-{b[2]}" for a, b in pairs)
        lines.append(line)
    return "\n".join(lines)


MAX_DEGENERATE_ENUM = 20


def splits_from_tree(tree: SplitTree) -> set[Bipartition]:
    """All splits of the represented graph, read off the tree."""
    st = tree.structure()
    if not st.nodes:
        return set()
    L = st.leaf_sets()
    everything = frozenset(tree.leaves)
    out = set()
    for u in st.nodes:
        if not st.parent[u].is_leaf:
            side = everything - L[u.root_marker]
            out.add(Bipartition.of(side, everything - side))
        if st.kind(u) == PRIME:
            continue
        ms = st.markers[u]
        k = len(ms)
        if k > MAX_DEGENERATE_ENUM:
            raise ValueError(f"degenerate label with {k} markers is too large to enumerate")
        first = L[ms[0]]
        for bits in range(1 << (k - 1)):
            size_a = 1 + bin(bits).count("1")
            if size_a < 2 or k - size_a < 2:
                continue
            side = set(first)
            for i in range(1, k):
                if bits >> (i - 1) & 1:
                    side |= L[ms[i]]
            out.add(Bipartition.of(side, everything - side))
    return out


# -- serialization ------------------------------------------------------------------


def _numbering(tree: SplitTree, st: Structure):
    node_id = {u: i for i, u in enumerate(st.nodes)}
    marker_id = {}
    for u in st.nodes:
        for m in st.markers[u]:
            marker_id[m] = len(marker_id)
    return node_id, marker_id


def to_dict(tree: SplitTree, labels=None) -> dict:
    name = (lambda v: v) if labels is None else (lambda v: labels[v])
    st = tree.structure()
    node_id, marker_id = _numbering(tree, st)
    doc = {
        "n": tree.n,
        "root_leaf": None if tree.root is None else name(tree.root.vertex),
        "leaves": sorted(name(v) for v in tree.leaves),
        "nodes": [],
    }
    for u in st.nodes:
        kind = u.kind
        entry = {
            "id": node_id[u],
            "kind": kind,
            "centre": marker_id[u.centre] if kind == STAR else None,
            "root_marker": marker_id[u.root_marker],
            "markers": [],
        }
        for m in st.markers[u]:
            o = m.opposite
            opp = ({"type": "leaf", "id": name(o.vertex)} if o.is_leaf
                   else {"type": "marker", "id": marker_id[o]})
            me = {"id": marker_id[m], "opposite": opp}
            if kind == PRIME:
                me["adj"] = sorted(marker_id[t] for t in m.adj)
            entry["markers"].append(me)
        if kind == PRIME:
            entry["last"] = None if u.last is None else marker_id[u.last]
            entry["universal"] = None if u.universal is None else marker_id[u.universal]
        doc["nodes"].append(entry)
    return doc


def export_json(tree: SplitTree, labels=None) -> str:
    return json.dumps(to_dict(tree, labels), indent=1)


def export_dot(tree: SplitTree, labels=None) -> str:
    name = (lambda v: v) if labels is None else (lambda v: labels[v])
    st = tree.structure()
    node_id, marker_id = _numbering(tree, st)
    out = ["graph splittree {", "  node [shape=circle, fontsize=10];"]
    for v in sorted(tree.leaves):
        out.append(f'  l{v} [label="{name(v)}"];')
    for u in st.nodes:
        i = node_id[u]
        kind = st.kind(u)
        out.append(f"  subgraph cluster_n{i} {{")
        out.append(f'    label="{kind}"; style=rounded;')
        for m in st.markers[u]:
            out.append(f"    m{marker_id[m]} [shape=point, width=0.08];")
        for m in st.markers[u]:
            for t in sorted(st.neighbors(u, m), key=marker_id.__getitem__):
                if marker_id[m] < marker_id[t]:
                    out.append(f"    m{marker_id[m]} -- m{marker_id[t]} [style=dashed];")
        out.append("  }")
    for u in st.nodes:
        for m in st.markers[u]:
            o = m.opposite
            if o.is_leaf:
                out.append(f"  m{marker_id[m]} -- l{o.vertex} [penwidth=2];")
            elif marker_id[m] < marker_id[o]:
                out.append(f"  m{marker_id[m]} -- m{marker_id[o]} [penwidth=2];")
    if not st.nodes and tree.n == 2:
        a, b = sorted(tree.leaves)
        out.append(f"  l{a} -- l{b} [penwidth=2];")
    out.append("}")
    return "\n".join(out) + "\n"


def export(tree: SplitTree, fmt: str = "json", labels=None) -> str:
    if fmt == "json":
        return export_json(tree, labels)
    if fmt == "dot":
        return export_dot(tree, labels)
    raise ValueError(f"unknown format {fmt!r}")


def from_dict(doc: dict) -> SplitTree:
    """Rebuild a tree written by :func:`to_dict`."""
    tree = SplitTree()
    for v in doc["leaves"]:
        tree.leaves[v] = Leaf(v)
    if doc["root_leaf"] is None:
        return tree
    tree.root = tree.leaves[doc["root_leaf"]]
    if not doc["nodes"]:
        if len(tree.leaves) == 2:
            a, b = tree.leaves.values()
            a.opposite, b.opposite = b, a
            other = b if a is tree.root else a
            other.parent = tree.root
        return tree
    markers = {}
    nodes = {}
    for entry in doc["nodes"]:
        u = tree.new_node(entry["kind"])
        nodes[entry["id"]] = u
        for me in entry["markers"]:
            m = tree.new_marker(u)
            markers[me["id"]] = m
            if u.kind != PRIME:
                u.markers.add(m)
        u.size = len(entry["markers"])
    for entry in doc["nodes"]:
        u = nodes[entry["id"]]
        for me in entry["markers"]:
            m = markers[me["id"]]
            opp = me["opposite"]
            m.opposite = tree.leaves[opp["id"]] if opp["type"] == "leaf" else markers[opp["id"]]
            if m.opposite.is_leaf:
                m.opposite.opposite = m
            if u.kind == PRIME:
                m.adj = {markers[t] for t in me["adj"]}
        u.root_marker = markers[entry["root_marker"]]
        if u.kind == STAR:
            u.centre = markers[entry["centre"]]
        if u.kind == PRIME:
            u.last = None if entry.get("last") is None else markers[entry["last"]]
            u.universal = None if entry.get("universal") is None else markers[entry["universal"]]
    # parent links, top-down
    for entry in doc["nodes"]:
        u = nodes[entry["id"]]
        for me in entry["markers"]:
            m = markers[me["id"]]
            if m is u.root_marker:
                continue
            ch = m.opposite if m.opposite.is_leaf else m.opposite.node
            if u.kind == PRIME:
                tree.adopt(u, ch)
            else:
                ch.parent = u
    top = tree.root.opposite.node
    top.parent = tree.root
    return tree


def from_json(text: str) -> SplitTree:
    return from_dict(json.loads(text))
