"""Brute-force reference implementations used to check the fast code.

Everything here is exponential or quadratic on purpose and works straight
from the definitions: splits are found by trying every bipartition, and
marker states are computed by walking the whole tree.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator, NamedTuple

from .graph import Graph

MAX_SPLIT_N = 16
MAX_DECOMPOSE_N = 14
MAX_ENUM_N = 6


class Bipartition(NamedTuple):
    """Unordered bipartition, normalised so that ``a`` holds the smallest element."""

    a: frozenset
    b: frozenset

    @classmethod
    def of(cls, first, second) -> "Bipartition":
        first, second = frozenset(first), frozenset(second)
        if min(second) < min(first):
            first, second = second, first
        return cls(first, second)

    def __repr__(self) -> str:
        return f"({sorted(self.a)} | {sorted(self.b)})"


def adjacency_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def split_masks(masks: list[int]) -> Iterator[int]:
    """Yield every split side ``A`` (as a bitmask containing vertex 0)."""
    k = len(masks)
    full = (1 << k) - 1
    for a in range(1, full, 2):
        b = full ^ a
        if bin(a).count("1") < 2 or bin(b).count("1") < 2:
            continue
        near_a = 0
        near_b = 0
        rest = a
        while rest:
            low = rest & -rest
            near_a |= masks[low.bit_length() - 1]
            rest ^= low
        b_front = near_a & b
        if not b_front:
            continue
        rest = b
        while rest:
            low = rest & -rest
            near_b |= masks[low.bit_length() - 1]
            rest ^= low
        a_front = near_b & a
        rest = a_front
        ok = True
        while rest:
            low = rest & -rest
            if masks[low.bit_length() - 1] & b_front != b_front:
                ok = False
                break
            rest ^= low
        if ok:
            yield a


def has_split(masks: list[int]) -> bool:
    return next(split_masks(masks), None) is not None


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def enumerate_splits_bruteforce(g: Graph) -> set[Bipartition]:
    if g.n > MAX_SPLIT_N:
        raise ValueError(f"brute-force split enumeration is capped at n={MAX_SPLIT_N}")
    full = (1 << g.n) - 1
    return {
        Bipartition.of(_members(a), _members(full ^ a))
        for a in split_masks(adjacency_masks(g))
    }


def is_prime_bruteforce(g: Graph) -> bool:
    if g.n > MAX_SPLIT_N:
        raise ValueError(f"brute-force primality is capped at n={MAX_SPLIT_N}")
    return not has_split(adjacency_masks(g))


def is_clique(n: int, edges) -> bool:
    return len(edges) == n * (n - 1) // 2


def star_centre(vertices, edges):
    """Centre of a star on ``vertices`` (at least 3), or ``None``."""
    vertices = list(vertices)
    if len(vertices) < 3 or len(edges) != len(vertices) - 1:
        return None
    deg = {v: 0 for v in vertices}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    hubs = [v for v in vertices if deg[v] == len(vertices) - 1]
    return hubs[0] if len(hubs) == 1 else None


class Component(NamedTuple):
    vertices: tuple
    edges: frozenset

    def kind(self) -> str:
        if is_clique(len(self.vertices), self.edges):
            return "clique"
        if star_centre(self.vertices, self.edges) is not None:
            return "star"
        return "prime"


class Decomposition(NamedTuple):
    n: int
    components: list
    matching: list


def _local_masks(vertices, edges):
    index = {v: i for i, v in enumerate(vertices)}
    masks = [0] * len(vertices)
    for u, v in edges:
        masks[index[u]] |= 1 << index[v]
        masks[index[v]] |= 1 << index[u]
    return masks


def decompose_recursive(g: Graph) -> Decomposition:
    """Split recursively until every piece is prime or degenerate.

    Marker vertices get ids ``n, n+1, ...``; ``matching`` lists the pairs
    ``(a, b)`` created by each split, in creation order. At each step the
    split whose side ``A`` has the smallest bitmask is taken.
    """
    if g.n > MAX_DECOMPOSE_N:
        raise ValueError(f"recursive decomposition is capped at n={MAX_DECOMPOSE_N}")
    next_id = g.n
    work = [Component(tuple(range(g.n)), frozenset(g.edges))]
    done, matching = [], []
    while work:
        comp = work.pop()
        verts, edges = comp
        if comp.kind() != "prime":
            done.append(comp)
            continue
        a = next(split_masks(_local_masks(verts, edges)), None)
        if a is None:
            done.append(comp)
            continue
        side_a = {verts[i] for i in _members(a)}
        side_b = set(verts) - side_a
        ma, mb = next_id, next_id + 1
        next_id += 2
        front_a = {u if u in side_a else v for u, v in edges if (u in side_a) != (v in side_a)}
        front_b = {u if u in side_b else v for u, v in edges if (u in side_a) != (v in side_a)}
        ea = {e for e in edges if e[0] in side_a and e[1] in side_a}
        eb = {e for e in edges if e[0] in side_b and e[1] in side_b}
        ea |= {(min(u, ma), max(u, ma)) for u in front_a}
        eb |= {(min(u, mb), max(u, mb)) for u in front_b}
        matching.append((ma, mb))
        work.append(Component(tuple(sorted(side_b | {mb})), frozenset(eb)))
        work.append(Component(tuple(sorted(side_a | {ma})), frozenset(ea)))
    done.sort(key=lambda c: c.vertices)
    return Decomposition(g.n, done, matching)


def reassemble(dec: Decomposition) -> Graph:
    """Undo a decomposition by joining every matched marker pair."""
    adj: dict[int, set] = {}
    for comp in dec.components:
        for v in comp.vertices:
            adj.setdefault(v, set())
        for u, v in comp.edges:
            adj[u].add(v)
            adj[v].add(u)
    for a, b in dec.matching:
        na, nb = adj.pop(a), adj.pop(b)
        na.discard(b)
        nb.discard(a)
        for u in na:
            adj[u].discard(a)
        for v in nb:
            adj[v].discard(b)
        for u in na:
            for v in nb:
                adj[u].add(v)
                adj[v].add(u)
    if sorted(adj) != list(range(dec.n)):
        raise ValueError("matching leaves stray marker vertices")
    return Graph(dec.n, [(u, v) for u in adj for v in adj[u] if u < v])


def random_connected_graph(n: int, m: int, seed) -> Graph:
    """Random spanning tree (random attachment) plus ``m - n + 1`` extra edges."""
    if n < 1:
        raise ValueError("n must be positive")
    top = n * (n - 1) // 2
    if not (n - 1 <= m <= top):
        raise ValueError(f"no connected simple graph with n={n}, m={m}")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    for i in range(1, n):
        u, v = perm[i], perm[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    extra = m - (n - 1)
    if extra > (top - (n - 1)) // 2:
        free = [e for e in combinations(range(n), 2) if e not in edges]
        edges.update(rng.sample(free, extra))
    else:
        while len(edges) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return Graph(n, edges)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """All connected labelled graphs on ``n`` vertices, by increasing edge bitmask."""
    if n > MAX_ENUM_N:
        raise ValueError(f"exhaustive enumeration is capped at n={MAX_ENUM_N}")
    if n < 1:
        return
    pairs = list(combinations(range(n), 2))
    full = (1 << n) - 1
    for bits in range(1 << len(pairs)):
        masks = [0] * n
        chosen = []
        for i, (u, v) in enumerate(pairs):
            if bits >> i & 1:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
                chosen.append((u, v))
        reach, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in _members(frontier):
                nxt |= masks[v]
            frontier = nxt & ~reach
            reach |= nxt
        if reach == full:
            yield Graph(n, chosen)


# -- states of extremities, straight from the definitions ---------------------

PERFECT, EMPTY, MIXED = "P", "E", "M"


def extremity_states(tree, S) -> dict:
    """State of every marker and leaf of ``tree`` with respect to the vertex set ``S``.

    ``L(q)`` and ``A(q)`` are rebuilt for every extremity by walking the tree,
    so the cost is quadratic in the tree size.
    """
    S = set(S)
    st = tree.structure()
    far_leaves: dict = {}
    far_access: dict = {}

    def across(q):
        # leaves beyond q's tree-edge, and the accessible ones among them
        if q in far_leaves:
            return far_leaves[q], far_access[q]
        o = q.opposite
        if o.is_leaf:
            res = ({o.vertex}, {o.vertex})
        else:
            w = st.owner[o]
            leaves, acc = set(), set()
            nbrs = st.neighbors(w, o)
            for s in st.markers[w]:
                if s is o:
                    continue
                sl, sa = across(s)
                leaves |= sl
                if s in nbrs:
                    acc |= sa
            res = (leaves, acc)
        far_leaves[q], far_access[q] = res
        return res

    states = {}
    everything = set(tree.leaves)
    extremities = [m for u in st.nodes for m in st.markers[u]]
    extremities += list(tree.leaves.values())
    for q in extremities:
        if q.is_leaf:
            leaves = everything - {q.vertex}
            _, acc = across(q)
        else:
            leaves, acc = across(q)
        hit = S & leaves
        if not hit:
            states[q] = EMPTY
        elif hit == acc:
            states[q] = PERFECT
        else:
            states[q] = MIXED
    return states


class CaseWitness(NamedTuple):
    case: int
    nodes: frozenset
    edge: frozenset


def classify_case_bruteforce(tree, S) -> CaseWitness:
    """Which of the seven insertion cases holds, with its witness.

    Raises ``AssertionError`` when the case conditions are not mutually
    exclusive or the witness is not unique.
    """
    st = tree.structure()
    states = extremity_states(tree, S)
    seen_edges = set()
    by_type: dict[str, list] = {"PP": [], "PE": [], "MM": []}
    for q in states:
        key = frozenset((id(q), id(q.opposite)))
        if key in seen_edges:
            continue
        seen_edges.add(key)
        pair = "".join(sorted((states[q], states[q.opposite]), key="PEM".index))
        if pair in by_type:
            by_type[pair].append((q, q.opposite))
    hybrids = []
    full_cliques, centre_stars = [], []
    for u in st.nodes:
        ms = st.markers[u]
        kind = st.kind(u)
        own = [states[m] for m in ms]
        if all(s != MIXED for s in own) and all(states[m.opposite] == MIXED for m in ms):
            hybrids.append(u)
        if kind == "clique" and all(s == PERFECT for s in own):
            full_cliques.append(u)
        if kind == "star":
            c = st.centre(u)
            if states[c] == PERFECT and all(states[m] == EMPTY for m in ms if m is not c):
                centre_stars.append(u)
    flags = [bool(by_type["PP"]), bool(by_type["PE"]), bool(by_type["MM"]), bool(hybrids)]
    assert sum(flags) == 1, f"case conditions not exclusive: {flags}"
    if by_type["PP"]:
        if len(by_type["PP"]) == 1:
            return CaseWitness(5, frozenset(), frozenset(by_type["PP"][0]))
        assert len(full_cliques) == 1, "several PP edges but no unique perfect clique"
        return CaseWitness(1, frozenset(full_cliques), frozenset())
    if by_type["PE"]:
        if len(by_type["PE"]) == 1:
            return CaseWitness(6, frozenset(), frozenset(by_type["PE"][0]))
        assert len(centre_stars) == 1, "several PE edges but no unique centre-perfect star"
        return CaseWitness(2, frozenset(centre_stars), frozenset())
    if hybrids:
        assert len(hybrids) == 1, "hybrid node not unique"
        kind = st.kind(hybrids[0])
        return CaseWitness(3 if kind == "prime" else 4, frozenset(hybrids), frozenset())
    # fully-mixed: the MM edges must form one connected subtree
    mm_nodes = set()
    parent = {}

    def find(x):
        while parent[x] is not x:
            x = parent[x]
        return x

    for q, r in by_type["MM"]:
        a, b = st.owner[q], st.owner[r]
        for z in (a, b):
            if z not in parent:
                parent[z] = z
        mm_nodes.update((a, b))
        ra, rb = find(a), find(b)
        if ra is not rb:
            parent[ra] = rb
    assert len({id(find(z)) for z in mm_nodes}) == 1, "fully-mixed edges are not connected"
    return CaseWitness(7, frozenset(mm_nodes), frozenset())
