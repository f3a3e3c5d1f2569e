"""Incremental split-tree construction, inserting vertices in LBFS order.

Each insertion marks the leaves of ``S = N(x)``, spans them, prunes the
pendant perfect parts and lands in one of seven cases. A case is a node that
takes the new leaf directly, an edge that is subdivided, or a fully-mixed
subtree that is cleaned and contracted into one prime node.
"""

from __future__ import annotations

import gc
from collections import deque
from typing import Callable, Iterable

from .glt import (
    CLIQUE, PRIME, STAR, Leaf, Node, SplitTree, _join, _split,
)
from .graph import DisconnectedGraphError, Graph, is_connected
from .lbfs import Ordering, _refine

PERFECT, EMPTY, MIXED = "P", "E", "M"


class CaseResult:
    """Outcome of the case analysis for one insertion.

    Cases 1 to 4 carry ``node``. Cases 5 and 6 carry the edge above ``child``
    together with the states of its upper and lower extremities. Case 7
    carries the fully-mixed subtree through the insertion context.
    """

    __slots__ = ("case", "node", "child", "upper_perfect", "lower_perfect")

    def __init__(self, case, node=None, child=None, upper_perfect=False, lower_perfect=False):
        self.case = case
        self.node = node
        self.child = child
        self.upper_perfect = upper_perfect
        self.lower_perfect = lower_perfect

    def extremities(self):
        """The two extremities of the edge of a case 5 or 6 result."""
        c = self.child
        low = c if c.is_leaf else c.root_marker
        return low.opposite, low

    def __repr__(self) -> str:
        if self.case in (5, 6):
            return f"Case{self.case}(edge above {self.child!r})"
        return f"Case{self.case}({self.node!r})"


class InsertionContext:
    """Scratch state of a single insertion."""

    def __init__(self, tree: SplitTree, leaf: Leaf, S: list):
        self.tree = tree
        self.leaf = leaf
        self.S = S
        self.gen = tree.gen
        self.spanning_size = 0
        self.top = None
        self.up: dict = {}
        self.kids: dict = {}
        self.perf: dict = {}
        self.pruned: set = set()
        self.down: dict = {}
        self.fm: list = []
        self.fm_root = None
        self.result: CaseResult | None = None


# -- spanning subtree -------------------------------------------------------------


def span_subtree(tree: SplitTree, S: list, ctx: InsertionContext) -> set:
    """Smallest subtree containing the leaves ``S``, climbed level by level from the leaves.

    Fills ``ctx.up`` (parent of each element), ``ctx.kids`` and ``ctx.top``.
    """
    if len(S) < 2:
        raise ValueError("spanning needs at least two leaves")
    root = tree.root
    parent_of = tree.parent_of
    visited = set(S)
    seen = list(S)
    cnt: dict = {}
    via: dict = {}
    up = ctx.up
    frontier = list(S)
    root_seen = root in visited
    while frontier and (len(frontier) > 1 or root_seen):
        nxt = []
        for e in frontier:
            if e is root:
                continue
            p = parent_of(e)
            up[e] = p
            cnt[p] = cnt.get(p, 0) + 1
            if p not in visited:
                visited.add(p)
                seen.append(p)
                via[p] = e
                nxt.append(p)
                if p is root:
                    root_seen = True
        frontier = nxt
    top = frontier[0] if frontier else root
    sset = set(S)
    while top not in sset and cnt.get(top, 0) == 1:
        visited.discard(top)
        top = via[top]
    kids = ctx.kids
    for e in seen:
        if e is top or e is root or e not in visited:
            continue
        kids.setdefault(up[e], []).append(e)
    ctx.top = top
    ctx.spanning_size = len(visited)
    return visited


def spanning_size(tree: SplitTree, S: Iterable[int], count_leaves: bool = True) -> int:
    """Size of the subtree spanning the leaves of ``S`` (read only).

    Counts nodes and leaves, or nodes alone with ``count_leaves=False``.
    """
    leaves = [tree.leaves[v] for v in S]
    if len(leaves) < 2:
        return len(leaves) if count_leaves else 0
    sets = tree.sets
    saved = sets.finds
    ctx = InsertionContext(tree, None, leaves)
    span = span_subtree(tree, leaves, ctx)
    sets.finds = saved
    if count_leaves:
        return len(span)
    return sum(1 for e in span if not e.is_leaf)


# -- twin tests -----------------------------------------------------------------------


def _twin(u: Node, q, P: list, gen: int) -> bool:
    """Is ``P`` (the perfect markers of ``u``) minus ``q`` exactly ``N(q)``?"""
    k = len(P) - (1 if q.stamp == gen else 0)
    kind = u.kind
    if kind == CLIQUE:
        return k == u.size - 1
    if kind == STAR:
        c = u.centre
        if q is c:
            return k == u.size - 1
        return k == 1 and c.stamp == gen
    adj = q.adj
    if k != len(adj):
        return False
    for p in P:
        if p is not q and p not in adj:
            return False
    return True


# -- case identification ----------------------------------------------------------------


def _edge_result(tree, u: Node, q, q_perfect: bool, r_perfect: bool) -> CaseResult:
    """Case for the unique PP/PE edge whose extremity in ``u`` is ``q``."""
    if q is u.root_marker:
        child = u
        other = tree.parent_of(u)
        upper_perfect, lower_perfect = r_perfect, q_perfect
    else:
        child = tree.child_of(q)
        other = child
        upper_perfect, lower_perfect = q_perfect, r_perfect
    r = q.opposite
    if q_perfect and r_perfect:
        if not other.is_leaf and other.kind == CLIQUE:
            return CaseResult(1, node=other)
        return CaseResult(5, child=child, upper_perfect=True, lower_perfect=True)
    if r_perfect and not other.is_leaf and other.kind == STAR and other.centre is r:
        return CaseResult(2, node=other)
    return CaseResult(6, child=child, upper_perfect=upper_perfect, lower_perfect=lower_perfect)


def _identify_node(tree: SplitTree, u: Node, ctx: InsertionContext) -> CaseResult:
    gen = ctx.gen
    P = ctx.perf[u]
    k = len(P)
    size = u.size
    if u.kind == CLIQUE:
        if k == size:
            return CaseResult(1, node=u)
        if k == size - 1:
            q = next(m for m in u.markers if m.stamp != gen)
            return _edge_result(tree, u, q, False, True)
        return CaseResult(4, node=u)
    if u.kind == STAR:
        c = u.centre
        c_perfect = c.stamp == gen
        if k == size:
            return _edge_result(tree, u, c, True, True)
        if k == size - 1 and not c_perfect:
            return _edge_result(tree, u, c, False, True)
        if k == 1 and c_perfect:
            return CaseResult(2, node=u)
        if k == 2 and c_perfect:
            q = P[0] if P[1] is c else P[1]
            return _edge_result(tree, u, q, True, True)
        return CaseResult(4, node=u)
    if getattr(tree, "exhaustive_twins", False):
        candidates = sorted(tree.markers_of(u), key=lambda m: m.uid)
    else:
        candidates = [m for m in (u.last, u.universal) if m is not None]
    for q in candidates:
        if _twin(u, q, P, gen):
            return _edge_result(tree, u, q, q.stamp == gen, True)
    return CaseResult(3, node=u)


def mark_and_identify(tree: SplitTree, S: list, ctx: InsertionContext) -> CaseResult:
    """Stamp perfect markers and decide which of the seven cases applies."""
    gen = ctx.gen
    root = tree.root
    if len(S) == 1:
        y = S[0]
        ctx.spanning_size = 1
        o = y.opposite
        if o.is_leaf:
            child = o if y is root else y
            return CaseResult(6, child=child, upper_perfect=y is not root, lower_perfect=y is root)
        o.stamp = gen
        w = o.node if y is root else tree.parent_of(y)
        if w.kind == STAR and w.centre is o:
            return CaseResult(2, node=w)
        if y is root:
            return CaseResult(6, child=w, upper_perfect=False, lower_perfect=True)
        return CaseResult(6, child=y, upper_perfect=True, lower_perfect=False)

    if tree.n == 2:
        child = root.opposite
        ctx.spanning_size = 2
        return CaseResult(5, child=child, upper_perfect=True, lower_perfect=True)

    span_subtree(tree, S, ctx)
    perf = ctx.perf
    kids = ctx.kids
    up = ctx.up
    top = ctx.top
    if top is root:
        top = ctx.top = root.opposite.node
        kids.pop(root, None)
    # BFS over the nodes of the spanning subtree
    order = [top]
    perf[top] = []
    i = 0
    while i < len(order):
        for k in kids.get(order[i], ()):
            if not k.is_leaf:
                order.append(k)
                perf[k] = []
        i += 1
    for y in S:
        m = y.opposite
        m.stamp = gen
        if y is root:
            perf[top].append(m)
        else:
            perf[up[y]].append(m)

    # pendant perfect subtrees, bottom-up
    pruned = ctx.pruned
    for u in reversed(order):
        if u is top:
            continue
        if any(not k.is_leaf and k not in pruned for k in kids.get(u, ())):
            continue
        if _twin(u, u.root_marker, perf[u], gen):
            pruned.add(u)
            m = u.root_marker.opposite
            m.stamp = gen
            perf[up[u]].append(m)

    # walk down from the top while the root side of the only live child is perfect
    cur = top
    while True:
        live = [k for k in kids.get(cur, ()) if not k.is_leaf and k not in pruned]
        if len(live) != 1:
            break
        v = live[0]
        if not _twin(cur, v.root_marker.opposite, perf[cur], gen):
            break
        r = v.root_marker
        r.stamp = gen
        perf[v].append(r)
        cur = v

    if not live:
        return _identify_node(tree, cur, ctx)

    fm = ctx.fm
    down = ctx.down
    queue = deque([cur])
    while queue:
        u = queue.popleft()
        fm.append(u)
        d = down[u] = {}
        for k in kids.get(u, ()):
            if not k.is_leaf and k not in pruned:
                d[k.root_marker.opposite] = None
                queue.append(k)
    ctx.fm_root = cur
    return CaseResult(7, node=cur)


# -- case applications ------------------------------------------------------------------


def _perfect_markers(ctx: InsertionContext, u: Node) -> list:
    gen = ctx.gen
    seen = set()
    out = []
    for p in ctx.perf.get(u, ()):
        if p.stamp == gen and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def apply_case_node(tree: SplitTree, u: Node, ctx: InsertionContext) -> None:
    """Cases 1, 2 and 3: hang the new leaf on ``u`` with a marker adjacent to ``P(u)``."""
    leaf = ctx.leaf
    q = tree.new_marker(u)
    q.opposite = leaf
    leaf.opposite = q
    if u.kind != PRIME:
        u.markers.add(q)
        u.size += 1
        leaf.parent = u
        return
    P = _perfect_markers(ctx, u)
    q.adj = set(P)
    for p in P:
        p.adj.add(q)
    tree.counters.new_label_edges += len(P)
    old = u.size
    u.size = old + 1
    tree.adopt(u, leaf)
    if u.universal is not None and u.universal.stamp != ctx.gen:
        u.universal = None
    if len(P) == old:
        u.universal = q
    u.last = q


def _subdivide(tree: SplitTree, child, upper_perfect: bool, lower_perfect: bool, leaf: Leaf) -> Node:
    """Put a ternary clique or star on the edge above ``child`` and hang ``leaf`` on it."""
    parent = tree.parent_of(child)
    low = child if child.is_leaf else child.root_marker
    high = low.opposite
    t = tree.new_node(CLIQUE if upper_perfect and lower_perfect else STAR)
    t_up = tree.new_marker(t)
    t_down = tree.new_marker(t)
    t_x = tree.new_marker(t)
    t_up.opposite, high.opposite = high, t_up
    t_down.opposite, low.opposite = low, t_down
    t_x.opposite, leaf.opposite = leaf, t_x
    t.markers.update((t_up, t_down, t_x))
    t.size = 3
    t.root_marker = t_up
    if t.kind == STAR:
        t.centre = t_down if upper_perfect else t_up
    if not parent.is_leaf and parent.kind == PRIME:
        tree.adopt(parent, t)
    else:
        t.parent = parent
    child.parent = t
    leaf.parent = t
    return t


def apply_case_edge(tree: SplitTree, result: CaseResult, ctx: InsertionContext) -> Node:
    """Cases 5 and 6: subdivide the edge with a clique (PP) or a star (PE)."""
    return _subdivide(tree, result.child, result.upper_perfect, result.lower_perfect, ctx.leaf)


def apply_case_hybrid_degenerate(tree: SplitTree, u: Node, ctx: InsertionContext) -> Node:
    """Case 4: split ``u`` into its perfect and empty sides, then subdivide the new edge."""
    gen = ctx.gen
    c = u.centre if u.kind == STAR else None
    pstar = [p for p in ctx.perf[u] if p is not c]
    centre_perfect = c is not None and c.stamp == gen
    if len(pstar) < 2 or u.size - len(pstar) < 2:
        raise AssertionError("hybrid degenerate node without two perfect and two empty markers")
    new, q, r = _split(tree, u, pstar)
    # q (kept in u) sees the perfect side: always perfect; r is perfect iff the centre was
    if new.root_marker is r:
        return _subdivide(tree, new, True, centre_perfect, ctx.leaf)
    return _subdivide(tree, u, centre_perfect, True, ctx.leaf)


# -- cleaning and contraction ---------------------------------------------------------------


def clean(tree: SplitTree, ctx: InsertionContext) -> list:
    """Split the perfect and the empty groups off every degenerate fully-mixed node."""
    gen = ctx.gen
    perf, down = ctx.perf, ctx.down
    fm = ctx.fm
    for v in fm:
        if v.kind == PRIME:
            continue
        c = v.centre if v.kind == STAR else None
        pstar = [p for p in perf[v] if p is not c]
        if len(pstar) > 1:
            _, q, _ = _split(tree, v, pstar)
            q.stamp = gen
            perf[v] = ([c] if c is not None and c.stamp == gen else []) + [q]
    for i, v in enumerate(fm):
        if v.kind == PRIME:
            continue
        c = v.centre if v.kind == STAR else None
        pstar = [p for p in perf[v] if p is not c]
        mixed = list(down[v])
        if v is not ctx.fm_root:
            mixed.append(v.root_marker)
        if v.size - len(pstar) - len(mixed) > 1:
            A = pstar + mixed
            if len(A) < 2:
                raise AssertionError("fully-mixed node with a single non-empty marker")
            centre_perfect = c is not None and c.stamp == gen
            new, _, r = _split(tree, v, A)
            if centre_perfect:
                r.stamp = gen
                pstar.append(r)
            perf[new] = pstar
            down[new] = down.pop(v)
            del perf[v]
            fm[i] = new
            if v is ctx.fm_root:
                ctx.fm_root = new
    return fm


def _fm_order(ctx: InsertionContext) -> list:
    order = [ctx.fm_root]
    down = ctx.down
    i = 0
    while i < len(order):
        for m in down[order[i]]:
            order.append(m.opposite.node)
        i += 1
    return order


def _join_fm(tree: SplitTree, ctx: InsertionContext, u: Node, c: Node) -> None:
    q = c.root_marker.opposite
    replaced = _join(tree, u, c)
    du = ctx.down[u]
    del du[q]
    dc = ctx.down.pop(c)
    pu = ctx.perf[u]
    if replaced is not None:
        if replaced in dc:
            del dc[replaced]
            dc[q] = None
        if q.stamp == ctx.gen:
            pu.append(q)
    du.update(dc)
    pu.extend(ctx.perf.pop(c))


def _root_degree_one(v: Node) -> bool:
    if v.kind == STAR:
        return v.root_marker is not v.centre
    if v.kind == PRIME:
        return len(v.root_marker.adj) == 1
    return False


def contract_and_insert(tree: SplitTree, ctx: InsertionContext) -> Node:
    """Case 7: join the fully-mixed subtree into one prime node and hang the new leaf on it."""
    for u in reversed(_fm_order(ctx)):
        if u.alive and u.kind == STAR and u.root_marker is u.centre:
            for m in list(ctx.down[u]):
                _join_fm(tree, ctx, u, m.opposite.node)
    for v in _fm_order(ctx)[1:]:
        if _root_degree_one(v):
            _join_fm(tree, ctx, tree.parent_of(v), v)
    for v in _fm_order(ctx)[1:]:
        _join_fm(tree, ctx, tree.parent_of(v), v)

    U = ctx.fm_root
    if U.kind != PRIME:
        raise AssertionError("contraction did not produce a prime-stored node")
    P = _perfect_markers(ctx, U)
    leaf = ctx.leaf
    q = tree.new_marker(U)
    q.opposite = leaf
    leaf.opposite = q
    q.adj = set(P)
    for p in P:
        p.adj.add(q)
    tree.counters.new_label_edges += len(P)
    U.size += 1
    tree.adopt(U, leaf)
    U.last = q
    U.universal = None
    full = U.size - 1
    for w in P + [q]:
        if len(w.adj) == full:
            U.universal = w
            break
    return U


# -- driver -------------------------------------------------------------------------------------


def _count_degenerate_markers(created: list) -> int:
    count = 0
    for m in created:
        u = m.node
        if u is None or not u.alive or u.kind == PRIME:
            continue
        if m in u.markers and m is not u.root_marker:
            count += 1
    return count


def insert_vertex(
    tree: SplitTree,
    x: int,
    S: Iterable[int],
    ctx: InsertionContext | None = None,
    on_case: Callable | None = None,
) -> CaseResult | None:
    """Insert vertex ``x`` adjacent to the already inserted vertices ``S``.

    ``on_case(tree, x, S, result, ctx)`` runs after the case is identified
    and before the tree changes.
    """
    if x in tree.leaves:
        raise ValueError(f"vertex {x} is already in the tree")
    S = list(S)
    leaf = Leaf(x)
    tree.gen += 1
    if tree.n == 0:
        if S:
            raise ValueError("the first vertex cannot have neighbours")
        tree.leaves[x] = leaf
        tree.root = leaf
        return None
    if not S:
        raise ValueError(f"vertex {x} has no neighbour among inserted vertices")
    try:
        s_leaves = [tree.leaves[v] for v in S]
    except KeyError as exc:
        raise ValueError(f"neighbour {exc.args[0]} has not been inserted") from None
    if len(set(S)) != len(S):
        raise ValueError("repeated neighbour")
    if tree.n == 1:
        root = tree.root
        leaf.opposite, root.opposite = root, leaf
        leaf.parent = root
        tree.leaves[x] = leaf
        tree.counters.spanning_total += 1
        return None

    if ctx is None:
        ctx = InsertionContext(tree, leaf, s_leaves)
    tree.created = created = []
    result = mark_and_identify(tree, s_leaves, ctx)
    ctx.result = result
    if on_case is not None:
        on_case(tree, x, S, result, ctx)
    case = result.case
    if case in (1, 2, 3):
        apply_case_node(tree, result.node, ctx)
    elif case == 4:
        apply_case_hybrid_degenerate(tree, result.node, ctx)
    elif case in (5, 6):
        apply_case_edge(tree, result, ctx)
    else:
        clean(tree, ctx)
        contract_and_insert(tree, ctx)
    tree.leaves[x] = leaf
    tree.created = None
    c = tree.counters
    c.cases[case] += 1
    c.spanning_total += ctx.spanning_size
    made = _count_degenerate_markers(created)
    c.new_degenerate_markers += made
    if made > c.max_new_degenerate_markers:
        c.max_new_degenerate_markers = made
    c.last_new_degenerate_markers = made
    return result


def build_split_tree(
    g: Graph,
    start: int | None = None,
    order: Iterable[int] | None = None,
    check: bool = False,
    on_case: Callable | None = None,
    after_insert: Callable | None = None,
):
    """Split-tree of the connected graph ``g``; returns ``(tree, stats)``.

    Vertices are inserted along an LBFS from ``start``. ``order`` replaces the
    LBFS by an arbitrary connected insertion order (for testing; prime nodes
    then get an exhaustive twin search). With ``check`` the per-insertion
    bounds are recorded in ``tree.violations``.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is disconnected")
    tree = SplitTree()
    if order is None:
        if start is not None and not (isinstance(start, int) and 0 <= start < g.n):
            raise ValueError(f"invalid start vertex {start!r}")
        sigma = _refine(g, start)
        tree.exhaustive_twins = False
    else:
        sigma = Ordering(order)
        if sorted(sigma.order) != list(range(g.n)):
            raise ValueError("order is not a permutation of the vertices")
        tree.exhaustive_twins = True
    tree.sigma = sigma
    tree.violations = []
    pos = sigma.pos
    # almost everything allocated here stays alive, so collector passes would only rescan the tree
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        for x in sigma.order:
            px = pos[x]
            S = [y for y in g.neighbors(x) if pos[y] < px]
            if tree.n and not S:
                raise ValueError(f"order is not connected at vertex {x}")
            result = insert_vertex(tree, x, S, on_case=on_case)
            if check and result is not None:
                _check_insertion(tree, x, S, result)
            if after_insert is not None:
                after_insert(tree, x, S, result)
    finally:
        if was_enabled:
            gc.enable()
    return tree, tree.stats(g.m)


def _check_insertion(tree: SplitTree, x: int, S: list, result: CaseResult) -> None:
    # measured in the tree that already contains x
    k = len(S)
    size = spanning_size(tree, S)
    if size > 2 * k:
        tree.violations.append((x, "spanning", size, k))
    size = spanning_size(tree, S, count_leaves=False)
    if size > 2 * k:
        tree.violations.append((x, "spanning-nodes", size, k))
    made = tree.counters.last_new_degenerate_markers
    if made > 2:
        tree.violations.append((x, "degenerate-markers", made, result.case))


# -- exact states and the primality criterion ---------------------------------------------


def marker_states(tree: SplitTree, S: Iterable[int]) -> dict:
    """State of every marker with respect to ``S``, in time linear in the tree size.

    Unlike the stamps written during an insertion this needs no LBFS order:
    it evaluates the hereditary rule (all accessible markers beyond perfect,
    all others beyond empty) bottom-up and then top-down.
    """
    S = set(S)
    st = tree.structure()
    state: dict = {}

    def combine(w, o):
        ms = st.markers[w]
        size = len(ms)
        n_e = sum(1 for s in ms if s is not o and state[s] == EMPTY)
        if n_e == size - 1:
            return EMPTY
        nb = st.neighbors(w, o)
        nb_p = sum(1 for s in nb if state[s] == PERFECT)
        nb_e = sum(1 for s in nb if state[s] == EMPTY)
        if nb_p == len(nb) and n_e - nb_e == size - 1 - len(nb):
            return PERFECT
        return MIXED

    for u in reversed(st.nodes):
        for m in st.markers[u]:
            if m is u.root_marker:
                continue
            o = m.opposite
            if o.is_leaf:
                state[m] = PERFECT if o.vertex in S else EMPTY
            else:
                state[m] = combine(o.node, o)
    for u in st.nodes:
        r = u.root_marker
        o = r.opposite
        if o.is_leaf:
            state[r] = PERFECT if o.vertex in S else EMPTY
        else:
            state[r] = combine(st.owner[o], o)
    return state


def fast_prime_test(tree: SplitTree, S: Iterable[int]) -> bool:
    """Is ``G + x`` prime, where ``tree`` is the split-tree of ``G`` and ``N(x) = S``?"""
    st = tree.structure()
    state = marker_states(tree, S)
    if len(st.nodes) == 1 and st.kind(st.nodes[0]) == PRIME:
        # the two conditions are vacuous here; x must be neither pendant nor a twin
        ms = st.markers[st.nodes[0]]
        P = {m for m in ms if state[m] == PERFECT}
        if len(P) < 2:
            return False
        return not any(P - {q} == set(st.neighbors(st.nodes[0], q)) for q in ms)
    for u in st.nodes:
        ms = st.markers[u]
        for m in ms:
            if not m.opposite.is_leaf and state[m] != MIXED:
                return False
        kind = st.kind(u)
        if kind == PRIME:
            continue
        n_p = sum(1 for m in ms if state[m] == PERFECT)
        n_e = sum(1 for m in ms if state[m] == EMPTY)
        if kind == STAR and state[st.centre(u)] == PERFECT:
            if n_e > 0 or n_p > 2:
                return False
        elif n_e > 1 or n_p > 1:
            return False
    return True
