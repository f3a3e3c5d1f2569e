"""Simple undirected graphs on vertices ``0..n-1`` and their edge-list text format."""

from __future__ import annotations

from collections import deque
from typing import Iterable


class GraphFormatError(ValueError):
    """Base class for edge-list problems. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLineError(GraphFormatError):
    pass


class VertexOutOfRangeError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class DisconnectedGraphError(ValueError):
    pass


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is a frozenset of neighbours and ``neighbors(v)`` the same
    vertices as an ascending tuple.
    """

    __slots__ = ("n", "edges", "adj", "_sorted")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        normalized = set()
        for u, v in edges:
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in normalized:
                raise DuplicateEdgeError(f"duplicate edge {e[0]} {e[1]}")
            normalized.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(normalized)
        self.adj = tuple(frozenset(s) for s in adj)
        self._sorted = tuple(tuple(sorted(s)) for s in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._sorted[v]

    def degree(self, v: int) -> int:
        return len(self._sorted[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph on ``vertices`` relabelled to ``0..k-1``; also returns the label map."""
        names = sorted(set(vertices))
        index = {v: i for i, v in enumerate(names)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(names), edges), names

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Lines starting with ``#`` and blank lines are skipped. Raises a
    :class:`GraphFormatError` subclass naming the offending line.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise MalformedLineError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise MalformedLineError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise MalformedLineError("negative count in header", lineno)
            header = (a, b)
            continue
        n = header[0]
        if a < 0 or b < 0 or a >= n or b >= n:
            raise VertexOutOfRangeError(f"vertex id out of range 0..{n - 1}: {line!r}", lineno)
        if a == b:
            raise SelfLoopError(f"self-loop on vertex {a}", lineno)
        e = (a, b) if a < b else (b, a)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise MalformedLineError("missing 'n m' header")
    if len(edges) != header[1]:
        raise MalformedLineError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1

