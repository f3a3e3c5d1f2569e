"""Union-find with an owner handle stored at each set root."""

from __future__ import annotations

from typing import Any, Hashable


class DisjointSets:
    """Disjoint sets over arbitrary hashable elements.

    Union by rank and path compression. Every set carries an ``owner``
    (any object, possibly ``None``) that lives on the root only and moves
    with it on union.
    """

    def __init__(self):
        self._parent: dict[Hashable, Hashable] = {}
        self._rank: dict[Hashable, int] = {}
        self._owner: dict[Hashable, Any] = {}
        self.finds = 0
        self.unions = 0
        self.make_sets = 0

    def __contains__(self, x: Hashable) -> bool:
        return x in self._parent

    def __len__(self) -> int:
        return len(self._parent)

    def make_set(self, x: Hashable, owner: Any = None) -> Hashable:
        """Create the singleton ``{x}``.

        :param x: a new element
        :param owner: handle attached to the set
        :raises KeyError: if ``x`` is already present
        """
        if x in self._parent:
            raise KeyError(f"element {x!r} already present")
        self.make_sets += 1
        self._parent[x] = x
        self._rank[x] = 0
        self._owner[x] = owner
        return x

    def find(self, x: Hashable) -> Hashable:
        parent = self._parent
        try:
            root = parent[x]
        except KeyError:
            raise KeyError(f"unknown element {x!r}") from None
        self.finds += 1
        while True:
            up = parent[root]
            if up == root:
                break
            root = up
        while x != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: Hashable, b: Hashable, new_owner: Any = None) -> Hashable:
        """Merge the sets of ``a`` and ``b``; the merged set is owned by ``new_owner``."""
        ra = self.find(a)
        rb = self.find(b)
        self.unions += 1
        owner = self._owner
        if ra == rb:
            owner[ra] = new_owner
            return ra
        rank = self._rank
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        elif rank[ra] == rank[rb]:
            rank[ra] += 1
        self._parent[rb] = ra
        del owner[rb]
        owner[ra] = new_owner
        return ra

    def owner_of(self, x: Hashable) -> Any:
        return self._owner[self.find(x)]

    def set_owner(self, x: Hashable, owner: Any) -> None:
        self._owner[self.find(x)] = owner

    def same_set(self, a: Hashable, b: Hashable) -> bool:
        return self.find(a) == self.find(b)

    def is_root(self, x: Hashable) -> bool:
        return self._parent[x] == x

    def has_owner_entry(self, x: Hashable) -> bool:
        return x in self._owner
