"""Disjoint sets over hashable items, with an optional log of merges."""

from __future__ import annotations

from typing import Generic, Hashable, Iterable, NamedTuple, TypeVar

T = TypeVar("T", bound=Hashable)


class Merge(NamedTuple):
    x: Hashable
    y: Hashable
    rule: str
    witness: tuple = ()


class DisjointSet(Generic[T]):
    """Union by size with path compression.

    Members of every set are kept so that callers can react to merges
    without a full scan.
    """

    def __init__(self, items: Iterable[T] = (), log: bool = False):
        self.parent: dict[T, T] = {}
        self._members: dict[T, list[T]] = {}
        self.log: list[Merge] | None = [] if log else None
        for x in items:
            self.add(x)

    def add(self, x: T) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self._members[x] = [x]

    def find(self, x: T) -> T:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: T, y: T, rule: str = "", witness: tuple = ()) -> bool:
        """Merge the sets of ``x`` and ``y``; True if they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if len(self._members[rx]) < len(self._members[ry]):
            rx, ry = ry, rx
        self.parent[ry] = rx
        self._members[rx].extend(self._members.pop(ry))
        if self.log is not None:
            self.log.append(Merge(x, y, rule, witness))
        return True

    def same(self, x: T, y: T) -> bool:
        return self.find(x) == self.find(y)

    def members(self, x: T) -> list[T]:
        return self._members[self.find(x)]

    def groups(self) -> list[list[T]]:
        """All sets, each sorted, ordered by their least member."""
        return sorted((sorted(g) for g in self._members.values()), key=lambda g: g[0])
