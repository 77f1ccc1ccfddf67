"""Level-set representation of tomonoids.

A table is encoded as a partition of the square ``S x S``: two cells share a
class when their products agree.  Each class meets the identity row exactly
once, which is how a class is mapped back to its value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .chain import Chain, TomonoidTable, VerifyReport, Violation, verify_table
from .errors import AxiomError, PartitionStructureError

Cell = tuple[int, int]


@dataclass(frozen=True)
class LevelPartition:
    """Partition of ``S x S`` with a value attached to every class.

    ``class_of[a][b]`` is the class identifier of cell ``(a, b)``.
    ``value_of_class`` maps identifiers to chain elements.
    """

    chain: Chain
    class_of: tuple[tuple[Hashable, ...], ...]
    value_of_class: Mapping[Hashable, int] = field(compare=False)

    def __post_init__(self):
        n = self.chain.n
        grid = tuple(tuple(row) for row in self.class_of)
        if len(grid) != n or any(len(r) != n for r in grid):
            raise PartitionStructureError(f"class_of must be {n}x{n}")
        object.__setattr__(self, "class_of", grid)
        object.__setattr__(self, "value_of_class", dict(self.value_of_class))

    @property
    def n(self) -> int:
        return self.chain.n

    def classes(self) -> dict[Hashable, list[Cell]]:
        out: dict[Hashable, list[Cell]] = {}
        for a, row in enumerate(self.class_of):
            for b, k in enumerate(row):
                out.setdefault(k, []).append((a, b))
        return out

    def same(self, x: Cell, y: Cell) -> bool:
        return self.class_of[x[0]][x[1]] == self.class_of[y[0]][y[1]]

    def value(self, a: int, b: int) -> int:
        return self.value_of_class[self.class_of[a][b]]


def to_partition(t: TomonoidTable) -> LevelPartition:
    """The level equivalence of ``t``; class identifiers are product values."""
    return LevelPartition(t.chain, t.table, {c: c for c in range(t.n)})


def _check_known_ids(p: LevelPartition) -> None:
    for a, row in enumerate(p.class_of):
        for b, k in enumerate(row):
            if k not in p.value_of_class:
                raise PartitionStructureError(f"cell ({a},{b}) has unknown class {k!r}")


def _p2_values(p: LevelPartition) -> tuple[dict[Hashable, int], list[Violation]]:
    """Value of each class as read off the identity row, plus (P2) violations."""
    n = p.n
    top = n - 1
    grid = p.class_of
    found: dict[Hashable, int] = {}
    out: list[Violation] = []
    for c in range(n):
        k = grid[top][c]
        if k in found:
            out.append(Violation("uniqueness-P2", (top, found[k], top, c),
                                 f"class {k!r} meets the identity row twice"))
        else:
            found[k] = c
        if grid[c][top] != k:
            out.append(Violation("uniqueness-P2", (c, top),
                                 f"({c},1) and (1,{c}) lie in different classes"))
    for a in range(n):
        for b in range(n):
            k = grid[a][b]
            if k not in found:
                out.append(Violation("uniqueness-P2", (a, b),
                                     f"class {k!r} of ({a},{b}) misses the identity row"))
                found[k] = -1
    for k, v in found.items():
        if v >= 0 and p.value_of_class[k] != v:
            out.append(Violation("uniqueness-P2", (top, v),
                                 f"class {k!r} is labelled {p.value_of_class[k]}, identity row says {v}"))
    return {k: v for k, v in found.items() if v >= 0}, out


def _p1_double_prime(p: LevelPartition, values: Mapping[Hashable, int]) -> list[Violation]:
    # comparing covers is enough: the componentwise order is generated by them
    n = p.n
    grid = p.class_of
    out = []
    for a in range(n):
        for b in range(n):
            v = values.get(grid[a][b])
            if v is None:
                continue
            for c, d in ((a + 1, b), (a, b + 1)):
                if c < n and d < n:
                    w = values.get(grid[c][d])
                    if w is not None and v > w:
                        out.append(Violation("regularity-P1", (a, b, c, d),
                                             f"({a},{b}) has value {v} > {w} of ({c},{d})"))
    return out


def _reidemeister(p: LevelPartition, values: Mapping[Hashable, int], strict: bool) -> list[Violation]:
    n = p.n
    grid = p.class_of
    inner = range(n) if strict else range(1, n - 1)
    allowed = set(inner)
    out = []
    for a in inner:
        for b in inner:
            d = values.get(grid[a][b])
            if d is None or d not in allowed:
                continue
            for c in inner:
                e = values.get(grid[b][c])
                if e is None or e not in allowed:
                    continue
                if grid[d][c] != grid[a][e]:
                    out.append(Violation("reidemeister-P3", (a, b, c, d, e),
                                         f"({d},{c}) and ({a},{e}) lie in different classes"))
    return out


def verify_partition(p: LevelPartition, strict: bool = False) -> VerifyReport:
    """Check (P1''), (P2) and the Reidemeister condition.

    By default the Reidemeister condition is only checked on elements other
    than the bottom and the identity, which suffices for finite chains with
    the identity on top.  ``strict=True`` checks every quintuple.
    """
    _check_known_ids(p)
    values, out = _p2_values(p)
    out += _p1_double_prime(p, values)
    out += _reidemeister(p, values, strict)
    return VerifyReport(tuple(out))


def from_partition(p: LevelPartition) -> TomonoidTable:
    report = verify_partition(p)
    if not report.ok:
        raise AxiomError(f"not a tomonoid partition\n{report.format()}", report)
    rows = [[p.value(a, b) for b in range(p.n)] for a in range(p.n)]
    t = TomonoidTable.from_rows(rows)
    assert verify_table(t).ok
    return t


def class_preorder(p: LevelPartition) -> dict[Hashable, set[Hashable]]:
    """Classes reachable upward from each class through the componentwise order."""
    n = p.n
    grid = p.class_of
    succ: dict[Hashable, set[Hashable]] = {k: set() for row in grid for k in row}
    for a in range(n):
        for b in range(n):
            k = grid[a][b]
            if a + 1 < n:
                succ[k].add(grid[a + 1][b])
            if b + 1 < n:
                succ[k].add(grid[a][b + 1])
    reach = {}
    for k in succ:
        seen = {k}
        stack = [k]
        while stack:
            for m in succ[stack.pop()]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        reach[k] = seen
    return reach


def is_regular(p: LevelPartition) -> bool:
    """Closed chain condition (P1): the induced preorder on classes is antisymmetric."""
    reach = class_preorder(p)
    return all(k == m or k not in reach[m] for k in reach for m in reach[k])


def satisfies_p1_prime(p: LevelPartition) -> bool:
    """(P1'): no two distinct classes lie directly below each other."""
    n = p.n
    grid = p.class_of
    below: set[tuple[Hashable, Hashable]] = set()
    cells = [(a, b) for a in range(n) for b in range(n)]
    for a, b in cells:
        for c, d in cells:
            if a <= c and b <= d and grid[a][b] != grid[c][d]:
                below.add((grid[a][b], grid[c][d]))
    return not any((m, k) in below for k, m in below)
