"""Level-by-level generation of all finite negative tomonoids, and a brute-force oracle."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterator, NamedTuple

from .chain import TRIVIAL, TWO_ELEMENT, TomonoidTable, is_archimedean, is_commutative
from .coextend import Filter, GenRecord, coextensions
from .errors import OracleCapError, PreconditionError

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 6


def oracle_cap() -> int:
    return int(os.environ.get("TOMO_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def _children(args: tuple[TomonoidTable, Filter, bool]) -> list[GenRecord]:
    t, flt, verify = args
    return list(coextensions(t, flt, verify=verify))


def generate(
    max_size: int,
    filter: "str | Filter" = "all",
    jobs: int = 1,
    seed: TomonoidTable | None = None,
    verify: bool = True,
) -> Iterator[GenRecord]:
    """Stream every tomonoid up to ``max_size`` elements, smallest first.

    Without a ``seed`` the stream opens with the trivial and the two-element
    tomonoid.  Each later record is a coextension of a record of the
    previous level, identified by ``parent_id`` (its stream position).
    Parents are processed in stream order, and results from the worker pool
    are consumed in that same order, so the output is independent of
    ``jobs``.
    """
    if max_size < 1:
        raise PreconditionError("max_size must be at least 1")
    flt = Filter.parse(filter)
    next_id = 0
    level: list[tuple[int, TomonoidTable]] = []

    def emit(rec: GenRecord) -> GenRecord:
        nonlocal next_id
        level.append((next_id, rec.table))
        next_id += 1
        return rec

    if seed is None:
        yield emit(GenRecord(TRIVIAL))
        if max_size < 2:
            return
        # Coextension needs a non-trivial base: the two-element table is the only
        # tomonoid on two elements and is the seed for everything larger.
        level.clear()
        yield emit(GenRecord(TWO_ELEMENT, parent_id=0))
    else:
        yield emit(GenRecord(seed))
        if seed.n < 2:
            level.clear()
            if max_size >= 2 and flt.accepts(TWO_ELEMENT):
                yield emit(GenRecord(TWO_ELEMENT, parent_id=0))

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while level and level[0][1].n < max_size:
            parents, level = level, []
            tasks = [(t, flt, verify) for _, t in parents]
            if pool is None:
                results = map(_children, tasks)
            else:
                results = pool.map(_children, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
            for (pid, _), kids in zip(parents, results):
                for rec in kids:
                    yield emit(replace(rec, parent_id=pid))
            log.info("size %d: %d tomonoids", parents[0][1].n + 1, len(level))
    finally:
        if pool is not None:
            pool.shutdown()


def brute_force(size: int, filter: "str | Filter" = "all", cap: int | None = None) -> Iterator[TomonoidTable]:
    """All tomonoid tables of the given size, in lexicographic order.

    Independent of the coextension machinery: a depth-first search over the
    free cells in row-major order, with values bounded by negativity,
    pruned by monotonicity, and pruned by every associativity instance as
    soon as all four products it mentions are known.
    """
    cap = oracle_cap() if cap is None else cap
    if size < 1:
        raise PreconditionError("size must be at least 1")
    if size > cap:
        raise OracleCapError(f"size {size} exceeds the oracle cap {cap}; raise it with TOMO_ORACLE_CAP")
    flt = Filter.parse(filter)
    for t in _search(size):
        if flt.accepts(t):
            yield t


def _search(n: int) -> Iterator[TomonoidTable]:
    top = n - 1
    if n == 1:
        yield TomonoidTable(((0,),))
        return
    tab = [[0] * n for _ in range(n)]
    for a in range(n):
        tab[top][a] = tab[a][top] = a
    free = [(a, b) for a in range(top) for b in range(top)]
    order = {cell: i for i, cell in enumerate(free)}

    def known(x: int, y: int, pos: int) -> bool:
        return x == top or y == top or order[(x, y)] <= pos

    def assoc_ok(x: int, y: int, z: int, pos: int) -> bool:
        if not (known(x, y, pos) and known(y, z, pos)):
            return True
        xy, yz = tab[x][y], tab[y][z]
        if not (known(xy, z, pos) and known(x, yz, pos)):
            return True
        return tab[xy][z] == tab[x][yz]

    def consistent(pos: int) -> bool:
        # every associativity instance whose last-known product is this cell
        a, b = free[pos]
        rng = range(n)
        for z in rng:
            if not assoc_ok(a, b, z, pos):
                return False
        for x in rng:
            if not assoc_ok(x, a, b, pos):
                return False
        for x in rng:
            for y in rng:
                if known(x, y, pos) and tab[x][y] == a and not assoc_ok(x, y, b, pos):
                    return False
        for y in rng:
            for z in rng:
                if known(y, z, pos) and tab[y][z] == b and not assoc_ok(a, y, z, pos):
                    return False
        return True

    def rec(pos: int) -> Iterator[TomonoidTable]:
        if pos == len(free):
            t = TomonoidTable.from_rows(tab)
            assert _associative(t.table)
            yield t
            return
        a, b = free[pos]
        lo = max(tab[a - 1][b] if a else 0, tab[a][b - 1] if b else 0)
        for v in range(lo, min(a, b) + 1):
            tab[a][b] = v
            if consistent(pos):
                yield from rec(pos + 1)
        tab[a][b] = 0

    yield from rec(0)


def _associative(tab) -> bool:
    n = len(tab)
    return all(tab[tab[a][b]][c] == tab[a][tab[b][c]] for a in range(n) for b in range(n) for c in range(n))


class SizeCounts(NamedTuple):
    total: int = 0
    commutative: int = 0
    archimedean: int = 0
    commutative_archimedean: int = 0


def tally(tables) -> SizeCounts:
    tot = com = arc = both = 0
    for t in tables:
        c, a = is_commutative(t), is_archimedean(t)
        tot += 1
        com += c
        arc += a
        both += c and a
    return SizeCounts(tot, com, arc, both)


@dataclass
class CountReport:
    by_size: dict[int, SizeCounts] = field(default_factory=dict)

    def format(self) -> str:
        head = ("size", "total", "commutative", "archimedean", "comm+arch")
        rows = [head] + [(str(k), *map(str, v)) for k, v in sorted(self.by_size.items())]
        widths = [max(len(r[i]) for r in rows) for i in range(len(head))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)

    def to_json(self) -> dict:
        return {str(k): v._asdict() for k, v in sorted(self.by_size.items())}


def count(max_size: int, cross_check: bool = False, jobs: int = 1) -> CountReport:
    """Per-size counts of generated tomonoids.

    With ``cross_check`` every size up to the oracle cap is recounted by
    :func:`brute_force` and the table sets must agree.
    """
    by_size: dict[int, list[TomonoidTable]] = {}
    for rec in generate(max_size, jobs=jobs):
        by_size.setdefault(rec.n, []).append(rec.table)
    report = CountReport({k: tally(v) for k, v in by_size.items()})
    if cross_check:
        for k in range(1, min(max_size, oracle_cap()) + 1):
            oracle = list(brute_force(k))
            if set(oracle) != set(by_size.get(k, [])) or len(oracle) != len(by_size.get(k, [])):
                raise AssertionError(f"generator and oracle disagree at size {k}")
    return report
