"""One-element Rees coextensions from ramifications.

A coextension is fixed by choosing which cosupport classes collapse to the
new bottom.  The chosen set must be a downset of the class order that holds
the bottom class and avoids the atom class; every other cosupport cell
becomes the new atom.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .chain import (
    IdempotentPair,
    TomonoidTable,
    atom_char_idempotents,
    atom_quotient,
    idempotents,
    is_archimedean,
    is_commutative,
    verify_table,
)
from .errors import InternalSoundnessError, ObstructedError, PreconditionError
from .ramification import ClassDag, Ramification, class_poset, ramify

log = logging.getLogger(__name__)

Cell = tuple[int, int]


@dataclass(frozen=True)
class CoextensionChoice:
    downset: frozenset[int]
    cells: frozenset[Cell] = field(default=frozenset(), compare=False, repr=False)

    def sorted_nodes(self) -> list[int]:
        return sorted(self.downset)


class Filter(NamedTuple):
    commutative: bool = False
    archimedean: bool = False

    @classmethod
    def parse(cls, text: "str | Filter | None") -> "Filter":
        if text is None:
            return cls()
        if isinstance(text, Filter):
            return text
        parts = {p for p in text.replace(",", "+").split("+") if p}
        unknown = parts - {"all", "commutative", "archimedean"}
        if unknown:
            raise ValueError(f"unknown filter {text!r}; use all, commutative, archimedean or both joined by '+'")
        return cls("commutative" in parts, "archimedean" in parts)

    def accepts(self, t: TomonoidTable) -> bool:
        return (not self.commutative or is_commutative(t)) and (not self.archimedean or is_archimedean(t))

    def __str__(self):
        names = [n for n, on in zip(self._fields, self) if on]
        return "+".join(names) or "all"


class Flags(NamedTuple):
    commutative: bool
    archimedean: bool

    @classmethod
    def of(cls, t: TomonoidTable) -> "Flags":
        return cls(is_commutative(t), is_archimedean(t))


@dataclass(frozen=True)
class GenRecord:
    """A generated tomonoid with the provenance that produced it.

    ``parent_id`` is the stream position of the parent record, ``pair`` is
    given in the parent's indexing and ``choice`` lists the chosen nodes.
    """

    table: TomonoidTable
    parent_id: int | None = None
    pair: IdempotentPair | None = None
    choice: tuple[int, ...] | None = None
    flags: Flags | None = None

    def __post_init__(self):
        if self.flags is None:
            object.__setattr__(self, "flags", Flags.of(self.table))

    @property
    def n(self) -> int:
        return self.table.n


def enumerate_choices(d: ClassDag) -> Iterator[CoextensionChoice]:
    """Downsets holding the bottom node and missing the atom node.

    Nodes are decided one at a time in the DAG's topological order, leaving
    a node out before putting it in; a node may only go in once all nodes
    below it are in.  Each admissible downset comes out exactly once.
    """
    if d.zero_node == d.atom_node:
        raise ObstructedError("bottom and atom classes coincide")
    forbidden = {d.atom_node} | {v for v in d.nodes if d.atom_node in d.below(v)}
    free = [v for v in d.nodes if v != d.zero_node and v not in forbidden]
    below = {v: d.below(v) for v in free}
    chosen = {d.zero_node}

    def rec(i: int) -> Iterator[frozenset[int]]:
        if i == len(free):
            yield frozenset(chosen)
            return
        v = free[i]
        yield from rec(i + 1)
        if below[v] <= chosen:
            chosen.add(v)
            yield from rec(i + 1)
            chosen.remove(v)

    for ds in rec(0):
        yield CoextensionChoice(ds, frozenset(c for v in ds for c in d.cells_of[v]))


def materialise(
    t: TomonoidTable, r: Ramification, c: CoextensionChoice, verify: bool = True
) -> TomonoidTable:
    """Table on the extended chain for a chosen bottom downset.

    With ``verify`` the table is checked in full against the tomonoid axioms
    and the coextension postconditions.
    """
    m = r.n
    zero_cells = c.cells
    rows = []
    for a in range(m):
        row = []
        for b in range(m):
            if (a, b) in r.support:
                row.append(t.table[a - 1][b - 1] + 1)
            else:
                row.append(0 if (a, b) in zero_cells else 1)
        rows.append(row)
    out = TomonoidTable.from_rows(rows)
    if verify:
        _check_coextension(t, r, out)
    return out


def _check_coextension(t: TomonoidTable, r: Ramification, out: TomonoidTable) -> None:
    report = verify_table(out)
    if not report.ok:
        raise InternalSoundnessError(f"coextension is not a tomonoid\n{report.format()}")
    if atom_quotient(out) != t:
        raise InternalSoundnessError("Rees quotient of the coextension differs from its parent")
    got = atom_char_idempotents(out)
    want = (r.ext.embed(r.pair.e_l), r.ext.embed(r.pair.e_r))
    if tuple(got) != want:
        raise InternalSoundnessError(f"coextension has atom-characterising pair {tuple(got)}, expected {want}")
    if r.commutative_mode and not is_commutative(out):
        raise InternalSoundnessError("commutative mode produced a non-commutative table")
    if r.archimedean_mode and not is_archimedean(out):
        raise InternalSoundnessError("Archimedean mode produced a non-Archimedean table")


def coextensions_for_pair(
    t: TomonoidTable,
    pair: IdempotentPair,
    commutative_mode: bool = False,
    archimedean_mode: bool = False,
    verify: bool = True,
) -> Iterator[GenRecord]:
    """All coextensions of ``t`` with the given atom-characterising pair.

    Raises :class:`ObstructedError` when no such coextension exists.
    """
    pair = IdempotentPair(*pair)
    r = ramify(t, pair, commutative_mode, archimedean_mode)
    dag = class_poset(r)
    for c in enumerate_choices(dag):
        table = materialise(t, r, c, verify=verify)
        yield GenRecord(table=table, pair=pair, choice=tuple(c.sorted_nodes()))


def pairs_for(t: TomonoidTable, flt: Filter) -> list[IdempotentPair]:
    """Idempotent pairs to try for ``t`` under a filter, in a fixed order."""
    top = t.n - 1
    if flt.archimedean:
        return [IdempotentPair(top, top)]
    idem = idempotents(t)
    if flt.commutative:
        return [IdempotentPair(e, e) for e in idem]
    return [IdempotentPair(a, b) for a in idem for b in idem]


def coextensions(
    t: TomonoidTable, filter: "str | Filter" = "all", verify: bool = True
) -> Iterator[GenRecord]:
    """Every one-element coextension of ``t`` passing ``filter``.

    Filtered runs use the dedicated rule sets rather than discarding
    results; a parent outside the filter class has no such coextensions.
    """
    if t.n < 2:
        raise PreconditionError("the trivial tomonoid is extended by the fixed two-element seed")
    flt = Filter.parse(filter)
    if not flt.accepts(t):
        return
    for pair in pairs_for(t, flt):
        try:
            yield from coextensions_for_pair(t, pair, flt.commutative, flt.archimedean, verify)
        except ObstructedError:
            log.debug("pair %s obstructed for %s", tuple(pair), t.table)
