"""Finite chains, multiplication tables and their axiom checks.

Elements of an ``n``-element chain are the integers ``0..n-1`` in their
natural order.  ``0`` is the bottom, ``n-1`` is the top and also the
monoidal identity, and ``1`` is the atom when ``n >= 2``.  Any two chains of
equal length are uniquely order isomorphic, so two tomonoids are isomorphic
exactly when their tables are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import PreconditionError, TableShapeError

VIOLATION_KINDS = (
    "identity",
    "monotonicity",
    "associativity",
    "negativity",
    "regularity-P1",
    "uniqueness-P2",
    "reidemeister-P3",
)


@dataclass(frozen=True)
class Chain:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise TableShapeError(f"chain size must be a positive integer, got {self.n!r}")

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    @property
    def atom(self) -> int | None:
        return 1 if self.n >= 2 else None

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(range(self.n))


@dataclass(frozen=True)
class TomonoidTable:
    """A full multiplication table on a finite chain.

    ``table[a][b]`` is ``a * b``.  Construction only checks the shape and
    the entry range; use :func:`verify_table` for the tomonoid axioms.
    """

    table: tuple[tuple[int, ...], ...]
    chain: Chain = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.table)
        n = len(rows)
        if n == 0:
            raise TableShapeError("table must have at least one row")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise TableShapeError(f"row {i} has {len(row)} entries, expected {n}")
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise TableShapeError(f"entry ({i},{j}) = {x} outside 0..{n - 1}")
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "chain", Chain(n))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "TomonoidTable":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return self.n - 1

    def __call__(self, a: int, b: int) -> int:
        return self.table[a][b]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.table]


TRIVIAL = TomonoidTable(((0,),))
# The zero row and column plus the identity leave no freedom on two elements.
TWO_ELEMENT = TomonoidTable(((0, 0), (0, 1)))


class Violation(NamedTuple):
    kind: str
    witness: tuple[int, ...]
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self):
        return self.ok

    def format(self) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s):"]
        for v in self.violations:
            w = ",".join(str(x) for x in v.witness)
            lines.append(f"  {v.kind} at ({w})" + (f": {v.detail}" if v.detail else ""))
        return "\n".join(lines)


class IdempotentPair(NamedTuple):
    e_l: int
    e_r: int


def verify_table(t: TomonoidTable) -> VerifyReport:
    """Check identity, monotonicity, negativity and associativity.

    Every violation is reported.  Monotonicity witnesses are adjacent
    cells, which suffices because the order on a chain is generated by its
    covers.
    """
    tab = t.table
    n = t.n
    top = n - 1
    out: list[Violation] = []
    for a in range(n):
        if tab[top][a] != a:
            out.append(Violation("identity", (top, a), f"1*{a} = {tab[top][a]}"))
        if tab[a][top] != a and a != top:
            out.append(Violation("identity", (a, top), f"{a}*1 = {tab[a][top]}"))
    for a in range(n):
        for b in range(n):
            v = tab[a][b]
            if a + 1 < n and v > tab[a + 1][b]:
                out.append(Violation("monotonicity", (a, a + 1, b),
                                     f"{a}*{b} = {v} > {a + 1}*{b} = {tab[a + 1][b]}"))
            if b + 1 < n and v > tab[a][b + 1]:
                out.append(Violation("monotonicity", (a, b, b + 1),
                                     f"{a}*{b} = {v} > {a}*{b + 1} = {tab[a][b + 1]}"))
            if v > min(a, b):
                out.append(Violation("negativity", (a, b), f"{a}*{b} = {v} > min({a},{b})"))
    for a in range(n):
        row = tab[a]
        for b in range(n):
            ab = row[b]
            tb = tab[b]
            for c in range(n):
                left = tab[ab][c]
                right = row[tb[c]]
                if left != right:
                    out.append(Violation("associativity", (a, b, c),
                                         f"({a}*{b})*{c} = {left} != {a}*({b}*{c}) = {right}"))
    return VerifyReport(tuple(out))


def is_commutative(t: TomonoidTable) -> bool:
    tab = t.table
    return all(tab[a][b] == tab[b][a] for a in range(t.n) for b in range(a))


def is_archimedean(t: TomonoidTable) -> bool:
    """True iff no ``b < 1`` fixes a nonzero ``a`` from the left.

    For finite negative tomonoids this is the same as nilpotency.
    """
    tab = t.table
    top = t.n - 1
    return all(tab[b][a] != a for a in range(1, t.n) for b in range(top))


def idempotents(t: TomonoidTable) -> list[int]:
    return [e for e in range(t.n) if t.table[e][e] == e]


def atom_char_idempotents(t: TomonoidTable) -> IdempotentPair:
    """Least elements acting as identity on the atom from the left and right."""
    if t.n < 2:
        raise PreconditionError("the trivial tomonoid has no atom")
    tab = t.table
    e_l = next(a for a in range(t.n) if tab[a][1] == 1)
    e_r = next(a for a in range(t.n) if tab[1][a] == 1)
    assert tab[e_l][e_l] == e_l and tab[e_r][e_r] == e_r, "atom-characterising element not idempotent"
    return IdempotentPair(e_l, e_r)


def rees_quotient(t: TomonoidTable, q: int) -> TomonoidTable:
    """Collapse every element ``<= q`` to a single new bottom.

    The result has ``n - q`` elements; ``a > q`` becomes ``a - q``.
    ``q = 0`` returns ``t`` unchanged.
    """
    n = t.n
    if not 0 <= q < n - 1:
        raise PreconditionError(f"quotient element must satisfy 0 <= q < {n - 1}, got {q}")
    if q == 0:
        return t
    m = n - q

    def down(x: int) -> int:
        return x - q if x > q else 0

    rows = [[0] * m for _ in range(m)]
    for a in range(q + 1, n):
        for b in range(q + 1, n):
            rows[a - q][b - q] = down(t.table[a][b])
    return TomonoidTable.from_rows(rows)


def atom_quotient(t: TomonoidTable) -> TomonoidTable:
    """Rees quotient by the atom.

    On two elements the atom is the identity, which :func:`rees_quotient`
    refuses to collapse; the quotient there is the trivial tomonoid.
    """
    if t.n < 2:
        raise PreconditionError("the trivial tomonoid has no atom")
    return TRIVIAL if t.n == 2 else rees_quotient(t, 1)


def quotient_chain(t: TomonoidTable) -> list[TomonoidTable]:
    """Repeated Rees quotients by the atom, from ``t`` down to the trivial tomonoid."""
    out = [t]
    while out[-1].n > 1:
        out.append(atom_quotient(out[-1]))
    return out
