"""Ramification of a tomonoid partition over the zero doubling extension.

The bottom ``0`` of ``S`` (size ``n``) is split into a new bottom and a new
atom.  In the extended chain ``E`` of size ``n + 1`` index ``0`` is the new
bottom, index ``1`` the new atom (the image of the old bottom), and an old
element ``a`` sits at ``a + 1``; the identity is index ``n``.

Cells of ``E x E`` whose product in ``S`` is nonzero form the support and
keep their classes.  The remaining cells (the cosupport) are split into
classes by the least equivalence closed under the rules below.  Rule names
in the merge log:

``E1``
    support cells with equal product.
``E2``
    ``(d, c) ~ (a, e)`` for ``a*b = d``, ``b*c = e`` nonzero, when both
    targets are in the cosupport.
``E3a``
    ``(a, e) ~ 0`` when ``a*b`` vanishes, ``b*c = e`` and ``c < e_r``;
    mirrored with ``a < e_l``.
``E3b``
    ``(a, e) ~ (a, b)`` under the same premise with ``c >= e_r``; mirrored.
``E3c``
    ``(a, b) ~ 0`` when ``(a, b)`` and ``(b, c)`` both vanish, ``a < e_l``
    and ``c >= e_r``; mirrored.
``E4a``
    seeds of the new bottom: ``(1, 0)``, ``(0, 1)``, ``(a, atom)`` for
    ``a < e_l`` and ``(atom, b)`` for ``b < e_r``.
``E4a-down``
    the class of the new bottom is downward closed in the cosupport.
``E4b``
    seeds of the new atom: ``(1, atom)``, ``(atom, 1)``, ``(e_l, atom)``,
    ``(atom, e_r)``.
``E4b-up``
    the class of the new atom is upward closed in the cosupport.
``E5``
    ``(a, b) ~ (b, a)`` in the cosupport (commutative mode only).

In Archimedean mode only the pair of identities is allowed; the ``E3b``,
``E3c`` and ``E4b-up`` rules are dropped, leaving the smaller rule set that
characterises Archimedean coextensions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .chain import (
    Chain,
    IdempotentPair,
    TomonoidTable,
    is_archimedean,
    is_commutative,
)
from .errors import ObstructedError, PreconditionError
from .unionfind import DisjointSet, Merge

Cell = tuple[int, int]


@dataclass(frozen=True)
class ExtendedChain:
    """The chain ``S`` with its bottom doubled."""

    base: Chain

    @property
    def n(self) -> int:
        return self.base.n + 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def atom(self) -> int:
        return 1

    @property
    def top(self) -> int:
        return self.base.n

    @staticmethod
    def embed(a: int) -> int:
        """Image of an element of ``S``; the old bottom becomes the new atom."""
        return a + 1

    def cells(self) -> Iterator[Cell]:
        for a in range(self.n):
            for b in range(self.n):
                yield (a, b)


@dataclass(frozen=True)
class Ramification:
    ext: ExtendedChain
    support: frozenset[Cell]
    class_of: tuple[tuple[int, ...], ...]
    zero_class: int
    atom_class: int
    obstructed: bool
    pair: IdempotentPair
    commutative_mode: bool = False
    archimedean_mode: bool = False
    log: tuple[Merge, ...] = field(default=(), compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.ext.n

    @property
    def cosupport(self) -> frozenset[Cell]:
        return frozenset(c for c in self.ext.cells() if c not in self.support)

    def classes(self) -> dict[int, list[Cell]]:
        out: dict[int, list[Cell]] = {}
        for a, row in enumerate(self.class_of):
            for b, k in enumerate(row):
                out.setdefault(k, []).append((a, b))
        return dict(sorted(out.items()))

    def cosupport_classes(self) -> dict[int, list[Cell]]:
        return {k: cells for k, cells in self.classes().items()
                if cells[0] not in self.support}

    def class_at(self, cell: Cell) -> int:
        return self.class_of[cell[0]][cell[1]]


def compute_support(t: TomonoidTable) -> frozenset[Cell]:
    """Cells of the extended square whose product in ``t`` is nonzero."""
    if t.n < 2:
        raise PreconditionError("support needs a non-trivial tomonoid")
    tab = t.table
    n = t.n
    out = frozenset((a + 1, b + 1) for a in range(1, n) for b in range(1, n) if tab[a][b] != 0)
    for a, b in out:
        assert (a + 1 > n or (a + 1, b) in out) and (b + 1 > n or (a, b + 1) in out), \
            "support is not upward closed"
    return out


def _check_pair(t: TomonoidTable, pair: IdempotentPair) -> IdempotentPair:
    pair = IdempotentPair(*pair)
    for e in pair:
        if not 0 <= e < t.n or t.table[e][e] != e:
            raise PreconditionError(f"{e} is not an idempotent of the tomonoid")
    return pair


def ramify(
    t: TomonoidTable,
    pair: IdempotentPair,
    commutative_mode: bool = False,
    archimedean_mode: bool = False,
) -> Ramification:
    """Least equivalence on the extended square generated by the ramification rules.

    ``pair`` holds idempotents of ``t`` (in ``t``'s indexing) that are to
    become the atom-characterising pair of every resulting coextension.
    """
    n = t.n
    if n < 2:
        raise PreconditionError("ramification of the trivial tomonoid is not defined")
    pair = _check_pair(t, pair)
    top = n - 1
    if archimedean_mode:
        if pair != (top, top):
            raise PreconditionError("Archimedean mode requires the pair of identities")
        if not is_archimedean(t):
            raise PreconditionError("Archimedean mode requires an Archimedean tomonoid")
    if commutative_mode:
        if pair.e_l != pair.e_r:
            raise PreconditionError("commutative mode requires e_l == e_r")
        if not is_commutative(t):
            raise PreconditionError("commutative mode requires a commutative tomonoid")

    ext = ExtendedChain(t.chain)
    m = ext.n
    one = ext.top
    tab = t.table
    support = compute_support(t)
    el, er = ext.embed(pair.e_l), ext.embed(pair.e_r)
    zero_seed: Cell = (one, 0)
    atom_seed: Cell = (one, 1)

    # product in E of nonzero elements of S (indices >= 2); 0 marks the cosupport
    def prod(x: int, y: int) -> int:
        v = tab[x - 1][y - 1]
        return v + 1 if v else 0

    ds: DisjointSet[Cell] = DisjointSet(ext.cells(), log=True)

    by_value: dict[int, Cell] = {}
    for cell in sorted(support):
        v = prod(*cell)
        if v in by_value:
            ds.union(by_value[v], cell, "E1")
        else:
            by_value[v] = cell

    inner = range(2, m)
    for a in inner:
        for b in inner:
            d = prod(a, b)
            for c in inner:
                e = prod(b, c)
                if d and e:
                    if (d, c) not in support and (a, e) not in support:
                        ds.union((d, c), (a, e), "E2", (a, b, c))
                elif not d and e:
                    if c < er:
                        ds.union((a, e), zero_seed, "E3a", (a, b, c))
                    elif not archimedean_mode:
                        ds.union((a, e), (a, b), "E3b", (a, b, c))
                elif d and not e:
                    if a < el:
                        ds.union((d, c), zero_seed, "E3a", (a, b, c))
                    elif not archimedean_mode:
                        ds.union((d, c), (b, c), "E3b", (a, b, c))

    if not archimedean_mode:
        pos = range(1, m)
        for a in pos:
            for b in pos:
                if (a, b) in support:
                    continue
                for c in pos:
                    if (b, c) in support:
                        continue
                    if a < el and c >= er:
                        ds.union((a, b), zero_seed, "E3c", (a, b, c))
                    elif a >= el and c < er:
                        ds.union((b, c), zero_seed, "E3c", (a, b, c))

    ds.union(zero_seed, (0, one), "E4a")
    for a in range(el):
        ds.union(zero_seed, (a, 1), "E4a")
    for b in range(er):
        ds.union(zero_seed, (1, b), "E4a")
    for cell in ((1, one), (el, 1), (1, er)):
        ds.union(atom_seed, cell, "E4b")

    if commutative_mode:
        for a in range(m):
            for b in range(a):
                if (a, b) not in support and (b, a) not in support:
                    ds.union((a, b), (b, a), "E5")

    _close(ds, support, m, zero_seed, atom_seed, upward=not archimedean_mode)

    for cell in support:
        assert ds.members(cell)[0] in support and all(c in support for c in ds.members(cell)), \
            "a support class was merged with the cosupport"

    zero_root = ds.find(zero_seed)
    atom_root = ds.find(atom_seed)
    obstructed = zero_root == atom_root
    ids: dict[Cell, int] = {zero_root: 0}
    if not obstructed:
        ids[atom_root] = 1
    for cell in support:
        ids.setdefault(ds.find(cell), prod(*cell))
    fresh = m
    for cell in ext.cells():
        r = ds.find(cell)
        if r not in ids:
            ids[r] = fresh
            fresh += 1
    grid = tuple(tuple(ids[ds.find((a, b))] for b in range(m)) for a in range(m))
    return Ramification(
        ext=ext,
        support=support,
        class_of=grid,
        zero_class=0,
        atom_class=0 if obstructed else 1,
        obstructed=obstructed,
        pair=pair,
        commutative_mode=commutative_mode,
        archimedean_mode=archimedean_mode,
        log=tuple(ds.log),
    )


def _close(ds, support, m, zero_seed, atom_seed, upward: bool) -> None:
    """Close the bottom class downward and the atom class upward, to a fixpoint.

    Only cosupport cells are queued.  A cell is re-queued whenever its class
    grows, since that is the only event that makes a closure rule applicable.
    """
    work = deque(c for c in sorted(ds.parent) if c not in support)
    while work:
        x = work.popleft()
        if ds.same(x, zero_seed):
            for y in ((x[0] - 1, x[1]), (x[0], x[1] - 1)):
                if y[0] >= 0 and y[1] >= 0 and ds.union(y, x, "E4a-down", (x,)):
                    work.extend(ds.members(x))
        if upward and ds.same(x, atom_seed):
            for y in ((x[0] + 1, x[1]), (x[0], x[1] + 1)):
                if y[0] < m and y[1] < m and y not in support and ds.union(y, x, "E4b-up", (x,)):
                    work.extend(ds.members(x))


def audit(t: TomonoidTable, r: Ramification) -> list[str]:
    """Replay the merge log, checking that each merge is licensed by its rule.

    Returns a list of problems; empty when every merge is justified and the
    replay reproduces the partition exactly.
    """
    tab = t.table
    m = r.n
    one = m - 1
    support = r.support
    el, er = r.ext.embed(r.pair.e_l), r.ext.embed(r.pair.e_r)
    zero_seed, atom_seed = (one, 0), (one, 1)

    def prod(x, y):
        v = tab[x - 1][y - 1]
        return v + 1 if v else 0

    def static_ok(mg: Merge) -> bool:
        pair = {mg.x, mg.y}
        if mg.rule == "E1":
            return mg.x in support and mg.y in support and prod(*mg.x) == prod(*mg.y)
        if mg.rule in ("E2", "E3a", "E3b"):
            a, b, c = mg.witness
            if min(a, b, c) < 2:
                return False
            d, e = prod(a, b), prod(b, c)
            if mg.rule == "E2":
                return bool(d and e) and pair == {(d, c), (a, e)} and not pair & support
            if mg.rule == "E3a":
                if not d and e and c < er:
                    return pair == {(a, e), zero_seed}
                if d and not e and a < el:
                    return pair == {(d, c), zero_seed}
                return False
            if r.archimedean_mode:
                return False
            if not d and e and c >= er:
                return pair == {(a, e), (a, b)}
            if d and not e and a >= el:
                return pair == {(d, c), (b, c)}
            return False
        if mg.rule == "E3c":
            a, b, c = mg.witness
            if r.archimedean_mode or min(a, b, c) < 1 or (a, b) in support or (b, c) in support:
                return False
            if a < el and c >= er:
                return pair == {(a, b), zero_seed}
            if a >= el and c < er:
                return pair == {(b, c), zero_seed}
            return False
        if mg.rule == "E4a":
            ok = {(0, one)} | {(a, 1) for a in range(el)} | {(1, b) for b in range(er)}
            return zero_seed in pair and (pair - {zero_seed}) <= ok
        if mg.rule == "E4b":
            return atom_seed in pair and (pair - {atom_seed}) <= {(1, one), (el, 1), (1, er)}
        if mg.rule == "E5":
            return r.commutative_mode and mg.x == mg.y[::-1] and not pair & support
        return False

    problems = []
    ds: DisjointSet[Cell] = DisjointSet(r.ext.cells())
    for i, mg in enumerate(r.log):
        if mg.rule in ("E4a-down", "E4b-up"):
            (w,) = mg.witness
            seed = zero_seed if mg.rule == "E4a-down" else atom_seed
            lo, hi = (mg.x, w) if mg.rule == "E4a-down" else (w, mg.x)
            ok = (
                mg.y == w
                and ds.same(w, seed)
                and mg.x not in support
                and hi[0] - lo[0] + hi[1] - lo[1] == 1
                and lo[0] <= hi[0] and lo[1] <= hi[1]
                and not (mg.rule == "E4b-up" and r.archimedean_mode)
            )
        else:
            ok = static_ok(mg)
        if not ok:
            problems.append(f"merge {i} {mg} is not justified")
        ds.union(mg.x, mg.y)
    replay = {frozenset(g) for g in ds.groups()}
    actual = {frozenset(g) for g in r.classes().values()}
    if replay != actual:
        problems.append("replayed merges do not reproduce the partition")
    return problems


@dataclass(frozen=True)
class ClassDag:
    """Condensed order on the cosupport classes of a ramification.

    ``nodes`` are listed in a fixed topological order.  A node is named by
    the least class identifier it contains; ``members`` lists the classes
    condensed into it.  ``above[u]`` holds every node strictly above ``u``.
    """

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    zero_node: int
    atom_node: int
    cells_of: dict[int, frozenset[Cell]] = field(compare=False)
    members: dict[int, tuple[int, ...]] = field(compare=False)
    above: dict[int, frozenset[int]] = field(compare=False)

    def below(self, u: int) -> frozenset[int]:
        return frozenset(v for v in self.nodes if u in self.above[v])

    def forced_groups(self) -> list[tuple[int, ...]]:
        """Condensed groups with more than one class."""
        return [g for g in self.members.values() if len(g) > 1]


def class_poset(r: Ramification) -> ClassDag:
    if r.obstructed:
        raise ObstructedError("ramification is obstructed: the new bottom and atom coincide")
    m = r.n
    cos = r.cosupport
    classes = r.cosupport_classes()
    succ: dict[int, set[int]] = {k: set() for k in classes}
    for a, b in cos:
        k = r.class_of[a][b]
        for c, d in ((a + 1, b), (a, b + 1)):
            if c < m and d < m and (c, d) in cos:
                kk = r.class_of[c][d]
                if kk != k:
                    succ[k].add(kk)
    reach: dict[int, set[int]] = {}
    for k in classes:
        seen = {k}
        stack = [k]
        while stack:
            for j in succ[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        reach[k] = seen

    node_of: dict[int, int] = {}
    for k in sorted(classes):
        if k not in node_of:
            scc = sorted(j for j in reach[k] if k in reach[j])
            for j in scc:
                node_of[j] = scc[0]
    members: dict[int, tuple[int, ...]] = {}
    for k in sorted(classes):
        members.setdefault(node_of[k], ())
        members[node_of[k]] += (k,)
    above = {
        u: frozenset(node_of[j] for k in ks for j in reach[k]) - {u}
        for u, ks in members.items()
    }
    edges = frozenset(
        (u, v) for u in members for v in above[u]
        if not any(v in above[w] for w in above[u])
    )
    height: dict[int, int] = {}

    def h(u: int) -> int:
        if u not in height:
            lower = [w for w in members if u in above[w]]
            height[u] = 1 + max((h(w) for w in lower), default=-1)
        return height[u]

    nodes = tuple(sorted(members, key=lambda u: (h(u), u)))
    cells_of = {
        u: frozenset(c for k in ks for c in classes[k]) for u, ks in members.items()
    }
    zero_node, atom_node = node_of[r.zero_class], node_of[r.atom_class]
    if zero_node == atom_node or zero_node in above[atom_node]:
        raise ObstructedError("the new atom lies below the new bottom in the class order")
    return ClassDag(
        nodes=nodes,
        edges=edges,
        zero_node=zero_node,
        atom_node=atom_node,
        cells_of=cells_of,
        members=members,
        above=above,
    )
