import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomonoid import (
    AxiomError,
    LevelPartition,
    PartitionStructureError,
    TomonoidTable,
    from_partition,
    is_commutative,
    to_partition,
    verify_partition,
    verify_table,
)
from tomonoid.chain import TRIVIAL
from tomonoid.partition import is_regular, satisfies_p1_prime

from .conftest import IDEMPOTENT3, NILPOTENT3, all_tables


def test_trivial_partition():
    p = to_partition(TRIVIAL)
    assert p.classes() == {0: [(0, 0)]}
    assert from_partition(p) == TRIVIAL


def test_nilpotent3_class_sizes():
    sizes = {k: len(v) for k, v in to_partition(NILPOTENT3).classes().items()}
    assert sizes == {0: 6, 1: 2, 2: 1}


@pytest.mark.parametrize("t", [NILPOTENT3, IDEMPOTENT3])
def test_round_trip_small(t):
    assert from_partition(to_partition(t)) == t


def test_merging_identity_cell_breaks_p2():
    grid = [list(r) for r in NILPOTENT3.table]
    grid[2][2] = 0  # (1,1) joins the class of (a,a)
    p = LevelPartition(NILPOTENT3.chain, grid, {0: 0, 1: 1})
    report = verify_partition(p)
    assert "uniqueness-P2" in report.kinds()
    with pytest.raises(AxiomError):
        from_partition(p)


def test_swapped_cells_break_regularity():
    grid = [list(r) for r in IDEMPOTENT3.table]
    grid[0][1], grid[1][1] = grid[1][1], grid[0][1]
    p = LevelPartition(IDEMPOTENT3.chain, grid, {0: 0, 1: 1, 2: 2})
    report = verify_partition(p)
    assert [v for v in report.violations if v.kind == "regularity-P1"]
    assert (0, 1, 1, 1) in [v.witness for v in report.violations]


def test_unknown_identifier_is_structural():
    p = LevelPartition(NILPOTENT3.chain, [[0, 0, 0], [0, 7, 1], [0, 1, 2]], {0: 0, 1: 1, 2: 2})
    with pytest.raises(PartitionStructureError):
        verify_partition(p)


def test_arbitrary_identifiers_accepted():
    names = {0: "z", 1: "a", 2: "one"}
    grid = [[names[x] for x in row] for row in NILPOTENT3.table]
    p = LevelPartition(NILPOTENT3.chain, grid, {"z": 0, "a": 1, "one": 2})
    assert verify_partition(p).ok
    assert from_partition(p) == NILPOTENT3


@pytest.mark.parametrize("t", all_tables(5), ids=lambda t: str(t.table))
def test_partition_properties(t):
    p = to_partition(t)
    assert verify_partition(p).ok
    assert verify_partition(p, strict=True).ok
    assert from_partition(p) == t
    assert to_partition(from_partition(p)) == p
    assert is_regular(p) and satisfies_p1_prime(p)
    n = t.n
    for c, cells in p.classes().items():
        assert all(a >= c and b >= c for a, b in cells)
    assert is_commutative(t) == all(p.class_of[a][b] == p.class_of[b][a] for a in range(n) for b in range(n))
    zero = set(p.classes()[0])
    assert all((x, y) in zero for a, b in zero for x in range(a + 1) for y in range(b + 1))


def _identity_tables(max_n):
    def fill(n):
        return st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)

    def fix(rows):
        n = len(rows)
        for a in range(n):
            rows[n - 1][a] = rows[a][n - 1] = a
        return TomonoidTable.from_rows(rows)

    return st.integers(2, max_n).flatmap(fill).map(fix)


@settings(max_examples=400, deadline=None)
@given(_identity_tables(4))
def test_regularity_variants_agree_under_p2(t):
    # every table with identity row and column gives a partition satisfying (P2)
    p = to_partition(t)
    report = verify_partition(p)
    assert "uniqueness-P2" not in report.kinds()
    p1_double = "regularity-P1" not in report.kinds()
    assert is_regular(p) == satisfies_p1_prime(p) == p1_double


@settings(max_examples=400, deadline=None)
@given(_identity_tables(4))
def test_simplified_axioms_characterise_tomonoids(t):
    p = to_partition(t)
    assert verify_partition(p).ok == verify_partition(p, strict=True).ok == verify_table(t).ok
