import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomonoid import (
    TRIVIAL,
    TWO_ELEMENT,
    PreconditionError,
    TableShapeError,
    TomonoidTable,
    atom_char_idempotents,
    brute_force,
    idempotents,
    is_archimedean,
    is_commutative,
    quotient_chain,
    rees_quotient,
    verify_table,
)

from .conftest import IDEMPOTENT3, NILPOTENT3, all_tables
from .oracles import naive_is_tomonoid, powers_reach_zero

BAD3 = TomonoidTable.from_rows([[0, 0, 0], [0, 2, 1], [0, 1, 2]])


def test_trivial_table_is_valid():
    assert verify_table(TRIVIAL).ok


def test_nilpotent3_is_valid_and_oracle_agrees():
    assert naive_is_tomonoid(NILPOTENT3.table)
    assert verify_table(NILPOTENT3).ok


def test_monotonicity_violation_reported_with_witness():
    assert not naive_is_tomonoid(BAD3.table)
    report = verify_table(BAD3)
    assert not report.ok
    mono = [v for v in report.violations if v.kind == "monotonicity"]
    assert (1, 1, 2) in [v.witness for v in mono]  # row a reads 2 then 1
    assert "negativity" in report.kinds()


def test_report_lists_all_violations():
    t = TomonoidTable.from_rows([[1, 0, 0], [0, 2, 1], [0, 1, 1]])
    kinds = verify_table(t).kinds()
    assert {"identity", "monotonicity", "negativity"} <= kinds


@pytest.mark.parametrize("rows", [[[0, 1]], [[0, 0], [0]], [[0, 0], [0, 2]], []])
def test_malformed_tables_are_structural_errors(rows):
    with pytest.raises(TableShapeError):
        TomonoidTable.from_rows(rows)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_verify_agrees_with_definition(rows):
    assert verify_table(TomonoidTable.from_rows(rows)).ok == naive_is_tomonoid(rows)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_verify_agrees_with_definition_identity_fixed(rows):
    n = len(rows)
    for a in range(n):
        rows[n - 1][a] = rows[a][n - 1] = a
    assert verify_table(TomonoidTable.from_rows(rows)).ok == naive_is_tomonoid(rows)


def test_commutativity_examples():
    assert is_commutative(TRIVIAL)
    assert is_commutative(NILPOTENT3)
    noncomm = [t for t in brute_force(4) if not is_commutative(t)]
    assert noncomm
    assert all(any(t(a, b) != t(b, a) for a in range(4) for b in range(4)) for t in noncomm)


def test_archimedean_examples():
    assert is_archimedean(TWO_ELEMENT)
    assert is_archimedean(NILPOTENT3)
    assert not is_archimedean(IDEMPOTENT3)


@pytest.mark.parametrize("t", all_tables(5), ids=lambda t: str(t.table))
def test_archimedean_criteria_agree(t):
    rows, n = t.table, t.n
    right = all(rows[a][b] != a for a in range(1, n) for b in range(n - 1))
    assert is_archimedean(t) == right == powers_reach_zero(rows)


def test_idempotents_examples():
    assert idempotents(TWO_ELEMENT) == [0, 1]
    assert idempotents(NILPOTENT3) == [0, 2]
    assert idempotents(IDEMPOTENT3) == [0, 1, 2]


def test_atom_char_idempotents_examples():
    assert atom_char_idempotents(NILPOTENT3) == (2, 2)
    assert atom_char_idempotents(IDEMPOTENT3) == (1, 1)
    assert atom_char_idempotents(TWO_ELEMENT) == (1, 1)
    with pytest.raises(PreconditionError):
        atom_char_idempotents(TRIVIAL)


def test_rees_quotient_examples():
    assert rees_quotient(NILPOTENT3, 1) == TWO_ELEMENT
    assert rees_quotient(IDEMPOTENT3, 0) is IDEMPOTENT3
    with pytest.raises(PreconditionError):
        rees_quotient(NILPOTENT3, 2)


@pytest.mark.parametrize("t", all_tables(5), ids=lambda t: str(t.table))
def test_table_invariants(t):
    n = t.n
    assert all(t(a, b) <= min(a, b) for a in range(n) for b in range(n))
    if n >= 2:
        assert set(atom_char_idempotents(t)) <= set(idempotents(t))
    for q in range(n - 1):
        quo = rees_quotient(t, q)
        assert quo.n == n - q
        assert verify_table(quo).ok
        assert rees_quotient(quo, 0) == quo
    chain = quotient_chain(t)
    assert [c.n for c in chain] == list(range(n, 0, -1))
    assert chain[-1] == TRIVIAL
