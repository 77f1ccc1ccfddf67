import functools
import json
from pathlib import Path

import pytest

from tomonoid import TomonoidTable, generate

DATA = Path(__file__).parent / "data"

NILPOTENT3 = TomonoidTable.from_rows([[0, 0, 0], [0, 0, 1], [0, 1, 2]])
IDEMPOTENT3 = TomonoidTable.from_rows([[0, 0, 0], [0, 1, 1], [0, 1, 2]])


@functools.lru_cache(maxsize=None)
def tables_by_size(max_size: int = 5) -> dict[int, list[TomonoidTable]]:
    out: dict[int, list[TomonoidTable]] = {}
    for rec in generate(max_size):
        out.setdefault(rec.n, []).append(rec.table)
    return out


def all_tables(max_size: int = 5, min_size: int = 1) -> list[TomonoidTable]:
    return [t for k, ts in sorted(tables_by_size(max_size).items()) if k >= min_size for t in ts]


@pytest.fixture(scope="session")
def golden_counts() -> dict:
    return json.loads((DATA / "golden_counts.json").read_text())["counts"]


@pytest.fixture
def nilpotent3():
    return NILPOTENT3


@pytest.fixture
def idempotent3():
    return IDEMPOTENT3


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, note in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({note})" if note else ""))
