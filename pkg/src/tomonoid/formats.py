"""Text table files and JSON record lines.

Table file grammar::

    tomonoid v1 n=<size>
    <row 0: size integers separated by whitespace>
    ...
    <row size-1>

Row ``i`` is row ``i`` of the table, bottom row first.  Lines starting with
``#`` and blank lines are ignored.  A record line is one JSON object per
line with the keys ``n``, ``table``, ``parent``, ``pair``, ``choice`` and
``flags``.
"""

from __future__ import annotations

import json
import re

from .chain import IdempotentPair, TomonoidTable, verify_table
from .coextend import Flags, GenRecord
from .errors import TomonoidError

HEADER = re.compile(r"^tomonoid v1 n=(\d+)$")


class ParseError(TomonoidError, ValueError):
    """Malformed table document.

    ``code`` is one of ``header``, ``dimension``, ``range`` or ``axiom``.
    """

    def __init__(self, code: str, message: str, report=None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.report = report


def parse_table(doc: str, verify: bool = True) -> TomonoidTable:
    lines = [ln.strip() for ln in doc.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("header", "empty document")
    m = HEADER.match(lines[0])
    if not m:
        raise ParseError("header", f"expected 'tomonoid v1 n=<size>', got {lines[0]!r}")
    n = int(m.group(1))
    if n < 1:
        raise ParseError("dimension", "size must be positive")
    body = lines[1:]
    if len(body) != n:
        raise ParseError("dimension", f"expected {n} rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body):
        try:
            row = [int(x) for x in ln.split()]
        except ValueError:
            raise ParseError("range", f"row {i} holds a non-integer entry: {ln!r}") from None
        if len(row) != n:
            raise ParseError("dimension", f"row {i} has {len(row)} entries, expected {n}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise ParseError("range", f"entry ({i},{j}) = {x} outside 0..{n - 1}")
        rows.append(row)
    t = TomonoidTable.from_rows(rows)
    if verify:
        report = verify_table(t)
        if not report.ok:
            rows_hit = sorted({v.witness[0] for v in report.violations})
            raise ParseError("axiom", f"not a tomonoid (rows {rows_hit})\n{report.format()}", report)
    return t


def format_table(t: TomonoidTable) -> str:
    width = len(str(t.n - 1))
    out = [f"tomonoid v1 n={t.n}"]
    out += [" ".join(str(x).rjust(width) for x in row) for row in t.table]
    return "\n".join(out) + "\n"


def record_to_dict(rec: GenRecord) -> dict:
    return {
        "n": rec.n,
        "table": rec.table.to_lists(),
        "parent": rec.parent_id,
        "pair": list(rec.pair) if rec.pair is not None else None,
        "choice": list(rec.choice) if rec.choice is not None else None,
        "flags": {"commutative": rec.flags.commutative, "archimedean": rec.flags.archimedean},
    }


def record_to_json(rec: GenRecord) -> str:
    return json.dumps(record_to_dict(rec), separators=(",", ":"))


def record_from_json(line: str) -> GenRecord:
    d = json.loads(line)
    t = TomonoidTable.from_rows(d["table"])
    if t.n != d["n"]:
        raise ParseError("dimension", f"record says n={d['n']} but table has {t.n} rows")
    return GenRecord(
        table=t,
        parent_id=d.get("parent"),
        pair=IdempotentPair(*d["pair"]) if d.get("pair") is not None else None,
        choice=tuple(d["choice"]) if d.get("choice") is not None else None,
        flags=Flags(d["flags"]["commutative"], d["flags"]["archimedean"]),
    )
