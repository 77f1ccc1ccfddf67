import json

import pytest

from tomonoid import TWO_ELEMENT, format_table, record_from_json, verify_table
from tomonoid.cli import EXIT_FINDING, EXIT_OK, EXIT_USAGE, main

from .conftest import IDEMPOTENT3, NILPOTENT3


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, t in [("two", TWO_ELEMENT), ("nil", NILPOTENT3), ("idem", IDEMPOTENT3)]:
        p = tmp_path / f"{name}.tom"
        p.write_text(format_table(t))
        out[name] = str(p)
    bad = tmp_path / "bad.tom"
    bad.write_text("tomonoid v1 n=3\n0 0 0\n0 2 1\n0 1 2\n")
    out["bad"] = str(bad)
    junk = tmp_path / "junk.tom"
    junk.write_text("tomonoid v1 n=3\n0 0\n")
    out["junk"] = str(junk)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def records(out):
    return [record_from_json(ln) for ln in out.splitlines()]


def test_verify_ok(capsys, files):
    code, out, _ = run(capsys, "verify", files["nil"])
    assert code == EXIT_OK
    assert "commutative: yes" in out and "archimedean: yes" in out


def test_verify_violation(capsys, files):
    code, out, _ = run(capsys, "verify", files["bad"])
    assert code == EXIT_FINDING
    assert "monotonicity" in out and "negativity" in out


def test_verify_malformed(capsys, files):
    assert run(capsys, "verify", files["junk"])[0] == EXIT_USAGE


def test_missing_file_and_bad_args(capsys, tmp_path):
    assert run(capsys, "verify", str(tmp_path / "nope.tom"))[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "quotient")[0] == EXIT_USAGE


def test_axiom_violation_on_load_is_finding(capsys, files):
    assert run(capsys, "render", files["bad"])[0] == EXIT_FINDING


def test_quotient(capsys, files):
    code, out, _ = run(capsys, "quotient", files["nil"], "--q", "1")
    assert code == EXIT_OK and out == format_table(TWO_ELEMENT)
    assert run(capsys, "quotient", files["nil"], "--q", "2")[0] == EXIT_USAGE


def test_ramify_listing(capsys, files):
    code, out, _ = run(capsys, "ramify", files["two"], "--el", "1", "--er", "1")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[1] == "obstructed: no"
    assert "class 0 [zero]:" in out and "class 1 [atom]: (1,2) (2,1)" in out


def test_ramify_obstructed(capsys, files):
    code, out, err = run(capsys, "ramify", files["two"], "--el", "1", "--er", "0")
    assert code == EXIT_FINDING
    assert "obstructed: yes" in out and "[zero,atom]" in out
    assert "no one-element coextension" in err


def test_ramify_dot(capsys, files):
    code, out, _ = run(capsys, "ramify", files["nil"], "--el", "2", "--er", "2", "--dot")
    assert code == EXIT_OK
    assert out.startswith("digraph classes {")
    assert "n0 -> n1;" in out and "n0 -> n4;" in out


def test_extend_identity_pair(capsys, files):
    code, out, _ = run(capsys, "extend", files["two"], "--el", "1", "--er", "1")
    assert code == EXIT_OK
    (rec,) = records(out)
    assert rec.table == NILPOTENT3 and tuple(rec.pair) == (1, 1)


def test_extend_obstructed(capsys, files):
    code, out, err = run(capsys, "extend", files["two"], "--el", "1", "--er", "0")
    assert code == EXIT_FINDING and out == ""
    assert "obstructed" in err and "no one-element coextension" in err


def test_extend_all_pairs_and_filters(capsys, files):
    code, out, _ = run(capsys, "extend", files["two"], "--all-pairs")
    assert code == EXIT_OK
    assert {r.table for r in records(out)} == {NILPOTENT3, IDEMPOTENT3}
    code, out, _ = run(capsys, "extend", files["two"], "--archimedean")
    assert [r.table for r in records(out)] == [NILPOTENT3]
    code, out, _ = run(capsys, "extend", files["idem"], "--archimedean")
    assert code == EXIT_FINDING and out == ""


def test_extend_usage(capsys, files):
    assert run(capsys, "extend", files["two"])[0] == EXIT_USAGE
    assert run(capsys, "extend", files["two"], "--el", "1")[0] == EXIT_USAGE
    assert run(capsys, "extend", files["two"], "--el", "1", "--er", "1", "--all-pairs")[0] == EXIT_USAGE


def test_generate_count_only(capsys):
    code, out, _ = run(capsys, "generate", "--max-size", "3", "--count-only")
    assert code == EXIT_OK
    rows = [ln.split() for ln in out.splitlines()[1:]]
    assert [r[:2] for r in rows] == [["1", "1"], ["2", "1"], ["3", "2"]]


def test_generate_records(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--max-size", "4")
    assert code == EXIT_OK
    recs = records(out)
    assert [r.n for r in recs].count(4) == 8
    for line in out.splitlines():
        d = json.loads(line)
        assert set(d) == {"n", "table", "parent", "pair", "choice", "flags"}
    target = tmp_path / "out.jsonl"
    assert run(capsys, "generate", "--max-size", "4", "--out", str(target))[0] == EXIT_OK
    assert target.read_text() == out
    assert all(verify_table(r.table).ok for r in recs)


def test_generate_seed_and_quiet(capsys, files):
    code, out, err = run(capsys, "generate", "--max-size", "4", "--seed-file", files["nil"], "--quiet")
    assert code == EXIT_OK and err == ""
    recs = records(out)
    assert recs[0].table == NILPOTENT3 and all(r.n == 4 for r in recs[1:])
    _, _, err = run(capsys, "generate", "--max-size", "4")
    assert "size 4" in err
    _, _, err = run(capsys, "--quiet", "generate", "--max-size", "4")
    assert err == ""


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--size", "4", "--count-only")
    assert code == EXIT_OK and out.strip() == "8"
    code, out, _ = run(capsys, "oracle", "--size", "4", "--commutative", "--count-only")
    assert out.strip() == "6"
    code, out, _ = run(capsys, "oracle", "--size", "3")
    assert {r.table for r in records(out)} == {NILPOTENT3, IDEMPOTENT3}


def test_oracle_cap(capsys, monkeypatch):
    code, _, err = run(capsys, "oracle", "--size", "7", "--count-only")
    assert code == EXIT_USAGE and "TOMO_ORACLE_CAP" in err
    monkeypatch.setenv("TOMO_ORACLE_CAP", "3")
    assert run(capsys, "oracle", "--size", "4")[0] == EXIT_USAGE


def test_render(capsys, files, tmp_path):
    code, out, _ = run(capsys, "render", files["nil"])
    assert code == EXIT_OK and out.splitlines()[0].endswith("0 a 1")
    target = tmp_path / "nil.svg"
    assert run(capsys, "render", files["nil"], "--format", "svg", "--out", str(target))[0] == EXIT_OK
    assert target.read_text().startswith("<svg")
