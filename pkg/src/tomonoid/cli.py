"""Command-line interface.

Machine output goes to stdout and diagnostics to stderr.  Exit status is 0
on success, 1 when a table violates an axiom or a pair is obstructed, and 2
on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager
from typing import IO, Iterator, Sequence

from .chain import IdempotentPair, TomonoidTable, is_archimedean, is_commutative, rees_quotient, verify_table
from .coextend import Filter, GenRecord, coextensions, coextensions_for_pair
from .errors import ObstructedError, OracleCapError, TomonoidError
from .formats import ParseError, format_table, parse_table, record_to_json
from .generator import CountReport, tally, brute_force, generate
from .ramification import class_poset, ramify
from .render import render

log = logging.getLogger("tomonoid")

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> TomonoidTable:
    return parse_table(_read(path))


@contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _filter(args) -> Filter:
    return Filter(args.commutative, args.archimedean)


def cmd_verify(args) -> int:
    try:
        t = parse_table(_read(args.file), verify=False)
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    report = verify_table(t)
    print(report.format())
    if report.ok:
        print(f"commutative: {'yes' if is_commutative(t) else 'no'}")
        print(f"archimedean: {'yes' if is_archimedean(t) else 'no'}")
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_quotient(args) -> int:
    t = _load(args.file)
    sys.stdout.write(format_table(rees_quotient(t, args.q)))
    return EXIT_OK


def _fmt_cells(cells) -> str:
    return " ".join(f"({a},{b})" for a, b in sorted(cells))


def cmd_ramify(args) -> int:
    t = _load(args.file)
    pair = IdempotentPair(args.el, args.er)
    r = ramify(t, pair, args.commutative, args.archimedean)
    if args.dot:
        if r.obstructed:
            log.error("obstructed: no class order to export")
            return EXIT_FINDING
        dag = class_poset(r)
        print("digraph classes {")
        for u in dag.nodes:
            mark = " zero" if u == dag.zero_node else " atom" if u == dag.atom_node else ""
            label = "+".join(map(str, dag.members[u])) + mark
            print(f'  n{u} [label="{label}"];')
        for u, v in sorted(dag.edges):
            print(f"  n{u} -> n{v};")
        print("}")
        return EXIT_OK
    modes = [m for m, on in (("commutative", r.commutative_mode), ("archimedean", r.archimedean_mode)) if on]
    print(f"ramification n={r.n} pair=({pair.e_l},{pair.e_r}) modes={','.join(modes) or 'general'}")
    print(f"obstructed: {'yes' if r.obstructed else 'no'}")
    for k, cells in r.cosupport_classes().items():
        tags = []
        if k == r.zero_class:
            tags.append("zero")
        if k == r.atom_class:
            tags.append("atom")
        tag = f" [{','.join(tags)}]" if tags else ""
        print(f"class {k}{tag}: {_fmt_cells(cells)}")
    if r.obstructed:
        log.error("the ramification identifies (1,0) with (1,atom): no one-element coextension "
                  "exists for pair (%d,%d)", pair.e_l, pair.e_r)
        return EXIT_FINDING
    return EXIT_OK


def cmd_extend(args) -> int:
    t = _load(args.file)
    if (args.el is None) != (args.er is None):
        raise UsageError("--el and --er must be given together")
    if args.el is not None and args.all_pairs:
        raise UsageError("--all-pairs excludes --el/--er")
    if args.el is None and not (args.all_pairs or args.commutative or args.archimedean):
        raise UsageError("choose a pair with --el/--er, or pass --all-pairs")
    emitted = 0
    if args.el is not None:
        pair = IdempotentPair(args.el, args.er)
        try:
            records = list(coextensions_for_pair(t, pair, args.commutative, args.archimedean))
        except ObstructedError:
            log.error("pair (%d,%d) is obstructed: the ramification identifies (1,0) with (1,atom), "
                      "so there is no one-element coextension", pair.e_l, pair.e_r)
            return EXIT_FINDING
    else:
        records = list(coextensions(t, _filter(args)))
    for rec in records:
        print(record_to_json(rec))
        emitted += 1
    log.info("%d coextension(s)", emitted)
    return EXIT_OK if emitted else EXIT_FINDING


def cmd_generate(args) -> int:
    seed = _load(args.seed_file) if args.seed_file else None
    stream = generate(args.max_size, _filter(args), jobs=args.jobs, seed=seed)
    with _output(args.out) as out:
        if args.count_only:
            by_size: dict[int, list] = {}
            for rec in stream:
                by_size.setdefault(rec.n, []).append(rec.table)
            out.write(CountReport({k: tally(v) for k, v in by_size.items()}).format() + "\n")
        else:
            for rec in stream:
                out.write(record_to_json(rec) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    tables = brute_force(args.size, _filter(args))
    if args.count_only:
        print(sum(1 for _ in tables))
    else:
        for t in tables:
            print(record_to_json(GenRecord(t)))
    return EXIT_OK


def cmd_render(args) -> int:
    t = _load(args.file)
    with _output(args.out) as out:
        out.write(render(t, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress diagnostics on stderr")

    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--commutative", action="store_true")
    flags.add_argument("--archimedean", action="store_true")

    p = argparse.ArgumentParser(prog="tomo", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check a table file against the tomonoid axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("quotient", parents=[common], help="Rees quotient by an element")
    s.add_argument("file")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("ramify", parents=[common, flags], help="list the cosupport classes of a ramification")
    s.add_argument("file")
    s.add_argument("--el", type=int, required=True)
    s.add_argument("--er", type=int, required=True)
    s.add_argument("--dot", action="store_true", help="emit the class order as DOT instead")
    s.set_defaults(func=cmd_ramify)

    s = sub.add_parser("extend", parents=[common, flags], help="one-element coextensions as record lines")
    s.add_argument("file")
    s.add_argument("--el", type=int)
    s.add_argument("--er", type=int)
    s.add_argument("--all-pairs", action="store_true")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("generate", parents=[common, flags], help="all tomonoids up to a size")
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--seed-file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("oracle", parents=[common, flags], help="brute-force enumeration of one size")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("render", parents=[common], help="draw the level sets of a table")
    s.add_argument("file")
    s.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.WARNING if getattr(args, "quiet", False) else logging.INFO,
        format="%(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return args.func(args)
    except ParseError as e:
        log.error("%s", e)
        return EXIT_FINDING if e.code == "axiom" else EXIT_USAGE
    except (UsageError, OracleCapError) as e:
        log.error("%s", e)
        return EXIT_USAGE
    except TomonoidError as e:
        log.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
