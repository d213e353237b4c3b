"""``tabula`` command line.

Exit status: 0 success or rule holds, 1 well-formed negative verdict,
2 input or usage error.  Verdicts go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .core import format_value, parse_value
from .forest import (Forest, ForestError, Strategy, encode_double_entry, encode_list_of_lists,
                     extract_sequence, is_single_tree_embeddable, build_reading, Pattern, Kind)
from .genetic import CyclicDependency, GeneticError, minimal_layering, validate_stratification
from .tff import (TRIANGLE_CENTERED, WHITESPACE_COLUMNS, TffDocument, TffError, export_delimited,
                  ingest_text_grid, read_tff, write_tff)
from .triangles import (Direction, RecurrenceRule, TriangleKind, Weight, apex, difference_triangle,
                        generate, validate_recurrence)

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(doc: TffDocument, args) -> None:
    if args.format == "delimited":
        text = export_delimited(doc.grid, args.delimiter) + "\n"
    else:
        text = write_tff(doc)
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(args.output).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc.strerror or exc}") from None


def _load(path: str) -> TffDocument:
    try:
        return read_tff(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def cmd_generate(args) -> int:
    grid = generate(TriangleKind(args.kind), args.depth)
    rows = build_reading(grid, Pattern.ROWS, Kind.SYMBOLIC, Strategy.LIST_OF_LISTS)
    _emit(TffDocument(Forest(grid, (rows,))), args)
    return OK


def _parse_sequence(tokens) -> list[Fraction]:
    values = []
    for tok in tokens:
        try:
            value = parse_value(tok)
        except ValueError:
            value = tok
        if not isinstance(value, Fraction):
            raise UsageError(f"not a rational: {tok!r}")
        values.append(value)
    if not values:
        raise UsageError("empty progression")
    return values


def cmd_diff(args) -> int:
    tokens = list(args.sequence)
    if args.file:
        try:
            tokens += Path(args.file).read_text(encoding="utf-8").split()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    grid = difference_triangle(_parse_sequence(tokens))
    if args.output is not None:
        rows = build_reading(grid, Pattern.ROWS, Kind.SYMBOLIC, Strategy.LIST_OF_LISTS)
        _emit(TffDocument(Forest(grid, (rows,))), args)
    print(format_value(apex(grid)))
    return OK


def cmd_validate(args) -> int:
    doc = _load(args.file)
    direction = Direction.ABOVE if args.rule == "above" else Direction.BELOW
    rule = RecurrenceRule(direction, Weight(args.weight))
    report = validate_recurrence(doc.grid, rule)
    if report.holds:
        print(f"holds: {rule.direction.value}/{rule.weight.value}")
        return OK
    print(f"violated: {rule.direction.value}/{rule.weight.value} ({len(report.violations)} cells)")
    for v in report.violations:
        print(v)
    return NEGATIVE


def _node_name(entry) -> str:
    tree, node = entry
    return f"{tree.id}/{node.id} ({node.label})"


def cmd_readings(args) -> int:
    doc = _load(args.file)
    forest = doc.forest
    if args.action == "list":
        if not forest.trees:
            print("no readings")
        for tree in forest.trees:
            print(f"{tree.id}\t{tree.kind.value}\t{tree.strategy.value}")
            for line in tree.lines():
                print(f"  {line.label}")
        return OK
    if args.action == "extract":
        if not args.label:
            raise UsageError("extract needs a label")
        try:
            values = extract_sequence(forest, args.label)
        except ForestError as exc:
            raise UsageError(str(exc)) from None
        print(" ".join(format_value(v) for v in values))
        return OK
    ok, witness = is_single_tree_embeddable(forest)
    if ok:
        print("embeddable")
        return OK
    print("NOT embeddable")
    print(f"witness: {_node_name(witness[0])} overlaps {_node_name(witness[1])}")
    return NEGATIVE


def cmd_encode(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    grid = ingest_text_grid(text, args.mode)
    if args.strategy == Strategy.LIST_OF_LISTS.value:
        forest = encode_list_of_lists(grid.rows(), grid.orientation)
    else:
        forest = encode_double_entry(grid)
    _emit(TffDocument(forest), args)
    return OK


def cmd_strata(args) -> int:
    doc = _load(args.file)
    strats = doc.stratifications
    if args.action == "validate":
        if not strats:
            raise UsageError("no stratifications in file")
        status = OK
        for strat in strats:
            report = validate_stratification(strat, doc.layers)
            if report.consistent:
                print(f"{strat.id}: consistent")
            else:
                status = NEGATIVE
                pairs = ", ".join(f"{a}→{b}" for a, b in report.violations)
                print(f"{strat.id}: inconsistent: {pairs}")
        return status
    deps = [d for s in strats for d in s.dependencies]
    cells = [c for s in strats for c in s.cells()]
    count, assignment = minimal_layering(deps, cells)
    print(f"{count} layers")
    for cell, order in assignment.items():
        print(f"{cell}\t{order}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="output path (default: stdout)")
    out.add_argument("--format", choices=["tff", "delimited"], default="tff")
    out.add_argument("--delimiter", default=",", help="cell delimiter for --format delimited")

    parser = argparse.ArgumentParser(prog="tabula", description="Encode and check tables as forests of readings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[out], help="generate a triangle")
    p.add_argument("--kind", required=True, choices=[k.value for k in TriangleKind if k is not TriangleKind.DIFFERENCE])
    p.add_argument("--depth", required=True, type=_positive)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("diff", parents=[out], help="triangle of differences of a progression")
    p.add_argument("sequence", nargs="*", help="terms, integers or p/q")
    p.add_argument("--file", help="read whitespace-separated terms from a file")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("validate", help="check a local recurrence rule")
    p.add_argument("file")
    p.add_argument("--rule", choices=["above", "below"], default="above")
    p.add_argument("--weight", choices=[w.value for w in Weight], default=Weight.UNWEIGHTED.value)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("readings", help="list, extract or check reading trees")
    p.add_argument("file")
    p.add_argument("action", choices=["list", "extract", "check-embeddable"])
    p.add_argument("label", nargs="?")
    p.set_defaults(func=cmd_readings)

    p = sub.add_parser("encode", parents=[out], help="encode a text table as a forest")
    p.add_argument("file")
    p.add_argument("--mode", choices=[WHITESPACE_COLUMNS, TRIANGLE_CENTERED], default=WHITESPACE_COLUMNS)
    p.add_argument("--strategy", choices=[Strategy.LIST_OF_LISTS.value, Strategy.DOUBLE_ENTRY.value],
                   default=Strategy.LIST_OF_LISTS.value)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("strata", help="validate or minimise genetic layers")
    p.add_argument("file")
    p.add_argument("action", choices=["validate", "minimize"])
    p.set_defaults(func=cmd_strata)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CyclicDependency as exc:
        print(f"tabula: {exc}", file=sys.stderr)
        return USAGE
    except (UsageError, TffError, ForestError, GeneticError, ValueError) as exc:
        print(f"tabula: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
