"""Difference, arithmetic, inverse and harmonic triangles, and their local rules."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Sequence

from .core import Cell, Grid, Orientation, Position, cell_id, format_value, rank, rationals


class TriangleKind(str, Enum):
    ARITHMETIC = "arithmetic"
    INVERSE = "inverse"
    HARMONIC = "harmonic"
    DIFFERENCE = "difference"


class Direction(str, Enum):
    ABOVE = "sum-of-two-above"
    BELOW = "sum-of-two-below"


class Weight(str, Enum):
    UNWEIGHTED = "unweighted"
    RANK_RATIO = "rank-ratio"


@dataclass(frozen=True)
class RecurrenceRule:
    direction: Direction = Direction.ABOVE
    weight: Weight = Weight.UNWEIGHTED

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        object.__setattr__(self, "weight", Weight(self.weight))


PASCAL_RULE = RecurrenceRule(Direction.ABOVE, Weight.UNWEIGHTED)
HARMONIC_RULE = RecurrenceRule(Direction.BELOW, Weight.UNWEIGHTED)
INVERSE_RULE = RecurrenceRule(Direction.BELOW, Weight.RANK_RATIO)


@dataclass(frozen=True)
class TriangleSpec:
    kind: TriangleKind
    depth: int
    ratio: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TriangleKind(self.kind))
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


@dataclass(frozen=True)
class Violation:
    pos: Position
    expected: Fraction
    found: Fraction

    def __str__(self):
        return f"({self.pos.row},{self.pos.col}) expected {format_value(self.expected)} found {format_value(self.found)}"


@dataclass(frozen=True)
class RecurrenceReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.holds


def _triangle(depth: int, value) -> Grid:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    cells = tuple(
        Cell(cell_id(n, k), Position(n, k), value(n, k))
        for n in range(depth)
        for k in range(n + 1)
    )
    return Grid(cells, Orientation.APEX_UP)


def arithmetic_triangle(depth: int) -> Grid:
    return _triangle(depth, lambda n, k: Fraction(comb(n, k)))


def inverse_triangle(depth: int) -> Grid:
    return _triangle(depth, lambda n, k: Fraction(1, comb(n, k)))


def harmonic_triangle(depth: int) -> Grid:
    return _triangle(depth, lambda n, k: Fraction(1, rank(n) * comb(n, k)))


def generate(spec: TriangleSpec | TriangleKind | str, depth: int | None = None) -> Grid:
    if not isinstance(spec, TriangleSpec):
        spec = TriangleSpec(TriangleKind(spec), depth)
    if spec.kind is TriangleKind.DIFFERENCE:
        raise ValueError("difference triangles are built from a progression, see difference_triangle")
    return {
        TriangleKind.ARITHMETIC: arithmetic_triangle,
        TriangleKind.INVERSE: inverse_triangle,
        TriangleKind.HARMONIC: harmonic_triangle,
    }[spec.kind](spec.depth)


def difference_rows(base: Sequence) -> list[list[Fraction]]:
    row = rationals(base)
    if not row:
        raise ValueError("empty progression")
    rows = [row]
    while len(row) > 1:
        row = [b - a for a, b in zip(row, row[1:])]
        rows.append(row)
    return rows


def difference_triangle(base: Sequence) -> Grid:
    """Triangle of successive differences, stored base first.

    Row 0 holds the progression, row ``d`` the ``d``-th differences, and the
    last row the single apex.  Rendered with the base at the bottom.
    """
    rows = difference_rows(base)
    cells = tuple(
        Cell(cell_id(d, k), Position(d, k), v)
        for d, row in enumerate(rows)
        for k, v in enumerate(row)
    )
    # a single-term progression is both apex and base
    return Grid(cells, Orientation.APEX_DOWN)


def apex(triangle: Grid) -> Fraction:
    return triangle[triangle.n_rows - 1, 0]


def anti_difference(triangle: Grid) -> list[Fraction]:
    """Rebuild the progression from the left edge of a difference triangle.

    The left edge holds ``base[0]`` and the leading term of every difference
    row; summing back up the edge recovers the base, which must agree with the
    stored bottom row.
    """
    lengths = triangle.row_lengths()
    n = len(lengths)
    if n == 0 or lengths != list(range(n, 0, -1)) or not triangle.is_numeric():
        raise ValueError("not a difference triangle")
    # edge[d] is the first entry of row d; rebuild row d from row d+1 bottom-up
    row = [triangle[n - 1, 0]]
    for d in range(n - 2, -1, -1):
        rebuilt = [triangle[d, 0]]
        for diff in row:
            rebuilt.append(rebuilt[-1] + diff)
        row = rebuilt
    if row != triangle.row(0):
        raise ValueError("not a difference triangle")
    return row


def reverse_rule(rule: RecurrenceRule) -> RecurrenceRule:
    flipped = Direction.BELOW if rule.direction is Direction.ABOVE else Direction.ABOVE
    return RecurrenceRule(flipped, rule.weight)


def validate_recurrence(triangle: Grid, rule: RecurrenceRule) -> RecurrenceReport:
    """Check every cell that has the neighbours ``rule`` needs.

    Edge cells are exempt from sum-of-two-above; sum-of-two-below skips the
    last row.  Rank-ratio weighting multiplies the neighbour sum by
    rank(row checked) / rank(neighbour row).
    """
    lengths = triangle.row_lengths()
    if lengths != list(range(1, len(lengths) + 1)):
        raise ValueError("not a triangle: row n must hold n+1 cells")
    for cell in triangle.cells:
        if not cell.is_numeric:
            raise ValueError(f"non-numeric cell {cell.id} at {tuple(cell.pos)}")

    depth = len(lengths)
    violations = []
    for n in range(depth):
        if rule.direction is Direction.ABOVE:
            if n == 0:
                continue
            src = n - 1
            pairs = [(k, triangle[src, k - 1] + triangle[src, k]) for k in range(1, n)]
        else:
            if n == depth - 1:
                continue
            src = n + 1
            pairs = [(k, triangle[src, k] + triangle[src, k + 1]) for k in range(n + 1)]
        for k, total in pairs:
            if rule.weight is Weight.RANK_RATIO:
                total = total * Fraction(rank(n), rank(src))
            found = triangle[n, k]
            if found != total:
                violations.append(Violation(Position(n, k), total, found))
    return RecurrenceReport(tuple(violations))


def solve_reversed(edge: Sequence) -> Grid:
    """Fill the triangle whose left edge is ``edge`` and where every cell is
    the sum of the two below it."""
    edge = rationals(edge)
    if not edge:
        raise ValueError("empty edge")
    rows: list[list[Fraction]] = []
    for n, first in enumerate(edge):
        row = [first]
        for k in range(n):
            row.append(rows[n - 1][k] - row[k])
        rows.append(row)
    cells = tuple(
        Cell(cell_id(n, k), Position(n, k), v)
        for n, row in enumerate(rows)
        for k, v in enumerate(row)
    )
    return Grid(cells, Orientation.APEX_UP)
