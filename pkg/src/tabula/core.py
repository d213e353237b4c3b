"""Cells, grids and exact values shared by every reading of a table."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence, Union

Rational = Fraction
Value = Union[Fraction, str]


def make_rational(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def format_value(value: Value, *, integers_bare: bool = True) -> str:
    """Render a cell value as text; rationals as ``p/q`` (``p`` when ``q == 1``)."""
    if isinstance(value, str):
        return value
    if integers_bare and value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_value(token: str) -> Value:
    """Integers and ``p/q`` become rationals, anything else stays a symbolic token."""
    try:
        return Fraction(token) if _looks_rational(token) else token
    except ZeroDivisionError:
        raise ValueError(f"division by zero in token {token!r}") from None


def _looks_rational(token: str) -> bool:
    head, sep, tail = token.partition("/")
    if head[:1] in "+-":
        head = head[1:]
    if not head.isdigit() or not head.isascii():
        return False
    return not sep or (tail.isdigit() and tail.isascii())


class Orientation(str, Enum):
    RECTANGULAR = "rectangular"
    APEX_UP = "triangle-apex-up"
    APEX_DOWN = "triangle-apex-down"

    @property
    def is_triangle(self) -> bool:
        return self is not Orientation.RECTANGULAR


class Position(NamedTuple):
    row: int
    col: int


def rank(pos: Position | int) -> int:
    """1-based rank of a row."""
    row = pos if isinstance(pos, int) else pos.row
    return row + 1


@dataclass(frozen=True)
class Cell:
    id: str
    pos: Position
    value: Value
    layer: str | None = None

    def __post_init__(self):
        if not isinstance(self.pos, Position):
            object.__setattr__(self, "pos", Position(*self.pos))
        if isinstance(self.value, int):
            object.__setattr__(self, "value", Fraction(self.value))
        if not isinstance(self.value, (Fraction, str)):
            raise TypeError(f"cell {self.id}: value must be a rational or a token")
        if self.pos.row < 0 or self.pos.col < 0:
            raise ValueError(f"cell {self.id}: negative position {tuple(self.pos)}")

    @property
    def is_numeric(self) -> bool:
        return isinstance(self.value, Fraction)


@dataclass(frozen=True)
class Grid:
    """A set of positioned cells.

    Triangle grids hold ``k + 1`` cells in the row sitting ``k`` rows from the
    apex.  For ``APEX_UP`` row 0 is the apex; for ``APEX_DOWN`` row 0 is the
    widest row (the base) and rows shrink by one towards the apex.
    Rectangular grids may be ragged but every row is filled from column 0.
    """

    cells: tuple[Cell, ...]
    orientation: Orientation = Orientation.RECTANGULAR
    comment: str = ""
    _by_pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        by_pos: dict[Position, Cell] = {}
        ids: set[str] = set()
        for cell in self.cells:
            if cell.pos in by_pos:
                raise ValueError(f"cells {by_pos[cell.pos].id} and {cell.id} share position {tuple(cell.pos)}")
            if cell.id in ids:
                raise ValueError(f"duplicate cell id {cell.id}")
            by_pos[cell.pos] = cell
            ids.add(cell.id)
        object.__setattr__(self, "_by_pos", by_pos)
        self._check_shape()

    def _check_shape(self) -> None:
        lengths = self.row_lengths()
        for row, length in enumerate(lengths):
            if length == 0:
                raise ValueError(f"row {row} is empty")
            if any(Position(row, c) not in self._by_pos for c in range(length)):
                raise ValueError(f"row {row} has a gap")
        if self.orientation is Orientation.APEX_UP:
            expected = [r + 1 for r in range(len(lengths))]
        elif self.orientation is Orientation.APEX_DOWN:
            expected = list(range(len(lengths), 0, -1))
        else:
            return
        if lengths != expected:
            raise ValueError(f"{self.orientation.value} grid has row lengths {lengths}, expected {expected}")

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __contains__(self, pos) -> bool:
        return Position(*pos) in self._by_pos

    def __getitem__(self, pos) -> Value:
        return self._by_pos[Position(*pos)].value

    def cell_at(self, row: int, col: int) -> Cell | None:
        return self._by_pos.get(Position(row, col))

    def cell_by_id(self, cell_id: str) -> Cell:
        for cell in self.cells:
            if cell.id == cell_id:
                return cell
        raise KeyError(cell_id)

    @property
    def n_rows(self) -> int:
        return 1 + max((c.pos.row for c in self.cells), default=-1)

    def row_lengths(self) -> list[int]:
        lengths = [0] * self.n_rows
        for cell in self.cells:
            lengths[cell.pos.row] = max(lengths[cell.pos.row], cell.pos.col + 1)
        return lengths

    def row(self, r: int) -> list[Value]:
        return [self._by_pos[Position(r, c)].value for c in range(self.row_lengths()[r])]

    def rows(self) -> list[list[Value]]:
        return [self.row(r) for r in range(self.n_rows)]

    def as_map(self) -> dict[Position, Value]:
        return {cell.pos: cell.value for cell in self.cells}

    def is_numeric(self) -> bool:
        return all(cell.is_numeric for cell in self.cells)


def cell_id(row: int, col: int) -> str:
    return f"r{row}c{col}"


def infer_orientation(lengths: Sequence[int]) -> Orientation:
    n = len(lengths)
    if n > 1 and list(lengths) == list(range(1, n + 1)):
        return Orientation.APEX_UP
    if n > 1 and list(lengths) == list(range(n, 0, -1)):
        return Orientation.APEX_DOWN
    return Orientation.RECTANGULAR


def grid_from_rows(rows: Sequence[Sequence[Value]], orientation: Orientation | str | None = None,
                   comment: str = "") -> Grid:
    """Lay out ``rows`` left-aligned from row 0, guessing the orientation from row lengths."""
    if not rows or any(len(r) == 0 for r in rows):
        raise ValueError("rows must be non-empty")
    if orientation is None:
        orientation = infer_orientation([len(r) for r in rows])
    cells = [
        Cell(cell_id(r, c), Position(r, c), v if isinstance(v, (Fraction, str)) else Fraction(v))
        for r, row in enumerate(rows)
        for c, v in enumerate(row)
    ]
    return Grid(tuple(cells), Orientation(orientation), comment)


def grid_from_segments(horizontal: Sequence[str], vertical: Sequence[str],
                       combine: Callable[[str, str], str] = lambda v, h: v + h) -> Grid:
    """Sweep the vertical segment along the horizontal one.

    Row ``r`` is ``combine(vertical[r], h)`` for each ``h`` of the horizontal segment.
    """
    if not horizontal or not vertical:
        raise ValueError("empty segment")
    rows = [[str(combine(v, h)) for h in horizontal] for v in vertical]
    return grid_from_rows(rows, Orientation.RECTANGULAR)


def grid_equal(a: Grid, b: Grid) -> bool:
    """Same orientation and same position-to-value map; ids and layers are ignored."""
    return a.orientation is b.orientation and a.as_map() == b.as_map()


def map_values(grid: Grid, fn: Callable[[Cell], Value]) -> Grid:
    cells = [Cell(c.id, c.pos, fn(c), c.layer) for c in grid.cells]
    return Grid(tuple(cells), grid.orientation, grid.comment)


def rationals(values: Iterable) -> list[Fraction]:
    return [v if isinstance(v, Fraction) else Fraction(v) for v in values]
