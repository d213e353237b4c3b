"""Reading trees over a shared grid and the links between them.

A :class:`Forest` holds one grid plus any number of :class:`ReadingTree`
objects.  Each tree is one way of grouping the grid's cells (rows, columns,
diagonals, an editor's symbolic or spatial grouping).  Trees may overlap
freely; :class:`Link` objects relate nodes of different trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator, Sequence, Union

from .core import Grid, Orientation, Position, Value, grid_from_rows


class Kind(str, Enum):
    SYMBOLIC = "symbolic"
    ICONIC = "iconic"


class Strategy(str, Enum):
    LIST_OF_LISTS = "list-of-lists"
    DOUBLE_ENTRY = "double-entry"
    OTHER = "other"


class Pattern(str, Enum):
    ROWS = "rows"
    COLUMNS = "columns"
    DIAG_FALLING = "diag-falling"
    DIAG_RISING = "diag-rising"


class Relation(str, Enum):
    IDENTITY = "identity"
    GENETIC_SUCCESSION = "genetic-succession"
    OTHER = "other"


class ForestError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    cell: str


@dataclass(frozen=True)
class Node:
    id: str
    label: str
    children: tuple[Union["Node", Leaf], ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ForestError(f"node {self.id} has no children")

    def walk(self) -> Iterator["Node"]:
        """Internal nodes in pre-order, this one first."""
        yield self
        for child in self.children:
            if isinstance(child, Node):
                yield from child.walk()

    def leaf_cells(self) -> list[str]:
        out = []
        for child in self.children:
            if isinstance(child, Leaf):
                out.append(child.cell)
            else:
                out.extend(child.leaf_cells())
        return out


@dataclass(frozen=True)
class ReadingTree:
    id: str
    root: Node
    kind: Kind = Kind.SYMBOLIC
    strategy: Strategy = Strategy.OTHER

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        cells = self.root.leaf_cells()
        if len(cells) != len(set(cells)):
            raise ForestError(f"tree {self.id} reads a cell twice")
        ids = [n.id for n in self.root.walk()]
        if len(ids) != len(set(ids)):
            raise ForestError(f"tree {self.id} has duplicate node ids")

    def nodes(self) -> Iterator[Node]:
        return self.root.walk()

    def node(self, node_id: str) -> Node | None:
        return next((n for n in self.nodes() if n.id == node_id), None)

    def find(self, label: str) -> Node | None:
        return next((n for n in self.nodes() if n.label == label), None)

    def lines(self) -> list[Node]:
        """The root's internal children, i.e. the reading lines."""
        return [c for c in self.root.children if isinstance(c, Node)]


@dataclass(frozen=True)
class Endpoint:
    tree: str
    node: str


@dataclass(frozen=True)
class Link:
    source: Endpoint
    target: Endpoint
    relation: Relation = Relation.IDENTITY
    attrs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation(self.relation))
        if isinstance(self.attrs, dict):
            object.__setattr__(self, "attrs", tuple(self.attrs.items()))
        else:
            object.__setattr__(self, "attrs", tuple(tuple(a) for a in self.attrs))


@dataclass(frozen=True)
class Forest:
    grid: Grid
    trees: tuple[ReadingTree, ...] = ()
    links: tuple[Link, ...] = ()
    # genetic alternatives attached with genetic.support_alternatives
    stratifications: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        object.__setattr__(self, "links", tuple(self.links))
        object.__setattr__(self, "stratifications", tuple(self.stratifications))
        ids = [t.id for t in self.trees]
        if len(ids) != len(set(ids)):
            raise ForestError("duplicate tree id")
        known = {c.id for c in self.grid.cells}
        for tree in self.trees:
            for cid in tree.root.leaf_cells():
                if cid not in known:
                    raise ForestError(f"unknown id {cid}")

    def tree(self, tree_id: str) -> ReadingTree | None:
        return next((t for t in self.trees if t.id == tree_id), None)

    def with_tree(self, tree: ReadingTree) -> "Forest":
        return replace(self, trees=self.trees + (tree,))


def _lines(grid: Grid, pattern: Pattern) -> list[tuple[str, list[Position]]]:
    """Group positions into labelled lines, ordered by line index."""
    if pattern is Pattern.COLUMNS and grid.orientation.is_triangle:
        raise ForestError("pattern/orientation mismatch")
    groups: dict[int, list[Position]] = {}
    for pos in sorted(c.pos for c in grid.cells):
        r, c = pos
        if pattern is Pattern.ROWS:
            key = r
        elif pattern is Pattern.COLUMNS:
            key = c
        elif pattern is Pattern.DIAG_FALLING:
            key = c if grid.orientation.is_triangle else c - r
        elif grid.orientation is Orientation.APEX_UP:
            key = r - c
        else:
            key = r + c
        groups.setdefault(key, []).append(pos)
    prefix = {
        Pattern.ROWS: "row {}",
        Pattern.COLUMNS: "col {}",
        Pattern.DIAG_FALLING: "diag k={}",
        Pattern.DIAG_RISING: "antidiag k={}",
    }[pattern]
    return [(prefix.format(key), groups[key]) for key in sorted(groups)]


def build_reading(grid: Grid, pattern: Pattern | str, kind: Kind | str = Kind.SYMBOLIC,
                  strategy: Strategy | str = Strategy.DOUBLE_ENTRY, tree_id: str | None = None) -> ReadingTree:
    """Read ``grid`` along one family of lines.

    The root gets one child per line and each line lists its cells in
    reading order.  Every cell appears exactly once.
    """
    pattern = Pattern(pattern)
    if not grid.cells:
        raise ForestError("empty grid")
    lines = _lines(grid, pattern)
    children = []
    for i, (label, positions) in enumerate(lines):
        leaves = [Leaf(grid.cell_at(*p).id) for p in positions]
        children.append(Node(f"{pattern.value}-{i}", label, leaves))
    root = Node(pattern.value, pattern.value, children)
    return ReadingTree(tree_id or pattern.value, root, Kind(kind), Strategy(strategy))


def extract_sequence(forest_or_tree: Forest | ReadingTree, label: str, grid: Grid | None = None) -> list[Value]:
    """Values under the first node labelled ``label``.

    Given a forest, trees are searched in order.
    """
    if isinstance(forest_or_tree, Forest):
        grid = forest_or_tree.grid
        trees = forest_or_tree.trees
    else:
        if grid is None:
            raise TypeError("a grid is needed to read values from a bare tree")
        trees = (forest_or_tree,)
    by_id = {c.id: c.value for c in grid.cells}
    for tree in trees:
        node = tree.find(label)
        if node is not None:
            return [by_id[cid] for cid in node.leaf_cells()]
    raise ForestError(f"no such reading line: {label!r}")


def internal_nodes(forest: Forest) -> list[tuple[ReadingTree, Node]]:
    return [(tree, node) for tree in forest.trees for node in tree.nodes()]


def is_single_tree_embeddable(forest: Forest):
    """Can all groupings of all trees live in one rooted tree?

    That holds iff the leaf sets of internal nodes form a laminar family
    (any two are nested or disjoint).  Returns ``(True, None)`` or
    ``(False, (a, b))`` with ``a``, ``b`` an overlapping non-nested pair of
    ``(tree, node)`` tuples.

    Sets are visited largest first while tracking, per cell, the smallest set
    seen so far that contains it.  In a laminar family all cells of the
    current set share that owner and the owner contains the whole set.
    """
    entries = [(tree, node, frozenset(node.leaf_cells())) for tree, node in internal_nodes(forest)]
    order = sorted(range(len(entries)), key=lambda i: -len(entries[i][2]))
    owner: dict[str, int] = {}
    for i in order:
        cells = entries[i][2]
        owners = {owner.get(c) for c in cells}
        if len(owners) > 1:
            for j in sorted(o for o in owners if o is not None):
                if not cells <= entries[j][2]:
                    a, b = sorted((i, j))
                    return False, (entries[a][:2], entries[b][:2])
        for c in cells:
            owner[c] = i
    return True, None


def add_link(forest: Forest, link: Link) -> Forest:
    for end in (link.source, link.target):
        tree = forest.tree(end.tree)
        if tree is None or tree.node(end.node) is None:
            raise ForestError(f"unknown node {end.tree}/{end.node}")
    if link.relation is Relation.IDENTITY and link.source.tree == link.target.tree:
        raise ForestError("identity must cross trees")
    return replace(forest, links=forest.links + (link,))


def encode_list_of_lists(rows: Sequence[Sequence[Value]], orientation: Orientation | str | None = None) -> Forest:
    grid = grid_from_rows(rows, orientation)
    tree = build_reading(grid, Pattern.ROWS, Kind.SYMBOLIC, Strategy.LIST_OF_LISTS, tree_id="list-of-lists")
    return Forest(grid, (tree,))


def double_entry_patterns(grid: Grid) -> list[Pattern]:
    if grid.orientation.is_triangle:
        return [Pattern.ROWS, Pattern.DIAG_FALLING, Pattern.DIAG_RISING]
    return [Pattern.ROWS, Pattern.COLUMNS]


def encode_double_entry(grid: Grid) -> Forest:
    """All axis readings of ``grid`` side by side, without links.

    Rectangular grids get rows and columns; triangles get rows and both
    diagonal families, since vertical columns do not exist in a centred
    triangle.
    """
    if not grid.cells:
        raise ForestError("empty grid")
    trees = [build_reading(grid, p, Kind.SYMBOLIC, Strategy.DOUBLE_ENTRY) for p in double_entry_patterns(grid)]
    return Forest(grid, tuple(trees))


def render(forest: Forest) -> Grid:
    return forest.grid
