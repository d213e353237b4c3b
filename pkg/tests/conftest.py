import random
from fractions import Fraction
from itertools import combinations

import pytest

from tabula.core import Cell, Grid, Orientation, Position
from tabula.forest import (Endpoint, Forest, Kind, Leaf, Link, Node, ReadingTree, Relation, Strategy,
                           build_reading, double_entry_patterns)
from tabula.genetic import Layer, Stratification
from tabula.tff import TffDocument


def pascal_rows(depth):
    """Binomial oracle by the additive rule, independent of math.comb."""
    rows = [[1]]
    while len(rows) < depth:
        prev = rows[-1]
        rows.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return rows[:depth]


def pairwise_differences(seq):
    rows = [list(seq)]
    while len(rows[-1]) > 1:
        r = rows[-1]
        rows.append([r[i + 1] - r[i] for i in range(len(r) - 1)])
    return rows


def laminar_brute_force(forest):
    """All-pairs check over every internal node of every tree."""
    sets = []
    for tree in forest.trees:
        stack = [tree.root]
        while stack:
            node = stack.pop()
            sets.append(frozenset(_leaves(node)))
            stack.extend(c for c in node.children if isinstance(c, Node))
    for a, b in combinations(sets, 2):
        if a & b and not (a <= b or b <= a):
            return False
    return True


def _leaves(node):
    for child in node.children:
        if isinstance(child, Leaf):
            yield child.cell
        else:
            yield from _leaves(child)


def random_rational(rng, span=50):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_grid(rng, max_rows=12, max_cols=8):
    shape = rng.choice(["rect", "ragged", "up", "down"])
    n_rows = rng.randint(1, max_rows)
    if shape == "up":
        lengths, orientation = [r + 1 for r in range(n_rows)], Orientation.APEX_UP
    elif shape == "down":
        lengths, orientation = list(range(n_rows, 0, -1)), Orientation.APEX_DOWN
    elif shape == "rect":
        width = rng.randint(1, max_cols)
        lengths, orientation = [width] * n_rows, Orientation.RECTANGULAR
    else:
        lengths, orientation = [rng.randint(1, max_cols) for _ in range(n_rows)], Orientation.RECTANGULAR
    cells = []
    for r, length in enumerate(lengths):
        for c in range(length):
            if rng.random() < 0.2:
                value = rng.choice(["a", "b", "c", "x y", "ε", "<&>", '"q"'])
            else:
                value = random_rational(rng)
            cells.append(Cell(f"c{len(cells)}", Position(r, c), value))
    rng.shuffle(cells)
    return Grid(tuple(cells), orientation, rng.choice(["", "Triangle de Pascal", "a & b"]))


def random_document(rng, max_trees=3, max_links=20, max_strats=2):
    grid = random_grid(rng)
    layers = [Layer(f"L{i}", i, rng.choice(["", "ink", "retouched digit"])) for i in range(rng.randint(0, 3))]
    if layers and rng.random() < 0.3:
        grid = Grid(tuple(Cell(c.id, c.pos, c.value, rng.choice([None, layers[0].id])) for c in grid.cells),
                    grid.orientation, grid.comment)
    patterns = double_entry_patterns(grid)
    trees = []
    for i in range(rng.randint(0, max_trees)):
        trees.append(build_reading(grid, rng.choice(patterns), rng.choice(list(Kind)), rng.choice(list(Strategy)),
                                   tree_id=f"t{i}"))
    forest = Forest(grid, tuple(trees))
    links = []
    if len(trees) >= 2:
        for _ in range(rng.randint(0, max_links)):
            a, b = rng.sample(trees, 2)
            na, nb = rng.choice(list(a.nodes())), rng.choice(list(b.nodes()))
            attrs = tuple((f"k{j}", rng.choice(["divide by rank", "v", ""])) for j in range(rng.randint(0, 2)))
            links.append(Link(Endpoint(a.id, na.id), Endpoint(b.id, nb.id), rng.choice(list(Relation)), attrs))
    strats = []
    if layers:
        ids = [c.id for c in grid.cells]
        for s in range(rng.randint(0, max_strats)):
            chosen = rng.sample(ids, rng.randint(0, min(4, len(ids))))
            assign = tuple((c, rng.choice(layers).id) for c in chosen)
            deps = tuple(tuple(rng.sample(chosen, 2)) for _ in range(rng.randint(0, 3))) if len(chosen) >= 2 else ()
            strats.append(Stratification(f"s{s}", assign, deps))
    forest = Forest(grid, tuple(trees), tuple(links), tuple(strats))
    return TffDocument(forest, tuple(layers))


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("ACCEPTANCE")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
