"""Exit criteria. Every check is exact (zero tolerance); timings are wall clock.

Run ``pytest tests/test_acceptance.py`` and read the ACCEPTANCE block at the
end of the report for one PASS/FAIL line per criterion.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

from tabula.cli import main
from tabula.core import Cell, Grid, Orientation, Position, grid_equal, map_values
from tabula.forest import (build_reading, encode_double_entry, encode_list_of_lists, extract_sequence,
                           is_single_tree_embeddable, render)
from tabula.genetic import minimal_layering
from tabula.tff import parse_tff, write_tff
from tabula.triangles import (Direction, RecurrenceRule, Weight, anti_difference, arithmetic_triangle,
                              difference_triangle, harmonic_triangle, inverse_triangle, solve_reversed,
                              validate_recurrence)
from conftest import laminar_brute_force, pairwise_differences, pascal_rows, random_document
from test_genetic import fewest_orders_brute_force, longest_path_by_enumeration, random_dag

RESULTS = {}


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException as exc:
        RESULTS[number] = f"FAIL  {number:>2}. {title}: {exc}".splitlines()[0]
        raise
    RESULTS[number] = f"PASS  {number:>2}. {title}"


def cli(capsys, *argv):
    status = main([str(a) for a in argv])
    out, _ = capsys.readouterr()
    return status, out


def test_01_pascal_figure(capsys):
    with criterion(1, "generate arithmetic depth 5 reproduces the Pascal figure"):
        start = time.perf_counter()
        status, out = cli(capsys, "generate", "--kind", "arithmetic", "--depth", 5, "--format", "delimited",
                          "--delimiter", " ")
        elapsed = time.perf_counter() - start
        assert status == 0
        assert " / ".join(out.splitlines()) == "1 / 1 1 / 1 2 1 / 1 3 3 1 / 1 4 6 4 1"
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_02_inverse_figure(capsys, tmp_path):
    with criterion(2, "generate inverse depth 5, row 4 = 1/1 1/4 1/6 1/4 1/1"):
        path = tmp_path / "inv.tff.xml"
        start = time.perf_counter()
        status, _ = cli(capsys, "generate", "--kind", "inverse", "--depth", 5, "-o", path)
        elapsed = time.perf_counter() - start
        assert status == 0
        row4 = extract_sequence(parse_tff(path.read_text()).forest, "row 4")
        assert " ".join(f"{v.numerator}/{v.denominator}" for v in row4) == "1/1 1/4 1/6 1/4 1/1"
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_03_difference_triangle(capsys):
    with criterion(3, "difference triangle apex 16, inner rows, 200 anti-difference round trips"):
        assert cli(capsys, "diff", 1, 3, 9, 27, 81) == (0, "16\n")
        rows = difference_triangle([1, 3, 9, 27, 81]).rows()
        oracle = pairwise_differences([1, 3, 9, 27, 81])
        assert rows[1:4] == oracle[1:4] == [[2, 6, 18, 54], [4, 12, 36], [8, 24]]
        assert rows[4] == [16]
        rng = random.Random(3)
        for _ in range(200):
            seq = [F(rng.randint(-1000, 1000), rng.randint(1, 1000)) for _ in range(rng.randint(1, 20))]
            assert anti_difference(difference_triangle(seq)) == seq


def test_04_reversal_theorem():
    with criterion(4, "harmonic satisfies sum-below; inverse needs rank ratio; solve_reversed = harmonic (d<=12)"):
        below = RecurrenceRule(Direction.BELOW, Weight.UNWEIGHTED)
        below_rank = RecurrenceRule(Direction.BELOW, Weight.RANK_RATIO)
        start = time.perf_counter()
        for d in range(1, 13):
            assert validate_recurrence(harmonic_triangle(d), below).holds, d
            # depth 1 has no row below the apex, so no rule can fail there
            if d >= 2:
                assert not validate_recurrence(inverse_triangle(d), below).holds, d
            assert validate_recurrence(inverse_triangle(d), below_rank).holds, d
            edge = [F(1, n + 1) for n in range(d)]
            assert grid_equal(solve_reversed(edge), harmonic_triangle(d)), d
        elapsed = time.perf_counter() - start
        assert elapsed < 2.0, f"took {elapsed:.3f}s"


def test_05_rank_identity():
    with criterion(5, "harmonic = inverse with row n divided by n+1 (d<=12)"):
        for d in range(1, 13):
            scaled = map_values(inverse_triangle(d), lambda c: c.value / (c.pos.row + 1))
            assert grid_equal(harmonic_triangle(d), scaled), d


def test_06_embeddability():
    with criterion(6, "rows+columns embeddability matches brute force up to 4x4; 2x2 not embeddable"):
        for n_rows, n_cols in itertools.product(range(1, 5), repeat=2):
            cells = [Cell(f"{r}-{c}", Position(r, c), "v") for r in range(n_rows) for c in range(n_cols)]
            forest = encode_double_entry(Grid(tuple(cells), Orientation.RECTANGULAR))
            ok, witness = is_single_tree_embeddable(forest)
            assert ok == laminar_brute_force(forest), (n_rows, n_cols)
            if not ok:
                a, b = (set(w[1].leaf_cells()) for w in witness)
                assert a & b and not a <= b and not b <= a
            if (n_rows, n_cols) == (2, 2):
                assert not ok
                assert (witness[0][1].label, witness[1][1].label) == ("row 0", "col 0")


def test_07_strategy_equivalence():
    with criterion(7, "list-of-lists and direct construction render the same table (100 ragged matrices)"):
        rng = random.Random(7)
        for _ in range(100):
            lengths = [rng.randint(1, 6) for _ in range(rng.randint(1, 8))]
            rows = [[rng.choice([F(rng.randint(-9, 9), rng.randint(1, 9)), "a", "b"]) for _ in range(n)]
                    for n in lengths]
            n = len(lengths)
            if n > 1 and lengths == list(range(1, n + 1)):
                orientation = Orientation.APEX_UP
            elif n > 1 and lengths == list(range(n, 0, -1)):
                orientation = Orientation.APEX_DOWN
            else:
                orientation = Orientation.RECTANGULAR
            direct = Grid(tuple(Cell(f"x{r}_{c}", Position(r, c), v)
                                for r, row in enumerate(rows) for c, v in enumerate(row)), orientation)
            listed = encode_list_of_lists(rows)
            assert grid_equal(render(listed), direct)
            double = encode_double_entry(direct)
            assert grid_equal(render(double), direct)
            assert len(listed.trees) == 1 < len(double.trees)


def test_08_round_trip():
    with criterion(8, "500 random TFF documents survive write-parse-write byte-identically"):
        rng = random.Random(8)
        for _ in range(500):
            doc = random_document(rng)
            assert doc.grid.n_rows <= 12 and len(doc.forest.trees) <= 3
            assert len(doc.forest.links) <= 20 and len(doc.stratifications) <= 2
            first = write_tff(doc)
            second = write_tff(parse_tff(first))
            assert first == second


def test_09_parsimony():
    with criterion(9, "minimal layering equals brute-force minimum and 1 + longest path (200 DAGs)"):
        rng = random.Random(9)
        for _ in range(200):
            names, deps = random_dag(rng, max_nodes=8)
            count, _ = minimal_layering(deps, names)
            assert count == fewest_orders_brute_force(names, deps)
            assert count == 1 + longest_path_by_enumeration(names, deps)


def test_10_figurate_reading():
    with criterion(10, "diag-falling k=2 of arithmetic_triangle(6) = [1, 3, 6, 10, 15]"):
        grid = arithmetic_triangle(6)
        values = extract_sequence(build_reading(grid, "diag-falling"), "diag k=2", grid)
        oracle = [row[2] for row in pascal_rows(6)[2:]]
        assert values == oracle
        assert values == [1, 3, 6, 10, 15], f"extracted {[int(v) for v in values]}"
