"""Historical tables as a grid of cells plus a forest of overlapping readings."""

from .core import (Cell, Grid, Orientation, Position, Rational, grid_equal, grid_from_rows,
                   grid_from_segments, make_rational, rank)
from .forest import (Endpoint, Forest, Kind, Leaf, Link, Node, Pattern, ReadingTree, Relation, Strategy,
                     add_link, build_reading, encode_double_entry, encode_list_of_lists, extract_sequence,
                     is_single_tree_embeddable, render)
from .genetic import (Layer, Stratification, minimal_layering, support_alternatives,
                      validate_stratification)
from .triangles import (Direction, RecurrenceRule, TriangleKind, TriangleSpec, Weight, anti_difference,
                        arithmetic_triangle, difference_triangle, harmonic_triangle, inverse_triangle,
                        reverse_rule, solve_reversed, validate_recurrence)
from .tff import TffDocument, export_delimited, ingest_text_grid, parse_tff, write_tff

__version__ = "0.1.0"
