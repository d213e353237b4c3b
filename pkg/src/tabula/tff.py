"""Tabular Forest Format (TFF) reader/writer, plain-text ingestion and delimited export.

TFF is a small XML vocabulary::

    <tff version="1.0">
      <grid orientation="...">            <cell id row col value|token layer?/> ...
      <readings>  <tree id kind strategy> <node id label> ... <leaf cell/> </node> </tree>
      <links>     <link from-tree from-node to-tree to-node relation> <attr key value/> </link>
      <genetic>   <layer id order evidence/>  <stratification id> <assign/> <dep/> </stratification>
    </tff>

Child order is significant everywhere and is preserved.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .core import Cell, Grid, Orientation, Position, Value, cell_id, format_value, parse_value
from .forest import Endpoint, Forest, ForestError, Kind, Leaf, Link, Node, ReadingTree, Relation, Strategy
from .genetic import GeneticError, Layer, Stratification, check_layers

VERSION = "1.0"

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


class TffError(ValueError):
    pass


@dataclass(frozen=True)
class TffDocument:
    forest: Forest
    layers: tuple[Layer, ...] = ()
    version: str = VERSION

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def stratifications(self) -> tuple[Stratification, ...]:
        return self.forest.stratifications

    @property
    def grid(self) -> Grid:
        return self.forest.grid


def rational_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Strict canonical form: ``p/q`` in lowest terms with ``q > 0``, or a bare integer."""
    if not _RATIONAL.fullmatch(text) or text == "-0" or text.startswith("-0/"):
        raise TffError(f"non-canonical rational {text!r}")
    num, _, den = text.partition("/")
    p, q = int(num), int(den or 1)
    if gcd(p, q) != 1:
        raise TffError(f"non-canonical rational {text!r}")
    return Fraction(p, q)


# -- writing -----------------------------------------------------------------

def check_document(doc: TffDocument) -> None:
    """Referential integrity of a whole document; raises TffError."""
    forest = doc.forest
    try:
        layers = check_layers(doc.layers)
    except GeneticError as exc:
        raise TffError(str(exc)) from None
    cells = {c.id for c in forest.grid.cells}
    for cell in forest.grid.cells:
        if cell.layer is not None and cell.layer not in layers:
            raise TffError(f"unknown id {cell.layer}")
    for tree in forest.trees:
        for cid in tree.root.leaf_cells():
            if cid not in cells:
                raise TffError(f"unknown id {cid}")
    node_ids = {t.id: {n.id for n in t.nodes()} for t in forest.trees}
    for link in forest.links:
        for end in (link.source, link.target):
            if end.tree not in node_ids:
                raise TffError(f"unknown id {end.tree}")
            if end.node not in node_ids[end.tree]:
                raise TffError(f"unknown id {end.node}")
        if link.relation is Relation.IDENTITY and link.source.tree == link.target.tree:
            raise TffError("identity must cross trees")
    strat_ids = set()
    for strat in forest.stratifications:
        if strat.id in strat_ids:
            raise TffError(f"duplicate stratification id {strat.id}")
        strat_ids.add(strat.id)
        for cid, lid in strat.assignment:
            if cid not in cells:
                raise TffError(f"unknown id {cid}")
            if lid not in layers:
                raise TffError(f"unknown id {lid}")


def _node_element(node: Node) -> ET.Element:
    el = ET.Element("node", {"id": node.id, "label": node.label})
    for child in node.children:
        if isinstance(child, Leaf):
            ET.SubElement(el, "leaf", {"cell": child.cell})
        else:
            el.append(_node_element(child))
    return el


def to_element(doc: TffDocument) -> ET.Element:
    forest = doc.forest
    root = ET.Element("tff", {"version": doc.version})

    grid_attrs = {"orientation": forest.grid.orientation.value}
    if forest.grid.comment:
        grid_attrs["comment"] = forest.grid.comment
    grid_el = ET.SubElement(root, "grid", grid_attrs)
    for cell in forest.grid.cells:
        attrs = {"id": cell.id, "row": str(cell.pos.row), "col": str(cell.pos.col)}
        if cell.is_numeric:
            attrs["value"] = rational_text(cell.value)
        else:
            attrs["token"] = cell.value
        if cell.layer is not None:
            attrs["layer"] = cell.layer
        ET.SubElement(grid_el, "cell", attrs)

    readings = ET.SubElement(root, "readings")
    for tree in forest.trees:
        tree_el = ET.SubElement(readings, "tree", {"id": tree.id, "kind": tree.kind.value, "strategy": tree.strategy.value})
        tree_el.append(_node_element(tree.root))

    links = ET.SubElement(root, "links")
    for link in forest.links:
        link_el = ET.SubElement(links, "link", {
            "from-tree": link.source.tree, "from-node": link.source.node,
            "to-tree": link.target.tree, "to-node": link.target.node,
            "relation": link.relation.value,
        })
        for key, value in link.attrs:
            ET.SubElement(link_el, "attr", {"key": key, "value": value})

    genetic = ET.SubElement(root, "genetic")
    for layer in doc.layers:
        attrs = {"id": layer.id, "order": str(layer.order), "evidence": layer.evidence}
        if layer.simultaneous:
            attrs["simultaneous"] = "true"
        ET.SubElement(genetic, "layer", attrs)
    for strat in forest.stratifications:
        strat_el = ET.SubElement(genetic, "stratification", {"id": strat.id})
        for cid, lid in strat.assignment:
            ET.SubElement(strat_el, "assign", {"cell": cid, "layer": lid})
        for a, b in strat.dependencies:
            ET.SubElement(strat_el, "dep", {"earlier": a, "later": b})
    return root


def write_tff(doc: TffDocument) -> str:
    check_document(doc)
    root = to_element(doc)
    ET.indent(root, "  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


# -- parsing -----------------------------------------------------------------

def _attr(el: ET.Element, name: str) -> str:
    try:
        return el.attrib[name]
    except KeyError:
        raise TffError(f"<{el.tag}> lacks required attribute {name!r}") from None


def _int_attr(el: ET.Element, name: str) -> int:
    text = _attr(el, name)
    if not re.fullmatch(r"0|[1-9][0-9]*", text):
        raise TffError(f"<{el.tag}> attribute {name!r} is not a non-negative integer: {text!r}")
    return int(text)


def _enum_attr(el: ET.Element, name: str, enum):
    text = _attr(el, name)
    try:
        return enum(text)
    except ValueError:
        raise TffError(f"<{el.tag}> attribute {name!r} has unknown value {text!r}") from None


def _expect(el: ET.Element, tag: str) -> None:
    if el.tag != tag:
        raise TffError(f"unexpected element <{el.tag}>, expected <{tag}>")


def _parse_node(el: ET.Element) -> Node:
    _expect(el, "node")
    children = []
    for child in el:
        if child.tag == "leaf":
            children.append(Leaf(_attr(child, "cell")))
        else:
            children.append(_parse_node(child))
    if not children:
        raise TffError(f"node {_attr(el, 'id')} has no children")
    return Node(_attr(el, "id"), _attr(el, "label"), tuple(children))


def _parse_grid(el: ET.Element) -> Grid:
    cells = []
    for cel in el:
        _expect(cel, "cell")
        has_value, has_token = "value" in cel.attrib, "token" in cel.attrib
        if has_value == has_token:
            raise TffError(f"cell {cel.get('id')} needs exactly one of value/token")
        value: Value = parse_rational(cel.attrib["value"]) if has_value else cel.attrib["token"]
        cells.append(Cell(_attr(cel, "id"), Position(_int_attr(cel, "row"), _int_attr(cel, "col")),
                          value, cel.get("layer")))
    try:
        return Grid(tuple(cells), _enum_attr(el, "orientation", Orientation), el.get("comment", ""))
    except ValueError as exc:
        raise TffError(str(exc)) from None


def parse_tff(text: str | bytes) -> TffDocument:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        root = ET.fromstring(text.encode("utf-8"))
    except ET.ParseError as exc:
        line, col = exc.position
        raise TffError(f"syntax error at line {line}, column {col}") from None
    _expect(root, "tff")
    version = _attr(root, "version")
    if version != VERSION:
        raise TffError(f"unsupported TFF version {version!r}")
    sections = {child.tag: child for child in root}
    if len(sections) != len(root) or not set(sections) <= {"grid", "readings", "links", "genetic"}:
        raise TffError("<tff> must hold at most one each of grid, readings, links, genetic")
    if "grid" not in sections:
        raise TffError("missing <grid>")

    grid = _parse_grid(sections["grid"])

    trees = []
    for tel in sections.get("readings", ()):
        _expect(tel, "tree")
        if len(tel) != 1:
            raise TffError(f"tree {tel.get('id')} must have exactly one root node")
        try:
            trees.append(ReadingTree(_attr(tel, "id"), _parse_node(tel[0]),
                                     _enum_attr(tel, "kind", Kind), _enum_attr(tel, "strategy", Strategy)))
        except ForestError as exc:
            raise TffError(str(exc)) from None

    links = []
    for lel in sections.get("links", ()):
        _expect(lel, "link")
        attrs = []
        for ael in lel:
            _expect(ael, "attr")
            attrs.append((_attr(ael, "key"), _attr(ael, "value")))
        links.append(Link(Endpoint(_attr(lel, "from-tree"), _attr(lel, "from-node")),
                          Endpoint(_attr(lel, "to-tree"), _attr(lel, "to-node")),
                          _enum_attr(lel, "relation", Relation), tuple(attrs)))

    layers, strats = [], []
    for gel in sections.get("genetic", ()):
        if gel.tag == "layer":
            simultaneous = gel.get("simultaneous", "false")
            if simultaneous not in ("true", "false"):
                raise TffError(f"layer {gel.get('id')}: simultaneous must be true or false")
            layers.append(Layer(_attr(gel, "id"), _int_attr(gel, "order"), gel.get("evidence", ""),
                                simultaneous == "true"))
        elif gel.tag == "stratification":
            assign, deps = [], []
            for sel in gel:
                if sel.tag == "assign":
                    assign.append((_attr(sel, "cell"), _attr(sel, "layer")))
                elif sel.tag == "dep":
                    deps.append((_attr(sel, "earlier"), _attr(sel, "later")))
                else:
                    raise TffError(f"unexpected element <{sel.tag}> in stratification")
            try:
                strats.append(Stratification(_attr(gel, "id"), tuple(assign), tuple(deps)))
            except GeneticError as exc:
                raise TffError(str(exc)) from None
        else:
            raise TffError(f"unexpected element <{gel.tag}> in genetic")

    try:
        forest = Forest(grid, tuple(trees), tuple(links), tuple(strats))
    except ForestError as exc:
        raise TffError(str(exc)) from None
    doc = TffDocument(forest, tuple(layers), version)
    check_document(doc)
    return doc


def read_tff(path) -> TffDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_tff(fh.read())


def write_tff_file(doc: TffDocument, path) -> None:
    text = write_tff(doc)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- plain text --------------------------------------------------------------

WHITESPACE_COLUMNS = "whitespace-columns"
TRIANGLE_CENTERED = "triangle-centered"


def ingest_text_grid(text: str, mode: str = WHITESPACE_COLUMNS) -> Grid:
    """Read a table typed as text, one row per non-blank line.

    Integers and ``p/q`` tokens become rationals; other tokens stay symbolic.
    In ``triangle-centered`` mode row ``n`` must carry ``n + 1`` tokens.
    """
    lines = [line.split() for line in text.splitlines()]
    lines = [tokens for tokens in lines if tokens]
    if not lines:
        raise TffError("empty text")
    if mode == TRIANGLE_CENTERED:
        for n, tokens in enumerate(lines):
            if len(tokens) != n + 1:
                raise TffError(f"row {n}: expected {n + 1} tokens, found {len(tokens)}")
        orientation = Orientation.APEX_UP
    elif mode == WHITESPACE_COLUMNS:
        orientation = Orientation.RECTANGULAR
    else:
        raise TffError(f"unknown ingest mode {mode!r}")
    try:
        cells = tuple(
            Cell(cell_id(r, c), Position(r, c), parse_value(tok))
            for r, tokens in enumerate(lines)
            for c, tok in enumerate(tokens)
        )
    except ValueError as exc:
        raise TffError(str(exc)) from None
    return Grid(cells, orientation)


def export_delimited(grid: Grid, delimiter: str = ",") -> str:
    out = []
    for r in range(grid.n_rows):
        tokens = []
        for value in grid.row(r):
            if isinstance(value, str) and delimiter in value:
                raise TffError(f"delimiter collision in token {value!r}")
            tokens.append(format_value(value))
        out.append(delimiter.join(tokens))
    return "\n".join(out)


def bare_document(grid: Grid, trees: Sequence[ReadingTree] = ()) -> TffDocument:
    return TffDocument(Forest(grid, tuple(trees)))
