"""Genetic layers: which cells were written before which."""

from __future__ import annotations

from dataclasses import dataclass, replace
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

from .forest import Forest


class GeneticError(ValueError):
    pass


class CyclicDependency(GeneticError):
    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        super().__init__("cyclic dependency: " + "→".join(self.cycle))


@dataclass(frozen=True)
class Layer:
    id: str
    order: int
    evidence: str = ""
    # distinct layers may share an order only when all of them are simultaneous
    simultaneous: bool = False

    def __post_init__(self):
        if self.order < 0:
            raise GeneticError(f"layer {self.id}: negative order")


@dataclass(frozen=True)
class Stratification:
    id: str
    assignment: tuple[tuple[str, str], ...] = ()
    dependencies: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        assignment = self.assignment.items() if isinstance(self.assignment, dict) else self.assignment
        object.__setattr__(self, "assignment", tuple(tuple(a) for a in assignment))
        object.__setattr__(self, "dependencies", tuple(tuple(d) for d in self.dependencies))
        cells = [c for c, _ in self.assignment]
        if len(cells) != len(set(cells)):
            raise GeneticError(f"stratification {self.id}: cell assigned twice")
        domain = set(cells)
        for a, b in self.dependencies:
            for c in (a, b):
                if c not in domain:
                    raise GeneticError(f"stratification {self.id}: dependency on unassigned cell {c}")

    def layer_of(self, cell: str) -> str:
        return dict(self.assignment)[cell]

    def cells(self) -> list[str]:
        return [c for c, _ in self.assignment]


@dataclass(frozen=True)
class StrataReport:
    violations: tuple[tuple[str, str], ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


def check_layers(layers: Iterable[Layer]) -> dict[str, Layer]:
    by_id: dict[str, Layer] = {}
    by_order: dict[int, list[Layer]] = {}
    for layer in layers:
        if layer.id in by_id:
            raise GeneticError(f"duplicate layer id {layer.id}")
        by_id[layer.id] = layer
        by_order.setdefault(layer.order, []).append(layer)
    for order, group in by_order.items():
        if len(group) > 1 and not all(l.simultaneous for l in group):
            raise GeneticError(f"layers {', '.join(l.id for l in group)} share order {order} without being simultaneous")
    return by_id


def validate_stratification(strat: Stratification, layers: Iterable[Layer]) -> StrataReport:
    by_id = check_layers(layers)
    order = {}
    for cell, layer_id in strat.assignment:
        if layer_id not in by_id:
            raise GeneticError(f"unknown layer {layer_id}")
        order[cell] = by_id[layer_id].order
    bad = tuple((a, b) for a, b in strat.dependencies if not order[a] < order[b])
    return StrataReport(bad)


def minimal_layering(dependencies: Iterable[tuple[str, str]], cells: Iterable[str] = ()):
    """Fewest layers compatible with ``dependencies``.

    Each cell goes to the layer given by the longest dependency chain ending
    at it; that uses ``1 + longest path`` layers, which no consistent
    assignment can beat.  Returns ``(layer_count, {cell: order})``.
    """
    preds: dict[str, list[str]] = {c: [] for c in cells}
    for a, b in dependencies:
        preds.setdefault(a, [])
        preds.setdefault(b, []).append(a)
    sorter = TopologicalSorter(preds)
    try:
        topo = list(sorter.static_order())
    except CycleError as exc:
        raise CyclicDependency(exc.args[1]) from None
    depth: dict[str, int] = {}
    for v in topo:
        depth[v] = max((depth[p] + 1 for p in preds[v]), default=0)
    count = 1 + max(depth.values()) if depth else 0
    return count, {c: depth[c] for c in preds}


def layers_for(assignment: dict[str, int], prefix: str = "L") -> tuple[list[Layer], Stratification]:
    """Turn a cell → order map into layers plus a stratification over them."""
    orders = sorted(set(assignment.values()))
    layers = [Layer(f"{prefix}{o}", o) for o in orders]
    strat = Stratification("minimal", tuple((c, f"{prefix}{o}") for c, o in assignment.items()))
    return layers, strat


def support_alternatives(forest: Forest, strats: Iterable[Stratification]) -> Forest:
    """Attach each stratification as a competing genetic hypothesis.

    Contradictory alternatives are kept side by side; nothing is merged.
    """
    known = {c.id for c in forest.grid.cells}
    strats = tuple(strats)
    for strat in strats:
        for cell in strat.cells():
            if cell not in known:
                raise GeneticError(f"unknown cell {cell}")
    return replace(forest, stratifications=forest.stratifications + strats)
