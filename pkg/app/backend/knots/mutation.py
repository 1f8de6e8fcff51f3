"""
Conway mutation: rotate a 4-ended tangle by 180 degrees in the projection plane.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from app.backend.errors import InvalidOperationError
from app.backend.knots.diagram import PlanarDiagram
from app.backend.knots.retrace import DraftCrossing, finish

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TangleRegion:
    """Crossings inside the mutation disk and the 4 edges leaving it, in circular order."""

    crossings: FrozenSet[int]
    boundary: Tuple[int, int, int, int]

    @classmethod
    def of(cls, crossings, boundary) -> 'TangleRegion':
        return cls(frozenset(int(c) for c in crossings), tuple(int(b) for b in boundary))


def boundary_edges(d: PlanarDiagram, crossings) -> List[int]:
    """Edges with exactly one end inside ``crossings``."""
    inside = set(crossings)
    edges = []
    for label, slots in sorted(d.occurrences.items()):
        ends = sum(1 for c, _ in slots if c in inside)
        if ends == 1:
            edges.append(label)
    return edges


def validate_region(d: PlanarDiagram, region: TangleRegion) -> None:
    bad = [c for c in region.crossings if not 0 <= c < d.n]
    if bad:
        raise InvalidOperationError(f"crossing indices {sorted(bad)} out of range")
    graph = nx.Graph()
    graph.add_nodes_from(region.crossings)
    for slots in d.occurrences.values():
        (c1, _), (c2, _) = slots
        if c1 in region.crossings and c2 in region.crossings:
            graph.add_edge(c1, c2)
    if not nx.is_connected(graph):
        raise InvalidOperationError("tangle region is disconnected")
    edges = boundary_edges(d, region.crossings)
    if len(edges) != 4 or sorted(edges) != sorted(region.boundary) or len(set(region.boundary)) != 4:
        raise InvalidOperationError(
            f"tangle region must be bounded by exactly 4 edges, found {edges}", boundary=edges)


def mutate_with_image(d: PlanarDiagram, region: TangleRegion) -> Tuple[PlanarDiagram, TangleRegion]:
    """Mutate and also return the region as it sits in the mutant (for undoing the mutation)."""
    if not region.crossings:
        return d, region
    validate_region(d, region)
    boundary = region.boundary
    rotate: Dict[int, int] = {edge: boundary[(k + 2) % 4] for k, edge in enumerate(boundary)}
    drafts = []
    for index, crossing in enumerate(d.crossings):
        if index in region.crossings:
            drafts.append(DraftCrossing([rotate.get(x, x) for x in crossing.arcs]))
        else:
            drafts.append(DraftCrossing(list(crossing.arcs), crossing.sign))
    try:
        mutant, numbering = finish(drafts)
    except InvalidOperationError as exc:
        raise InvalidOperationError(
            f"boundary edges {list(boundary)} are not in circular order around the tangle") from exc
    image = TangleRegion(region.crossings, tuple(numbering[edge] for edge in boundary))
    logger.debug("mutated tangle", extra={'crossings': sorted(region.crossings), 'boundary': list(boundary)})
    return mutant, image


def mutate(d: PlanarDiagram, region: TangleRegion) -> PlanarDiagram:
    mutant, _ = mutate_with_image(d, region)
    return mutant
