"""
Rebuild a valid PD code from crossings whose labels were rewired.

Diagram operations (moves, mutation, connected sum) edit a list of
``DraftCrossing`` objects: labels may be any hashable, new edges get
``FreshLabels`` tokens, and crossings whose orientation is no longer known are
marked untrusted. ``retrace`` walks the strands, rotates every tuple so that
it starts at its incoming under-strand and renumbers the edges so labels
increase along each component.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from app.backend.errors import DiagramValidationError, InvalidOperationError
from app.backend.knots import conventions
from app.backend.knots.diagram import UNKNOT, PlanarDiagram

logger = logging.getLogger(__name__)


@dataclass
class DraftCrossing:
    arcs: List[Hashable]
    sign: Optional[int] = None  # set when the orientation is trusted

    @property
    def trusted(self) -> bool:
        return self.sign is not None


class FreshLabels:
    """Source of labels that cannot collide with integer PD labels."""

    def __init__(self, prefix: str = 'new'):
        self._prefix = prefix
        self._counter = itertools.count()

    def __call__(self) -> Tuple[str, int]:
        return (self._prefix, next(self._counter))


def drafts_from(d: PlanarDiagram) -> List[DraftCrossing]:
    return [DraftCrossing(list(c.arcs), c.sign) for c in d.crossings]


def retrace(drafts: Sequence[DraftCrossing], anchor: Optional[int] = None) -> Tuple[List[Tuple[int, ...]], Dict[Hashable, int]]:
    """Orient and renumber drafts.

    Returns the PD tuples and the map from draft labels to new integer labels.
    For a knot with an integer ``anchor`` (the label entering the first trusted
    crossing at slot 0), that edge keeps its label and the rest follow it.
    """
    occ: Dict[Hashable, List[Tuple[int, int]]] = {}
    for ci, draft in enumerate(drafts):
        for si, label in enumerate(draft.arcs):
            occ.setdefault(label, []).append((ci, si))
    for label, slots in occ.items():
        if len(slots) != 2:
            raise InvalidOperationError(f"edge {label!r} has {len(slots)} ends after rewiring")

    def other(label, at):
        first, second = occ[label]
        return second if first == at else first

    starts = []
    for ci, draft in enumerate(drafts):
        if draft.trusted:
            starts.extend(((ci, conventions.UNDER_IN), (ci, conventions.over_in_slot(draft.sign))))
    starts.extend((ci, si) for ci in range(len(drafts)) for si in range(4))

    under_in = [None] * len(drafts)
    over_in = [None] * len(drafts)
    visited = set()
    components: List[List[Hashable]] = []
    for ci, si in starts:
        if (ci, si) in visited:
            continue
        edges = []
        c, s = ci, si
        while (c, s) not in visited:
            out = (s + 2) % 4
            visited.update(((c, s), (c, out)))
            if s % 2:
                over_in[c] = s
            else:
                under_in[c] = s
            label = drafts[c].arcs[out]
            edges.append(label)
            c, s = other(label, (c, out))
        components.append(edges)

    numbering: Dict[Hashable, int] = {}
    if len(components) == 1 and isinstance(anchor, int):
        size = len(components[0])
        for k, label in enumerate(components[0]):
            numbering[label] = (anchor + k) % size + 1
    else:
        base = 0
        for edges in components:
            for k, label in enumerate(edges):
                numbering[label] = base + k + 1
            base += len(edges)

    tuples = []
    for ci, draft in enumerate(drafts):
        u = under_in[ci]
        if draft.trusted and u != conventions.UNDER_IN:
            raise InvalidOperationError("trusted crossing lost its orientation", crossing=ci)
        tuples.append(tuple(numbering[draft.arcs[(u + k) % 4]] for k in range(4)))
    return tuples, numbering


def anchor_of(drafts: Sequence[DraftCrossing]) -> Optional[int]:
    for draft in drafts:
        if draft.trusted:
            label = draft.arcs[conventions.UNDER_IN]
            return label if isinstance(label, int) else None
    return None


def finish(drafts: Sequence[DraftCrossing], keep_labels: bool = True) -> Tuple[PlanarDiagram, Dict[Hashable, int]]:
    """Retrace drafts into a validated diagram; raise InvalidOperationError if it is not planar."""
    if not drafts:
        return UNKNOT, {}
    tuples, numbering = retrace(drafts, anchor_of(drafts) if keep_labels else None)
    try:
        diagram = PlanarDiagram.from_tuples(tuples)
    except DiagramValidationError as exc:
        raise InvalidOperationError(f"operation produced an invalid diagram: {exc.message}") from exc
    logger.debug("retraced diagram", extra={'crossings': diagram.n, 'components': diagram.n_components})
    return diagram, numbering
