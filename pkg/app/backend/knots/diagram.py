"""
Oriented knot and link diagrams as PD codes.

A ``PlanarDiagram`` is an immutable, validated tuple of ``Crossing`` records.
The 0-crossing unknot is the designated value ``UNKNOT`` (text form ``U``),
since a PD code cannot express it.
"""

import re
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from app.backend.errors import (DiagramValidationError, InvalidOperationError, LinkNotSupportedError,
                                PDParseError)
from app.backend.knots import conventions

logger = logging.getLogger(__name__)

Slot = Tuple[int, int]  # (crossing index, slot 0..3)

_ATOM = re.compile(r'^X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$')
_ATOM_SPLIT = re.compile(r'X\[[^\]]*\]|\S+')


@dataclass(frozen=True)
class Crossing:
    """One crossing: four edge labels counterclockwise from the incoming under-strand."""

    arcs: Tuple[int, int, int, int]
    sign: int

    @property
    def over_in(self) -> int:
        return self.arcs[conventions.over_in_slot(self.sign)]

    @property
    def over_out(self) -> int:
        return self.arcs[conventions.over_out_slot(self.sign)]

    @property
    def under_in(self) -> int:
        return self.arcs[conventions.UNDER_IN]

    @property
    def under_out(self) -> int:
        return self.arcs[conventions.UNDER_OUT]

    def in_slots(self) -> Tuple[int, int]:
        return conventions.in_slots(self.sign)

    def to_text(self) -> str:
        return 'X[%d,%d,%d,%d]' % self.arcs


@dataclass(frozen=True)
class PlanarDiagram:
    """Validated oriented diagram. Build with ``from_tuples`` or ``parse_pd``."""

    crossings: Tuple[Crossing, ...] = ()
    n_components: int = 1
    component_ranges: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)

    @classmethod
    def from_tuples(cls, tuples: Iterable[Sequence[int]]) -> 'PlanarDiagram':
        tuples = [tuple(int(x) for x in t) for t in tuples]
        if not tuples:
            return UNKNOT
        signs, ranges = _validate(tuples)
        crossings = tuple(Crossing(t, s) for t, s in zip(tuples, signs))
        return cls(crossings, len(ranges), tuple(ranges))

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def is_unknot_value(self) -> bool:
        """True only for the designated 0-crossing unknot."""
        return not self.crossings

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    @property
    def signs(self) -> Tuple[int, ...]:
        return tuple(c.sign for c in self.crossings)

    @property
    def tuples(self) -> List[Tuple[int, int, int, int]]:
        return [c.arcs for c in self.crossings]

    @property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n_minus(self) -> int:
        return self.n - self.n_plus

    def labels(self) -> List[int]:
        return list(range(1, 2 * self.n + 1))

    def require_knot(self, operation: str) -> 'PlanarDiagram':
        if not self.is_knot:
            raise LinkNotSupportedError(operation, self.n_components)
        return self

    @cached_property
    def occurrences(self) -> Dict[int, Tuple[Slot, Slot]]:
        return {label: tuple(slots) for label, slots in _occurrences(self.tuples).items()}

    @cached_property
    def heads(self) -> Dict[int, Slot]:
        """Label -> slot where that edge enters a crossing."""
        result = {}
        for index, crossing in enumerate(self.crossings):
            for slot in crossing.in_slots():
                result[crossing.arcs[slot]] = (index, slot)
        return result

    @cached_property
    def tails(self) -> Dict[int, Slot]:
        """Label -> slot where that edge leaves a crossing."""
        result = {}
        for index, crossing in enumerate(self.crossings):
            for slot in crossing.in_slots():
                out = (slot + 2) % 4
                result[crossing.arcs[out]] = (index, out)
        return result

    def other_end(self, label: int, at: Slot) -> Slot:
        first, second = self.occurrences[label]
        return second if first == at else first

    def component_of(self, label: int) -> Tuple[int, int]:
        for lo, hi in self.component_ranges:
            if lo <= label <= hi:
                return lo, hi
        raise KeyError(label)

    def successor(self, label: int) -> int:
        lo, hi = self.component_of(label)
        return lo if label == hi else label + 1

    # -- derived structure -------------------------------------------------

    @cached_property
    def faces(self) -> Tuple[Tuple[Slot, ...], ...]:
        return tuple(tuple(f) for f in _faces(self.tuples))

    @cached_property
    def diagram_pieces(self) -> int:
        """Connected pieces of the underlying 4-valent graph."""
        return _pieces(self.tuples)

    def to_pd_text(self) -> str:
        if not self.crossings:
            return 'U'
        return ' '.join(c.to_text() for c in self.crossings)

    def __str__(self) -> str:
        return self.to_pd_text()


UNKNOT = PlanarDiagram((), 1, ())


def _occurrences(tuples: Sequence[Sequence]) -> Dict[object, List[Slot]]:
    occ: Dict[object, List[Slot]] = {}
    for ci, arcs in enumerate(tuples):
        for si, label in enumerate(arcs):
            occ.setdefault(label, []).append((ci, si))
    return occ


def _other(occ, label, at: Slot) -> Slot:
    first, second = occ[label]
    return second if first == at else first


def _faces(tuples: Sequence[Sequence]) -> List[List[Slot]]:
    """Faces as orbits of darts: follow the edge at a slot, then turn to the next slot."""
    occ = _occurrences(tuples)
    seen = set()
    faces = []
    for ci in range(len(tuples)):
        for si in range(4):
            if (ci, si) in seen:
                continue
            face = []
            c, s = ci, si
            while (c, s) not in seen:
                seen.add((c, s))
                face.append((c, s))
                w, t = _other(occ, tuples[c][s], (c, s))
                c, s = w, (t + 1) % 4
            faces.append(face)
    return faces


def _pieces(tuples: Sequence[Sequence]) -> int:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(tuples)))
    for slots in _occurrences(tuples).values():
        graph.add_edge(slots[0][0], slots[-1][0])
    return nx.number_connected_components(graph)


def _is_cyclic_run(labels: List[int]) -> bool:
    lo, hi = min(labels), max(labels)
    if hi - lo + 1 != len(labels):
        return False
    start = labels.index(lo)
    return all(labels[(start + k) % len(labels)] == lo + k for k in range(len(labels)))


def _validate(tuples: List[Tuple[int, ...]]) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Check labels, orientation and planarity; return signs and component label ranges."""
    n = len(tuples)
    occ = _occurrences(tuples)
    for label, slots in sorted(occ.items()):
        if not 1 <= label <= 2 * n:
            raise DiagramValidationError(f"label {label} outside 1..{2 * n}", crossing=slots[0][0], label=label)
        if len(slots) != 2:
            raise DiagramValidationError(f"label {label} appears {len(slots)} times", crossing=slots[0][0], label=label)
    for label in range(1, 2 * n + 1):
        if label not in occ:
            raise DiagramValidationError(f"label {label} is missing", label=label)

    seen = set()
    over_in = [None] * n
    ranges = []
    for ci in range(n):
        for si in range(4):
            if (ci, si) in seen:
                continue
            passages = []
            c, s = ci, si
            while (c, s) not in seen:
                out = (s + 2) % 4
                seen.update(((c, s), (c, out)))
                passages.append((c, s, out))
                c, s = _other(occ, tuples[c][out], (c, out))

            chosen = None
            for direction in (passages, [(c, out, s) for c, s, out in reversed(passages)]):
                if any(s == conventions.UNDER_OUT for _, s, _ in direction):
                    continue
                exits = [tuples[c][out] for c, _, out in direction]
                if _is_cyclic_run(exits):
                    chosen = direction, exits
                    break
            if chosen is None:
                raise DiagramValidationError("orientation inconsistency: labels do not follow the strand",
                                             crossing=ci, label=tuples[ci][si])
            direction, exits = chosen
            for c, s, _ in direction:
                if s % 2:
                    over_in[c] = s
            ranges.append((min(exits), max(exits)))

    pieces = _pieces(tuples)
    n_faces = len(_faces(tuples))
    if n_faces != n + 2 * pieces:
        raise DiagramValidationError(f"not planar: {n_faces} faces for {n} crossings")
    ranges.sort()
    return [conventions.sign_from_over_in(s) for s in over_in], ranges


def parse_pd(text: str, empty_is_unknot: bool = False) -> PlanarDiagram:
    """Parse whitespace-separated ``X[a,b,c,d]`` atoms; a leading ``U`` is the unknot."""
    tokens = _ATOM_SPLIT.findall(text or '')
    if not tokens:
        if empty_is_unknot:
            return UNKNOT
        raise PDParseError("empty PD code")
    if tokens[0] == 'U':
        if len(tokens) > 1:
            raise PDParseError("the unknot token U cannot be followed by crossings")
        return UNKNOT
    tuples = []
    for index, token in enumerate(tokens):
        match = _ATOM.match(token)
        if not match:
            raise PDParseError(f"malformed crossing {token!r}", crossing=index)
        tuples.append(tuple(int(g) for g in match.groups()))
    diagram = PlanarDiagram.from_tuples(tuples)
    logger.debug("parsed PD", extra={'crossings': diagram.n, 'components': diagram.n_components})
    return diagram


def writhe(d: PlanarDiagram) -> int:
    return sum(d.signs)


def component_count(d: PlanarDiagram) -> int:
    return d.n_components


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Switch over and under at every crossing."""
    return PlanarDiagram.from_tuples(conventions.mirror_tuple(c.arcs, c.sign) for c in d.crossings)


def crossing_change(d: PlanarDiagram, index: int) -> PlanarDiagram:
    if not 0 <= index < d.n:
        raise InvalidOperationError(f"crossing index {index} out of range 0..{d.n - 1}", index=index)
    tuples = d.tuples
    c = d.crossings[index]
    tuples[index] = conventions.mirror_tuple(c.arcs, c.sign)
    return PlanarDiagram.from_tuples(tuples)


def reverse(d: PlanarDiagram) -> PlanarDiagram:
    """Reverse every component; labels of a component lo..hi map to lo+hi-label."""
    if not d.crossings:
        return d

    def flip(label):
        lo, hi = d.component_of(label)
        return lo + hi - label

    return PlanarDiagram.from_tuples(
        tuple(flip(x) for x in (c, dd, a, b)) for a, b, c, dd in d.tuples
    )


def seifert_circles(d: PlanarDiagram) -> int:
    """Circles of the oriented smoothing."""
    if not d.crossings:
        return 1
    parent = list(range(2 * d.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        for i, j in conventions.seifert_pairs(c.sign):
            parent[find(c.arcs[i])] = find(c.arcs[j])
    return len({find(x) for x in d.labels()})
