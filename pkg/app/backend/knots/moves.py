"""
Reidemeister moves, site enumeration and greedy simplification.

Each move takes a diagram and a site object and returns a new validated
diagram. ``reidemeister_sites`` lists every site where a move applies, which
drives both ``greedy_simplify`` and the randomized move sequences used to test
invariance.
"""

import enum
import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.backend.errors import InvalidOperationError
from app.backend.knots.diagram import UNKNOT, PlanarDiagram
from app.backend.knots.retrace import DraftCrossing, FreshLabels, drafts_from, finish

logger = logging.getLogger(__name__)


class Move(str, enum.Enum):
    R1_PLUS = 'R1+'
    R1_MINUS = 'R1-'
    R2_PLUS = 'R2+'
    R2_MINUS = 'R2-'
    R3 = 'R3'


CROSSING_DELTA = {
    Move.R1_PLUS: 1,
    Move.R1_MINUS: -1,
    Move.R2_PLUS: 2,
    Move.R2_MINUS: -2,
    Move.R3: 0
}


@dataclass(frozen=True)
class R1PlusSite:
    """Add a kink of the given sign on edge ``arc``; ``under_first`` picks which passage comes first."""

    arc: int
    sign: int
    under_first: bool = True


@dataclass(frozen=True)
class R1MinusSite:
    crossing: int


@dataclass(frozen=True)
class R2PlusSite:
    """Push edge ``arc1`` over (or under) edge ``arc2`` across face ``face``."""

    face: int
    arc1: int
    arc2: int
    first_over: bool = True


@dataclass(frozen=True)
class R2MinusSite:
    first: int
    second: int


@dataclass(frozen=True)
class R3Site:
    face: int


Site = Union[R1PlusSite, R1MinusSite, R2PlusSite, R2MinusSite, R3Site]


def _splice_out(d: PlanarDiagram, removed: Sequence[int]) -> PlanarDiagram:
    """Delete crossings, joining each strand through them into one edge."""
    removed = set(removed)
    parent: Dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for index in removed:
        a, b, c, e = d.crossings[index].arcs
        parent[find(a)] = find(c)
        parent[find(b)] = find(e)

    kept = [i for i in range(d.n) if i not in removed]
    if not kept:
        return UNKNOT

    # each merged edge is named after the label entering a kept crossing
    representative: Dict[int, int] = {}
    for index in kept:
        crossing = d.crossings[index]
        for slot in crossing.in_slots():
            representative.setdefault(find(crossing.arcs[slot]), crossing.arcs[slot])
    for index in removed:
        for label in d.crossings[index].arcs:
            if find(label) not in representative:
                raise InvalidOperationError("move would leave a free loop", crossing=index)

    drafts = [DraftCrossing([representative[find(x)] for x in d.crossings[i].arcs], d.crossings[i].sign)
              for i in kept]
    diagram, _ = finish(drafts)
    return diagram


def _kink_slot(d: PlanarDiagram, index: int) -> Optional[int]:
    arcs = d.crossings[index].arcs
    for slot in range(4):
        if arcs[slot] == arcs[(slot + 1) % 4]:
            return slot
    return None


def r1_plus(d: PlanarDiagram, site: R1PlusSite) -> PlanarDiagram:
    fresh = FreshLabels()
    loop = fresh()
    if not d.crossings:
        # the unknot is a single edge whose tail and head coincide
        arc_in = arc_out = fresh()
        drafts = []
    else:
        if site.arc not in d.heads:
            raise InvalidOperationError(f"no edge labelled {site.arc}", label=site.arc)
        drafts = drafts_from(d)
        tail_c, tail_s = d.tails[site.arc]
        arc_in, arc_out = fresh(), site.arc
        drafts[tail_c].arcs[tail_s] = arc_in
    if site.sign not in (1, -1):
        raise InvalidOperationError(f"kink sign must be +1 or -1, got {site.sign}")
    if site.under_first:
        arcs = [arc_in, loop, loop, arc_out] if site.sign > 0 else [arc_in, arc_out, loop, loop]
    else:
        arcs = [loop, arc_in, arc_out, loop] if site.sign > 0 else [loop, loop, arc_out, arc_in]
    drafts.append(DraftCrossing(arcs))
    diagram, _ = finish(drafts)
    return diagram


def r1_minus(d: PlanarDiagram, site: R1MinusSite) -> PlanarDiagram:
    if not 0 <= site.crossing < d.n or _kink_slot(d, site.crossing) is None:
        raise InvalidOperationError(f"crossing {site.crossing} is not a removable kink", crossing=site.crossing)
    return _splice_out(d, [site.crossing])


def _bigons(d: PlanarDiagram) -> List[Tuple[int, int]]:
    found = []
    for face in d.faces:
        if len(face) != 2:
            continue
        (c1, s1), (c2, s2) = face
        if c1 == c2:
            continue
        l1, l2 = d.crossings[c1].arcs[s1], d.crossings[c2].arcs[s2]
        over1 = s1 % 2 == 1
        over1_far = d.crossings[c2].arcs.index(l1) % 2 == 1
        over2 = s2 % 2 == 1
        over2_far = d.crossings[c1].arcs.index(l2) % 2 == 1
        if over1 == over1_far and over2 == over2_far and over1 != over2:
            found.append((min(c1, c2), max(c1, c2)))
    return sorted(set(found))


def r2_minus(d: PlanarDiagram, site: R2MinusSite) -> PlanarDiagram:
    pair = (min(site.first, site.second), max(site.first, site.second))
    if pair not in _bigons(d):
        raise InvalidOperationError(f"crossings {pair} do not bound a removable bigon")
    return _splice_out(d, pair)


def r2_plus(d: PlanarDiagram, site: R2PlusSite) -> PlanarDiagram:
    if not d.crossings or not 0 <= site.face < len(d.faces):
        raise InvalidOperationError(f"no face {site.face}")
    face = d.faces[site.face]
    darts = {}
    for arc in (site.arc1, site.arc2):
        on_face = [(c, s) for c, s in face if d.crossings[c].arcs[s] == arc]
        if len(on_face) != 1:
            raise InvalidOperationError(f"edge {arc} does not bound face {site.face} exactly once", label=arc)
        darts[arc] = on_face[0]
    if site.arc1 == site.arc2:
        raise InvalidOperationError("R2+ needs two distinct edges")

    fresh = FreshLabels()
    drafts = drafts_from(d)
    segments = []
    for arc in (site.arc1, site.arc2):
        near = darts[arc]
        far = d.other_end(arc, near)
        if d.heads[arc] == near:
            near_label, middle, far_label = arc, fresh(), fresh()
        else:
            near_label, middle, far_label = fresh(), fresh(), arc
        drafts[near[0]].arcs[near[1]] = near_label
        drafts[far[0]].arcs[far[1]] = far_label
        segments.append((near_label, middle, far_label))
    (a1, m1, b1), (a2, m2, b2) = segments
    first = [m2, a1, b2, m1]
    second = [a2, b1, m2, m1]
    if not site.first_over:
        first = first[1:] + first[:1]
        second = second[1:] + second[:1]
    drafts.extend((DraftCrossing(first), DraftCrossing(second)))
    diagram, _ = finish(drafts)
    return diagram


class _Triangle:
    """Side bookkeeping for an R3 triangle face."""

    def __init__(self, d: PlanarDiagram, face_index: int):
        face = d.faces[face_index]
        if len(face) != 3 or len({c for c, _ in face}) != 3:
            raise InvalidOperationError(f"face {face_index} is not a triangle on three crossings")
        self.d = d
        self.sides = []
        self.slots: Dict[int, Dict[int, int]] = {c: {} for c, _ in face}
        for c, s in face:
            w, t = d.other_end(d.crossings[c].arcs[s], (c, s))
            self.sides.append((c, s, w, t))
            self.slots[c][w] = s
            self.slots[w][c] = t

    def slot(self, at: int, towards: int) -> int:
        return self.slots[at][towards]


def _r3_layout(d: PlanarDiagram, face_index: int):
    tri = _Triangle(d, face_index)
    moving = [side for side in tri.sides if side[1] % 2 == side[3] % 2]
    if not moving:
        raise InvalidOperationError(f"face {face_index} has no strand passing over or under both others")
    p1, _, p2, _ = moving[-1]
    third = next(c for c in tri.slots if c not in (p1, p2))
    a_side, z_side = tri.slot(p1, p2), tri.slot(p1, third)
    if (a_side + 1) % 4 == z_side:
        ab, ac = p1, p2
    elif (z_side + 1) % 4 == a_side:
        ab, ac = p2, p1
    else:
        raise InvalidOperationError(f"face {face_index} sides are not adjacent at crossing {p1}")
    bc = third
    for at, x, y in ((ab, ac, bc), (ac, bc, ab), (bc, ab, ac)):
        if (tri.slot(at, x) + 1) % 4 != tri.slot(at, y):
            raise InvalidOperationError(f"face {face_index} is not a consistently oriented triangle")
    return tri, ab, ac, bc


def r3(d: PlanarDiagram, site: R3Site) -> PlanarDiagram:
    if not d.crossings or not 0 <= site.face < len(d.faces):
        raise InvalidOperationError(f"no face {site.face}")
    tri, ab, ac, bc = _r3_layout(d, site.face)

    def arcs(c, s):
        return d.crossings[c].arcs[s % 4]

    s_ac_at_ab = tri.slot(ab, ac)
    s_ab_at_ac = tri.slot(ac, ab)
    s_ac_at_bc = tri.slot(bc, ac)
    q0, q1 = arcs(ab, s_ac_at_ab + 2), arcs(ab, s_ac_at_ab + 3)
    q2, q3 = arcs(ac, s_ab_at_ac + 1), arcs(ac, s_ab_at_ac + 2)
    q4, q5 = arcs(bc, s_ac_at_bc + 1), arcs(bc, s_ac_at_bc + 2)

    moving_over_ab = s_ac_at_ab % 2 == 1
    moving_over_ac = s_ab_at_ac % 2 == 1
    if moving_over_ab != moving_over_ac:
        raise InvalidOperationError(f"face {site.face} has no strand passing over or under both others")
    b_over_bc = tri.slot(bc, ab) % 2 == 1

    fresh = FreshLabels()
    x, y, z = fresh(), fresh(), fresh()
    drafts = drafts_from(d)
    drafts[ab] = DraftCrossing([y, q3, q4, x] if moving_over_ab else [x, y, q3, q4])
    drafts[ac] = DraftCrossing([z, x, q5, q0] if moving_over_ac else [q0, z, x, q5])
    drafts[bc] = DraftCrossing([q2, y, z, q1] if b_over_bc else [q1, q2, y, z])
    diagram, _ = finish(drafts)
    return diagram


_MOVES = {
    Move.R1_PLUS: r1_plus,
    Move.R1_MINUS: r1_minus,
    Move.R2_PLUS: r2_plus,
    Move.R2_MINUS: r2_minus,
    Move.R3: r3
}


def apply_reidemeister(d: PlanarDiagram, move: Union[Move, str], site: Site) -> PlanarDiagram:
    try:
        move = Move(move)
    except ValueError as exc:
        raise InvalidOperationError(f"unknown move {move!r}") from exc
    result = _MOVES[move](d, site)
    logger.debug("applied move", extra={'move': move.value, 'before': d.n, 'after': result.n})
    return result


def reidemeister_sites(d: PlanarDiagram, move: Union[Move, str]) -> List[Site]:
    """All sites for ``move``; R1+ and R2+ sites are enumerated with both sign/layer choices."""
    move = Move(move)
    if move is Move.R1_PLUS:
        arcs = d.labels() or [1]
        return [R1PlusSite(arc, sign, under_first) for arc in arcs for sign in (1, -1)
                for under_first in (True, False)]
    if move is Move.R1_MINUS:
        return [R1MinusSite(i) for i in range(d.n) if _kink_slot(d, i) is not None]
    if move is Move.R2_MINUS:
        return [R2MinusSite(i, j) for i, j in _bigons(d)]
    if move is Move.R2_PLUS:
        sites = []
        for fi, face in enumerate(d.faces):
            labels = [d.crossings[c].arcs[s] for c, s in face]
            single = [l for l in labels if labels.count(l) == 1]
            for i, l1 in enumerate(single):
                for l2 in single[i + 1:]:
                    sites.extend((R2PlusSite(fi, l1, l2, True), R2PlusSite(fi, l1, l2, False)))
        return sites
    sites = []
    for fi, face in enumerate(d.faces):
        if len(face) == 3 and len({c for c, _ in face}) == 3:
            try:
                _r3_layout(d, fi)
            except InvalidOperationError:
                continue
            sites.append(R3Site(fi))
    return sites


def greedy_simplify(d: PlanarDiagram) -> PlanarDiagram:
    """Apply R1- and R2- moves until none is left; crossing count never increases."""
    current = d
    while current.crossings:
        kinks = reidemeister_sites(current, Move.R1_MINUS)
        if kinks:
            current = r1_minus(current, kinks[0])
            continue
        bigons = reidemeister_sites(current, Move.R2_MINUS)
        applied = False
        for site in bigons:
            try:
                current = r2_minus(current, site)
            except InvalidOperationError:
                continue
            applied = True
            break
        if not applied:
            break
    if current.n < d.n:
        logger.debug("simplified diagram", extra={'before': d.n, 'after': current.n})
    return current


def random_move_sequence(d: PlanarDiagram, length: int, rng: random.Random,
                         max_crossings: Optional[int] = None) -> Tuple[PlanarDiagram, List[Tuple[Move, Site]]]:
    """Apply ``length`` random admissible moves; returns the final diagram and the history."""
    history = []
    current = d
    for _ in range(length):
        options = [Move.R1_MINUS, Move.R2_MINUS, Move.R3]
        if max_crossings is None or current.n + 2 <= max_crossings:
            options += [Move.R1_PLUS, Move.R2_PLUS]
        rng.shuffle(options)
        for move in options:
            sites = reidemeister_sites(current, move)
            if not sites:
                continue
            site = rng.choice(sites)
            try:
                current = apply_reidemeister(current, move, site)
            except InvalidOperationError:
                continue
            history.append((move, site))
            break
    return current, history
