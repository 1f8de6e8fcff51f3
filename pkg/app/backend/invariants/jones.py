"""
Kauffman bracket and Jones polynomial.

``kauffman_bracket`` sweeps the crossings in a boundary-minimizing order and
keeps, per partial state, only how the open edge labels are paired up; states
with the same pairing are merged. ``naive_kauffman_bracket`` is the plain
2^n state sum kept as an oracle.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from app.backend.algebra.laurent import LaurentPoly
from app.backend.config import Config
from app.backend.errors import ConsistencyError, SizeLimitExceeded
from app.backend.knots import conventions
from app.backend.knots.diagram import PlanarDiagram, writhe

logger = logging.getLogger(__name__)

Pairing = FrozenSet[Tuple[int, int]]


@dataclass(frozen=True)
class BracketState:
    assignment: Tuple[str, ...]  # 'A' or 'B' per crossing
    circles: int

    @property
    def a_exponent(self) -> int:
        return self.assignment.count('A') - self.assignment.count('B')


def _delta(var: str = 'A') -> LaurentPoly:
    return LaurentPoly({2: -1, -2: -1}, var)


def _toggle(open_labels: set, arcs: Sequence[int]) -> Tuple[set, set]:
    """Open labels after adding one crossing, and the labels it closes.

    Parity is counted per slot: a label used twice by the same crossing (a kink) closes there.
    """
    counts = Counter(open_labels)
    counts.update(arcs)
    after = {label for label, k in counts.items() if k % 2}
    return after, set(counts) - after


def sweep_order(tuples: Sequence[Sequence[int]]) -> List[int]:
    """Greedy crossing order: next is the crossing sharing most labels with the open boundary."""
    remaining = set(range(len(tuples)))
    open_labels = set()
    order = []
    while remaining:
        best = max(sorted(remaining), key=lambda i: sum(1 for label in tuples[i] if label in open_labels))
        remaining.discard(best)
        order.append(best)
        open_labels, _ = _toggle(open_labels, tuples[best])
    return order


def _glue(pairing: Pairing, segments, closing: set) -> Tuple[Pairing, int]:
    """Join the open pairing with one smoothed crossing.

    ``closing`` is the set of labels that stop being open. Returns the new
    pairing of open labels and the number of closed loops created.
    """
    parent: Dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for x, y in segments:
        parent[find(x)] = find(y)
        touched.update((x, y))
    kept = []
    for x, y in pairing:
        if x in touched or y in touched:
            parent[find(x)] = find(y)
        else:
            kept.append((x, y))
    ends: Dict[int, List[int]] = {}
    for label in list(parent):
        root = find(label)
        ends.setdefault(root, [])
        if label not in closing:
            ends[root].append(label)
    loops = 0
    for members in ends.values():
        if not members:
            loops += 1
        else:
            kept.append(tuple(sorted(members)))
    return frozenset(kept), loops


def kauffman_bracket(d: PlanarDiagram) -> LaurentPoly:
    """Bracket in A, normalized so the 0-crossing unknot is 1."""
    if d.is_unknot_value:
        return LaurentPoly.one('A')
    tuples = d.tuples
    # pairing -> {(A-exponent, loops): coefficient}
    states: Dict[Pairing, Dict[Tuple[int, int], int]] = {frozenset(): {(0, 0): 1}}
    open_labels: set = set()
    peak = 1
    for index in sweep_order(tuples):
        arcs = tuples[index]
        after, closing = _toggle(open_labels, arcs)
        merged: Dict[Pairing, Dict[Tuple[int, int], int]] = {}
        for pairing, poly in states.items():
            for smoothing, weight in ((conventions.A_SMOOTHING, 1), (conventions.B_SMOOTHING, -1)):
                segments = [(arcs[i], arcs[j]) for i, j in smoothing]
                new_pairing, loops = _glue(pairing, segments, closing)
                target = merged.setdefault(new_pairing, {})
                for (exp, circles), coeff in poly.items():
                    key = (exp + weight, circles + loops)
                    target[key] = target.get(key, 0) + coeff
        states = merged
        open_labels = after
        peak = max(peak, len(states))
    if set(states) != {frozenset()}:
        raise ConsistencyError("bracket sweep left open edges", crossings=d.n)
    logger.debug("bracket sweep", extra={'crossings': d.n, 'peak_states': peak})
    return _collect(states[frozenset()])


def _collect(poly: Dict[Tuple[int, int], int]) -> LaurentPoly:
    result = LaurentPoly.zero('A')
    delta = _delta()
    for (exp, circles), coeff in poly.items():
        if coeff:
            result = result + LaurentPoly.monomial(exp, coeff, 'A') * delta ** (circles - 1)
    return result


def _state_matrix(n: int) -> np.ndarray:
    """Row s holds the B-smoothing bits of state s."""
    return ((np.arange(2 ** n)[:, None] >> np.arange(n)) & 1).astype(np.int8)


def _circles(tuples: Sequence[Sequence[int]], bits: Sequence[int]) -> int:
    parent = list(range(2 * len(tuples) + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arcs, bit in zip(tuples, bits):
        for i, j in conventions.SMOOTHINGS[bit]:
            parent[find(arcs[i])] = find(arcs[j])
    return len({find(x) for x in range(1, 2 * len(tuples) + 1)})


def bracket_states(d: PlanarDiagram, max_crossings: Optional[int] = None) -> List[BracketState]:
    limit = Config.BRACKET_ORACLE_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.n > limit:
        raise SizeLimitExceeded('bracket state enumeration', 2 ** d.n, 2 ** limit)
    if d.is_unknot_value:
        return [BracketState((), 1)]
    tuples = d.tuples
    return [
        BracketState(tuple('B' if bit else 'A' for bit in row), _circles(tuples, row))
        for row in _state_matrix(d.n).tolist()
    ]


def naive_kauffman_bracket(d: PlanarDiagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    poly: Dict[Tuple[int, int], int] = {}
    for state in bracket_states(d, max_crossings):
        key = (state.a_exponent, state.circles)
        poly[key] = poly.get(key, 0) + 1
    return _collect(poly)


def _normalize(bracket: LaurentPoly, w: int) -> LaurentPoly:
    sign = -1 if w % 2 else 1
    terms = {}
    for exp, coeff in bracket.terms.items():
        try:
            terms[conventions.jones_exponent(exp, w)] = sign * coeff
        except ValueError as exc:
            raise ConsistencyError(str(exc), writhe=w) from exc
    return LaurentPoly(terms, 't')


def jones_polynomial(d: PlanarDiagram, oracle: bool = False) -> LaurentPoly:
    d.require_knot('jones_polynomial')
    bracket = naive_kauffman_bracket(d) if oracle else kauffman_bracket(d)
    return _normalize(bracket, writhe(d))


def unnormalized_jones(d: PlanarDiagram, oracle: bool = False) -> LaurentPoly:
    """(q + q^-1) V(q^2); equals the graded Euler characteristic of Khovanov homology."""
    v = jones_polynomial(d, oracle=oracle).scale_exponents(2).with_var('q')
    return LaurentPoly({1: 1, -1: 1}, 'q') * v
