"""
Incremental Khovanov/Lee complexes: add one crossing at a time.

After k crossings the partial complex lives over crossingless matchings of
the open edge labels. Each object is a matching with a homological and a
quantum degree; each differential entry is a dotted-cobordism morphism.
Adding a crossing tensors every object with both smoothings, delooping any
closed circles into labelled copies, and then cancels every invertible
degree-zero entry. Once all crossings are in, the matchings are empty and
the morphisms are plain field elements.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from app.backend.config import Config
from app.backend.errors import ConsistencyError, SizeLimitExceeded
from app.backend.homology.cobordism import (FrobeniusAlgebra, Morphism, add_term, compose, cycles,
                                            matching_key)
from app.backend.homology.complex import FilteredChainComplex
from app.backend.invariants.jones import sweep_order
from app.backend.knots import conventions
from app.backend.knots.diagram import PlanarDiagram

logger = logging.getLogger(__name__)

Node = Tuple[str, int]  # ('b', boundary label) or ('s', crossing slot)
Piece = Tuple[str, int]  # ('m', smallest point of a matching arc) or ('s', smoothing arc index)


@dataclass(frozen=True)
class ScanObject:
    matching: Mapping[int, int]
    degree: int
    q: int


@dataclass
class Glued:
    match: Dict[int, int]
    arcs: List[Tuple[int, int, List[Piece]]]
    loops: List[List[Piece]]


def _partner_slot(arcs_at: Sequence[int], slot: int) -> Optional[int]:
    label = arcs_at[slot]
    return next((j for j, x in enumerate(arcs_at) if x == label and j != slot), None)


def glue(matching: Mapping[int, int], arcs_at: Sequence[int], k: int, boundary: Set[int]) -> Glued:
    """Attach smoothing ``k`` of one crossing to a matching of the open labels."""
    smoothing = conventions.SMOOTHINGS[k]
    inner: Dict[Node, Node] = {('b', x): ('b', y) for x, y in matching.items()}
    for i, j in smoothing:
        inner[('s', i)] = ('s', j)
        inner[('s', j)] = ('s', i)
    junction: Dict[Node, Node] = {}
    for i, label in enumerate(arcs_at):
        if label in boundary:
            junction[('b', label)] = ('s', i)
            junction[('s', i)] = ('b', label)
        else:
            j = _partner_slot(arcs_at, i)
            if j is not None:
                junction[('s', i)] = ('s', j)

    def point_of(node: Node) -> int:
        return node[1] if node[0] == 'b' else arcs_at[node[1]]

    def piece(a: Node, b: Node) -> Piece:
        if a[0] == 'b':
            return ('m', min(a[1], b[1]))
        return ('s', next(n for n, pair in enumerate(smoothing) if a[1] in pair))

    used: Set[Node] = set()
    result = Glued({}, [], [])
    for start in sorted(n for n in inner if n not in junction):
        if start in used:
            continue
        node, pieces = start, []
        while True:
            other = inner[node]
            used.update((node, other))
            pieces.append(piece(node, other))
            if other in junction:
                node = junction[other]
                continue
            a, b = point_of(start), point_of(other)
            result.match[a] = b
            result.match[b] = a
            result.arcs.append((a, b, pieces))
            break
    for start in sorted(inner):
        if start in used:
            continue
        node, pieces = start, []
        while node not in used:
            other = inner[node]
            used.update((node, other))
            pieces.append(piece(node, other))
            node = junction[other]
        result.loops.append(pieces)
    return result


def tensor(algebra: FrobeniusAlgebra, source: Mapping[int, int], target: Mapping[int, int], key: Tuple[int, ...],
           k: int, l: int, arcs_at: Sequence[int], boundary: Set[int], g1: Glued,
           g2: Glued) -> Dict[Tuple[str, str], Morphism]:
    """Extend one morphism term (source -> target, dotted ``key``) by the crossing cobordism k -> l.

    Returns morphisms g1.match -> g2.match indexed by the labels of the
    delooped circles on both sides.
    """
    outer_b = cycles(source, target)
    ids_b = [min(c) for c in outer_b]
    in_b = {p: i for i, c in enumerate(outer_b) for p in c}
    dotted = set(key)

    slots_k = {}
    for i, j in conventions.SMOOTHINGS[k]:
        slots_k[i], slots_k[j] = j, i
    slots_l = {}
    for i, j in conventions.SMOOTHINGS[l]:
        slots_l[i], slots_l[j] = j, i
    disks = cycles(slots_k, slots_l)
    in_s = {slot: len(outer_b) + i for i, c in enumerate(disks) for slot in c}

    dots = [int(i in dotted) for i in ids_b] + [0] * len(disks)
    seams = []
    for i, label in enumerate(arcs_at):
        if label in boundary:
            seams.append((in_b[label], in_s[i]))
        else:
            j = _partner_slot(arcs_at, i)
            if j is not None and i < j:
                seams.append((in_s[i], in_s[j]))

    def piece_index(pc: Piece, smoothing: int) -> int:
        if pc[0] == 'm':
            return in_b[pc[1]]
        return in_s[conventions.SMOOTHINGS[smoothing][pc[1]][0]]

    outer = cycles(g1.match, g2.match)
    first_piece = {}
    for a, b, pieces in g1.arcs:
        first_piece[a] = first_piece[b] = pieces[0]
    boundary_pieces = ([piece_index(first_piece[c[0]], k) for c in outer]
                       + [piece_index(lp[0], k) for lp in g1.loops]
                       + [piece_index(lp[0], l) for lp in g2.loops])
    ids = [min(c) for c in outer]
    n_outer, n_in, n_out = len(outer), len(g1.loops), len(g2.loops)
    h = algebra.domain(algebra.h)

    result: Dict[Tuple[str, str], Morphism] = {}
    for bits, coeff in algebra.reduce(dots, seams, boundary_pieces):
        new_key = tuple(sorted(ids[i] for i in range(n_outer) if bits[i]))
        options = [('', '', coeff)]
        for p in range(n_in):
            dot = bits[n_outer + p]
            on_one, on_x = algebra.counit_power(dot), algebra.counit_power(dot + 1)
            options = [(s + ch, t, c * f) for s, t, c in options for ch, f in (('1', on_one), ('X', on_x)) if f]
        for p in range(n_out):
            dot = bits[n_outer + n_in + p]
            on_one = algebra.counit_power(dot + 1) - h * algebra.counit_power(dot)
            on_x = algebra.counit_power(dot)
            options = [(s, t + ch, c * f) for s, t, c in options for ch, f in (('1', on_one), ('X', on_x)) if f]
        for s, t, c in options:
            add_term(result.setdefault((s, t), {}), new_key, c, algebra.zero)
    return result


def _labellings(count: int) -> List[str]:
    return [''.join(p) for p in itertools.product('1X', repeat=count)]


class ScanningComplex:
    """Partial complex built by adding crossings one at a time."""

    def __init__(self, algebra: FrobeniusAlgebra, size_limit: Optional[int] = None):
        self.algebra = algebra
        self.size_limit = Config.KH_SIZE_LIMIT if size_limit is None else size_limit
        self.objects: Dict[int, ScanObject] = {0: ScanObject({}, 0, 0)}
        self.differential: Dict[int, Dict[int, Morphism]] = {0: {}}
        self.boundary: Set[int] = set()
        self._next_id = 1
        self.peak = 1

    def add_crossing(self, arcs_at: Sequence[int]) -> None:
        algebra = self.algebra
        objects: Dict[int, ScanObject] = {}
        differential: Dict[int, Dict[int, Morphism]] = {}
        index: Dict[Tuple[int, int, str], int] = {}
        glued: Dict[Tuple[int, int], Glued] = {}
        for i, obj in self.objects.items():
            for k in (0, 1):
                g = glue(obj.matching, arcs_at, k, self.boundary)
                glued[(i, k)] = g
                for labels in _labellings(len(g.loops)):
                    q = obj.q + k + labels.count('1') - labels.count('X')
                    objects[self._next_id] = ScanObject(g.match, obj.degree + k, q)
                    differential[self._next_id] = {}
                    index[(i, k, labels)] = self._next_id
                    self._next_id += 1
        if len(objects) > self.size_limit:
            raise SizeLimitExceeded('scanning complex', len(objects), self.size_limit)

        def put(src: int, tgt: int, morphism: Morphism, scale) -> None:
            row = differential[src]
            entry = row.setdefault(tgt, {})
            for key, c in morphism.items():
                add_term(entry, key, scale * c, algebra.zero)
            if not entry:
                del row[tgt]

        for i, row in self.differential.items():
            for j, morphism in row.items():
                for k in (0, 1):
                    g1, g2 = glued[(i, k)], glued[(j, k)]
                    for key, c in morphism.items():
                        pieces = tensor(algebra, self.objects[i].matching, self.objects[j].matching, key, k, k,
                                        arcs_at, self.boundary, g1, g2)
                        for (s, t), part in pieces.items():
                            put(index[(i, k, s)], index[(j, k, t)], part, c)
        for i, obj in self.objects.items():
            sign = algebra.one if obj.degree % 2 == 0 else -algebra.one
            pieces = tensor(algebra, obj.matching, obj.matching, (), 0, 1, arcs_at, self.boundary,
                            glued[(i, 0)], glued[(i, 1)])
            for (s, t), part in pieces.items():
                put(index[(i, 0, s)], index[(i, 1, t)], part, sign)

        for label in arcs_at:
            if label in self.boundary:
                self.boundary.discard(label)
            elif list(arcs_at).count(label) == 1:
                self.boundary.add(label)
        self.objects, self.differential = objects, differential
        self.peak = max(self.peak, len(objects))
        before = len(objects)
        self.cancel()
        logger.debug("scanned crossing", extra={'objects': before, 'after_cancel': len(self.objects),
                                                'open_labels': len(self.boundary)})

    def cancel(self) -> int:
        """Cancel invertible scalar entries between equal matchings and equal q."""
        algebra = self.algebra
        objects, d = self.objects, self.differential
        incoming: Dict[int, Set[int]] = {i: set() for i in objects}
        for s, row in d.items():
            for t in row:
                incoming[t].add(s)
        keys = {i: matching_key(o.matching) for i, o in objects.items()}
        pending = deque(objects)
        queued = set(pending)
        cancelled = 0
        while pending:
            x = pending.popleft()
            queued.discard(x)
            if x not in d:
                continue
            y = next((j for j, m in d[x].items()
                      if objects[j].q == objects[x].q and keys[j] == keys[x] and len(m) == 1 and () in m), None)
            if y is None:
                continue
            inverse = algebra.domain.revert(d[x][y][()])
            middle = objects[x].matching
            for z in list(incoming[y]):
                if z == x:
                    continue
                zy = d[z][y]
                for w, xw in d[x].items():
                    if w == y:
                        continue
                    composite = compose(algebra, zy, objects[z].matching, middle, xw, objects[w].matching)
                    entry = d[z].setdefault(w, {})
                    for key, c in composite.items():
                        add_term(entry, key, -inverse * c, algebra.zero)
                    if entry:
                        incoming[w].add(z)
                    else:
                        del d[z][w]
                        incoming[w].discard(z)
                if z not in queued:
                    pending.append(z)
                    queued.add(z)
            for gone in (x, y):
                for t in d[gone]:
                    incoming[t].discard(gone)
                for s in incoming[gone]:
                    d[s].pop(gone, None)
                del d[gone], incoming[gone], objects[gone], keys[gone]
            cancelled += 1
        return cancelled

    def to_complex(self, n_plus: int, n_minus: int) -> FilteredChainComplex:
        if self.boundary:
            raise ConsistencyError("scanning finished with open edges", open_labels=sorted(self.boundary))
        result = FilteredChainComplex(self.algebra.domain)
        for i, obj in self.objects.items():
            result.add_generator(i, *conventions.khovanov_grading(obj.degree, obj.q, n_plus, n_minus))
        for s, row in self.differential.items():
            for t, morphism in row.items():
                if set(morphism) - {()}:
                    raise ConsistencyError("closed morphism still carries dotted cycles", source=s, target=t)
                result.add_entry(s, t, morphism[()])
        return result


def scanning_complex(d: PlanarDiagram, algebra: FrobeniusAlgebra,
                     size_limit: Optional[int] = None) -> FilteredChainComplex:
    """Reduced Khovanov (h = t = 0) or Lee (h = 0, t = 1) complex of a diagram."""
    if d.is_unknot_value:
        result = FilteredChainComplex(algebra.domain)
        result.add_generator(0, 0, 1)
        result.add_generator(1, 0, -1)
        return result
    tuples = d.tuples
    scanner = ScanningComplex(algebra, size_limit)
    for index in sweep_order(tuples):
        scanner.add_crossing(tuples[index])
    logger.info("scanning complete", extra={'crossings': d.n, 'generators': len(scanner.objects),
                                            'peak_objects': scanner.peak})
    return scanner.to_complex(d.n_plus, d.n_minus)
