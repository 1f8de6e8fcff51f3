"""
The cube of resolutions and the full-cube Khovanov/Lee complex.

Vertex v in {0,1}^n smooths crossing k with the A-smoothing when v[k] = 0
and the B-smoothing when v[k] = 1. Building the full complex is exponential
and serves as the oracle for the scanning algorithm.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Dict, Optional, Tuple

from app.backend.config import Config
from app.backend.errors import ConsistencyError, InvalidOperationError, SizeLimitExceeded
from app.backend.homology.cobordism import FrobeniusAlgebra
from app.backend.homology.complex import FilteredChainComplex
from app.backend.knots import conventions
from app.backend.knots.diagram import PlanarDiagram

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeVertex:
    bits: Tuple[int, ...]
    circle_of: Dict[int, int]  # edge label -> circle id (smallest label on the circle)

    @property
    def circles(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.circle_of.values())))

    @property
    def n_circles(self) -> int:
        return len(set(self.circle_of.values()))

    @property
    def degree(self) -> int:
        return sum(self.bits)


@dataclass(frozen=True)
class CubeEdge:
    source: Tuple[int, ...]
    target: Tuple[int, ...]
    crossing: int
    kind: str  # 'merge' or 'split'
    before: Tuple[int, ...]
    after: Tuple[int, ...]

    @property
    def sign(self) -> int:
        return -1 if sum(self.source[:self.crossing]) % 2 else 1


@dataclass(frozen=True)
class ResolutionCube:
    n: int
    vertices: Dict[Tuple[int, ...], CubeVertex]
    edges: Tuple[CubeEdge, ...]

    @property
    def generator_count(self) -> int:
        return sum(2 ** v.n_circles for v in self.vertices.values())


def resolve(tuples, bits) -> Dict[int, int]:
    """Circle id of every edge label in one resolution."""
    labels = range(1, 2 * len(tuples) + 1)
    parent = {label: label for label in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arcs, bit in zip(tuples, bits):
        for i, j in conventions.SMOOTHINGS[bit]:
            a, b = find(arcs[i]), find(arcs[j])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {label: find(label) for label in labels}


def require_connected(d: PlanarDiagram) -> None:
    if d.crossings and d.diagram_pieces > 1:
        raise InvalidOperationError("diagram has disjoint pieces; connect or separate them first",
                                    pieces=d.diagram_pieces)


def cube_of_resolutions(d: PlanarDiagram, size_limit: Optional[int] = None, threads: int = 1) -> ResolutionCube:
    d.require_knot('cube_of_resolutions')
    require_connected(d)
    limit = Config.KH_SIZE_LIMIT if size_limit is None else size_limit
    n = d.n
    if 2 ** n > limit:
        raise SizeLimitExceeded('cube of resolutions', 2 ** n, limit)
    tuples = d.tuples
    all_bits = list(itertools.product((0, 1), repeat=n))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            maps = list(pool.map(partial(resolve, tuples), all_bits))
    else:
        maps = [resolve(tuples, bits) for bits in all_bits]
    vertices = {bits: CubeVertex(bits, circle_of) for bits, circle_of in zip(all_bits, maps)}
    if not n:
        vertices = {(): CubeVertex((), {0: 0})}  # the bare circle

    edges = []
    for bits, vertex in vertices.items():
        for k in range(n):
            if bits[k]:
                continue
            target_bits = bits[:k] + (1,) + bits[k + 1:]
            target = vertices[target_bits]
            before = tuple(sorted({vertex.circle_of[label] for label in tuples[k]}))
            after = tuple(sorted({target.circle_of[label] for label in tuples[k]}))
            if len(before) + len(after) != 3:
                raise ConsistencyError("cube edge does not change the circle count by one", crossing=k)
            edges.append(CubeEdge(bits, target_bits, k, 'merge' if len(before) == 2 else 'split', before, after))
    cube = ResolutionCube(n, vertices, tuple(edges))
    if cube.generator_count > limit:
        raise SizeLimitExceeded('cube of resolutions', cube.generator_count, limit)
    return cube


def _circle_map(source: CubeVertex, target: CubeVertex) -> Dict[int, int]:
    """Untouched circles of ``source`` -> their id in ``target``."""
    mapping = {}
    for label, circle in source.circle_of.items():
        mapping.setdefault(circle, target.circle_of[label])
    return mapping


def _edge_map(algebra: FrobeniusAlgebra, edge: CubeEdge, source: CubeVertex, target: CubeVertex,
              labelling: Dict[int, int]):
    """Image of one labelled circle set (circle id -> 0 for 1, 1 for X) along a cube edge."""
    zero, one = algebra.zero, algebra.one
    carried = _circle_map(source, target)
    rest = {carried[c]: bit for c, bit in labelling.items() if c not in edge.before}
    results = []
    if edge.kind == 'merge':
        x = sum(labelling[c] for c in edge.before)
        # X^x in A as (1, X) coordinates
        value = (one, zero)
        for _ in range(x):
            value = algebra.times_x(value)
        (merged,) = edge.after
        for bit, coeff in ((0, value[0]), (1, value[1])):
            if coeff:
                results.append(({**rest, merged: bit}, coeff))
    else:
        (circle,) = edge.before
        first, second = edge.after
        value = (zero, one) if labelling[circle] else (one, zero)
        for bits, coeff in algebra.expand(value, 2).items():
            if coeff:
                results.append(({**rest, first: bits[0], second: bits[1]}, coeff))
    return results


def build_cube_complex(d: PlanarDiagram, algebra: FrobeniusAlgebra, max_crossings: Optional[int] = None,
                       threads: int = 1) -> FilteredChainComplex:
    """Full Khovanov (or Lee) complex with gradings already shifted to (i, j)."""
    limit = Config.ORACLE_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.n > limit:
        raise SizeLimitExceeded('full cube complex', 2 ** d.n, 2 ** limit)
    complex_ = FilteredChainComplex(algebra.domain)
    n_plus, n_minus = d.n_plus, d.n_minus
    if d.is_unknot_value:
        for key, bit in enumerate((0, 1)):
            complex_.add_generator(key, 0, 1 - 2 * bit, label=((), {1: bit}))
        return complex_
    cube = cube_of_resolutions(d, threads=threads)

    index: Dict[Tuple[Tuple[int, ...], Tuple[Tuple[int, int], ...]], int] = {}
    for bits, vertex in cube.vertices.items():
        circles = vertex.circles
        for labels in itertools.product((0, 1), repeat=len(circles)):
            labelling = dict(zip(circles, labels))
            q = vertex.degree + labels.count(0) - labels.count(1)
            key = len(index)
            index[(bits, tuple(sorted(labelling.items())))] = key
            i, j = conventions.khovanov_grading(vertex.degree, q, n_plus, n_minus)
            complex_.add_generator(key, i, j, label=(bits, labelling))

    for edge in cube.edges:
        source, target = cube.vertices[edge.source], cube.vertices[edge.target]
        sign = algebra.domain(edge.sign)
        circles = source.circles
        for labels in itertools.product((0, 1), repeat=len(circles)):
            labelling = dict(zip(circles, labels))
            src = index[(edge.source, tuple(sorted(labelling.items())))]
            for image, coeff in _edge_map(algebra, edge, source, target, labelling):
                tgt = index[(edge.target, tuple(sorted(image.items())))]
                complex_.add_entry(src, tgt, sign * coeff)
    complex_.check_d_squared()
    logger.debug("built cube complex", extra={'crossings': d.n, 'generators': complex_.size})
    return complex_
