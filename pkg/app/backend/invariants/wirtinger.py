"""
Knot group presentations and the invariants read off them.

One generator per over-arc, one conjugation relation per crossing. The
Alexander matrix is the Fox Jacobian of the relations under x_i -> t; Fox
colorings and the abelianization come from the same relation data.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from app.backend.algebra.laurent import LaurentPoly, degree_span, evaluate, normalize_up_to_units
from app.backend.algebra.linalg import bareiss_determinant, rank_mod_p, smith_invariants
from app.backend.config import Config
from app.backend.errors import ConsistencyError, InvalidOperationError, SizeLimitExceeded
from app.backend.knots.diagram import PlanarDiagram, seifert_circles

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Relation:
    """x_k = x_j^e x_i x_j^-e: ``i`` enters under the over-arc ``j`` and leaves as ``k``."""

    i: int
    j: int
    k: int
    e: int

    def to_text(self, names: List[str]) -> str:
        over = names[self.j]
        inverse = f'{over}^-1'
        left, right = (over, inverse) if self.e > 0 else (inverse, over)
        return f'{names[self.k]} = {left} {names[self.i]} {right}'


@dataclass(frozen=True)
class WirtingerPresentation:
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...]

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def to_text(self) -> str:
        names = list(self.generators)
        body = ', '.join(r.to_text(names) for r in self.relations)
        return f"⟨{', '.join(names)} | {body}⟩" if body else f"⟨{', '.join(names)} | ⟩"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class AlexanderMatrix:
    rows: Tuple[Tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def minor(self, row: int = 0, col: int = 0) -> LaurentPoly:
        kept = [[entry for c, entry in enumerate(r) if c != col] for i, r in enumerate(self.rows) if i != row]
        return bareiss_determinant(kept)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion: Tuple[int, ...] = field(default=())

    def is_integers(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    def to_text(self) -> str:
        parts = ['Z'] * self.free_rank + [f'Z/{d}' for d in self.torsion]
        return ' + '.join(parts) or '0'


def _arc_index(d: PlanarDiagram) -> Tuple[dict, int]:
    """Edge label -> over-arc index; edges are glued across every over-pass."""
    parent = {label: label for label in d.labels()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        parent[find(c.over_in)] = find(c.over_out)
    roots = {}
    index = {}
    for label in d.labels():
        root = find(label)
        index[label] = roots.setdefault(root, len(roots))
    return index, len(roots)


def wirtinger_presentation(d: PlanarDiagram) -> WirtingerPresentation:
    d.require_knot('wirtinger_presentation')
    if d.is_unknot_value:
        return WirtingerPresentation(('x1',), ())
    arc, n_arcs = _arc_index(d)
    relations = tuple(
        Relation(arc[c.under_in], arc[c.over_in], arc[c.under_out], c.sign) for c in d.crossings
    )
    generators = tuple(f'x{k + 1}' for k in range(n_arcs))
    return WirtingerPresentation(generators, relations)


def alexander_matrix(presentation: WirtingerPresentation) -> AlexanderMatrix:
    """Fox derivatives of each relation, negative rows scaled by t to stay polynomial."""
    n = presentation.n_generators
    t = LaurentPoly.monomial(1)
    one = LaurentPoly.one()
    rows = []
    for r in presentation.relations:
        row = [LaurentPoly.zero()] * n
        if r.e > 0:
            entries = ((r.j, one - t), (r.i, t), (r.k, -one))
        else:
            entries = ((r.j, t - one), (r.i, one), (r.k, -t))
        for col, value in entries:
            row[col] = row[col] + value
        rows.append(tuple(row))
    return AlexanderMatrix(tuple(rows))


def alexander_polynomial(d: PlanarDiagram, column: int = 0) -> LaurentPoly:
    """Normalized Alexander polynomial: lowest exponent 0, positive leading coefficient."""
    presentation = wirtinger_presentation(d)
    if not presentation.relations:
        return LaurentPoly.one()
    matrix = alexander_matrix(presentation)
    minor = matrix.minor(0, column)
    if minor.is_zero():
        raise ConsistencyError("Alexander minor vanished for a knot diagram", crossings=d.n)
    delta = normalize_up_to_units(minor)
    logger.debug("alexander polynomial", extra={'crossings': d.n, 'span': degree_span(delta)})
    return delta


def knot_determinant(d: PlanarDiagram) -> int:
    return abs(int(evaluate(alexander_polynomial(d), -1)))


def genus_lower_bound(d: PlanarDiagram) -> int:
    return degree_span(alexander_polynomial(d)) // 2


def seifert_genus_upper_bound(d: PlanarDiagram) -> int:
    """Genus of the surface produced by Seifert's algorithm."""
    d.require_knot('seifert_genus_upper_bound')
    return (d.n - seifert_circles(d) + 1) // 2


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def coloring_matrix(d: PlanarDiagram) -> Tuple[List[List[int]], int]:
    """Rows 2*over - in - out, one per crossing; columns are over-arcs."""
    if d.is_unknot_value:
        return [], 1
    arc, n_arcs = _arc_index(d)
    rows = []
    for c in d.crossings:
        row = [0] * n_arcs
        row[arc[c.over_in]] += 2
        row[arc[c.under_in]] -= 1
        row[arc[c.under_out]] -= 1
        rows.append(row)
    return rows, n_arcs


def fox_colorings_count(d: PlanarDiagram, p: int) -> int:
    """Number of Fox p-colorings, trivial ones included."""
    if not isinstance(p, int) or not _is_odd_prime(p):
        raise InvalidOperationError(f"p must be an odd prime, got {p!r}", p=p)
    rows, n_arcs = coloring_matrix(d)
    return p ** (n_arcs - rank_mod_p(rows, n_arcs, p))


def abelianization(presentation: WirtingerPresentation) -> AbelianGroup:
    n = presentation.n_generators
    rows = []
    for r in presentation.relations:
        row = [0] * n
        row[r.i] += 1
        row[r.k] -= 1
        rows.append(row)
    free_rank, torsion = smith_invariants(rows, n)
    return AbelianGroup(free_rank, tuple(torsion))


_S3 = tuple(itertools.permutations(range(3)))


def _compose(p, q):
    return tuple(p[q[x]] for x in range(3))


def _inverse(p):
    result = [0] * 3
    for x, y in enumerate(p):
        result[y] = x
    return tuple(result)


def count_s3_homomorphisms(presentation: WirtingerPresentation, max_arcs: Optional[int] = None) -> int:
    """Brute-force count of homomorphisms from the knot group to S3."""
    limit = Config.S3_HOM_MAX_ARCS if max_arcs is None else max_arcs
    n = presentation.n_generators
    if n > limit:
        raise SizeLimitExceeded('S3 homomorphism search', n, limit)
    count = 0
    for images in itertools.product(_S3, repeat=n):
        for r in presentation.relations:
            over = images[r.j] if r.e > 0 else _inverse(images[r.j])
            if _compose(_compose(over, images[r.i]), _inverse(over)) != images[r.k]:
                break
        else:
            count += 1
    return count


__all__ = [
    'Relation', 'WirtingerPresentation', 'AlexanderMatrix', 'AbelianGroup', 'wirtinger_presentation',
    'alexander_matrix', 'alexander_polynomial', 'knot_determinant', 'genus_lower_bound',
    'seifert_genus_upper_bound', 'coloring_matrix', 'fox_colorings_count', 'abelianization',
    'count_s3_homomorphisms',
]
