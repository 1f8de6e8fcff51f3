"""
Khovanov homology ranks over F2 or Q.
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from app.backend.algebra.laurent import BivariatePoly, LaurentPoly
from app.backend.algebra.linalg import field_domain
from app.backend.config import Config
from app.backend.homology.cobordism import FrobeniusAlgebra
from app.backend.homology.complex import FilteredChainComplex, simplify_complex
from app.backend.homology.cube import build_cube_complex, require_connected
from app.backend.homology.scanning import scanning_complex
from app.backend.knots.diagram import PlanarDiagram

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BigradedRanks:
    ranks: Dict[Tuple[int, int], int] = dataclasses.field(default_factory=dict)
    field: str = 'Q'

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def to_triples(self) -> List[Tuple[int, int, int]]:
        return [(i, j, r) for (i, j), r in sorted(self.ranks.items())]

    def to_text(self) -> str:
        return '\n'.join(f'Kh^{{{i},{j}}} = {r}' for i, j, r in self.to_triples()) or '0'


def khovanov_polynomial(ranks: BigradedRanks) -> BivariatePoly:
    """Poincare polynomial: sum of rank * u^i q^j."""
    return BivariatePoly(dict(ranks.ranks), ('u', 'q'))


def euler_characteristic(ranks: BigradedRanks) -> LaurentPoly:
    """Graded Euler characteristic sum (-1)^i rank q^j."""
    return khovanov_polynomial(ranks).specialize_first(-1)


def khovanov_complex(d: PlanarDiagram, field_name: str = 'Q', oracle: bool = False,
                     size_limit: Optional[int] = None, threads: int = 1) -> FilteredChainComplex:
    d.require_knot('khovanov_homology')
    require_connected(d)
    algebra = FrobeniusAlgebra(field_domain(field_name), h=0, t=0)
    if oracle:
        return build_cube_complex(d, algebra, threads=threads)
    return scanning_complex(d, algebra, size_limit)


def khovanov_homology(d: PlanarDiagram, field: Optional[str] = None, oracle: bool = False,
                      size_limit: Optional[int] = None, threads: int = 1) -> BigradedRanks:
    field_name = (field or Config.KH_DEFAULT_FIELD).upper()
    complex_ = khovanov_complex(d, field_name, oracle, size_limit, threads)
    complex_.check_d_squared()
    reduced = simplify_complex(complex_)
    ranks = BigradedRanks(reduced.homology_ranks(), field_name)
    logger.info("khovanov homology", extra={'crossings': d.n, 'field': field_name, 'oracle': oracle,
                                            'total_rank': ranks.total})
    return ranks
