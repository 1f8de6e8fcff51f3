"""
Lee homology and the s-invariant.

The Lee complex is filtered by the quantum degree. For each level j we
measure how much of H_0 is represented by cycles supported in degrees >= j;
the two jumps of that profile are smax and smin, and s is their average.
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Dict, Optional

from sympy.polys.domains import QQ

from app.backend.algebra.linalg import kernel_basis, rank
from app.backend.errors import ConsistencyError
from app.backend.homology.cobordism import FrobeniusAlgebra
from app.backend.homology.complex import FilteredChainComplex, simplify_complex
from app.backend.homology.cube import build_cube_complex, require_connected
from app.backend.homology.scanning import scanning_complex
from app.backend.knots.diagram import PlanarDiagram

logger = logging.getLogger(__name__)

LEE_ALGEBRA = FrobeniusAlgebra(QQ, h=0, t=1)


@dataclass(frozen=True)
class SInvariantResult:
    s: int
    smin: int
    smax: int
    field: str = 'Q'
    diagnostics: Dict[str, object] = dataclasses.field(default_factory=dict, compare=False)

    @property
    def slice_genus_lower_bound(self) -> int:
        return abs(self.s) // 2


def lee_complex(d: PlanarDiagram, oracle: bool = False, size_limit: Optional[int] = None,
                threads: int = 1) -> FilteredChainComplex:
    d.require_knot('s_invariant')
    require_connected(d)
    if oracle:
        return build_cube_complex(d, LEE_ALGEBRA, threads=threads)
    return scanning_complex(d, LEE_ALGEBRA, size_limit)


def lee_homology_dimension_by_filtration(c: FilteredChainComplex) -> Dict[int, int]:
    """j -> dim of the image of H_0(F_j) in H_0, for every quantum level present in degree 0."""
    domain = c.domain
    g0 = c.generators_in_degree(0)
    g1 = c.generators_in_degree(1)
    below = c.generators_in_degree(-1)
    outgoing = c.matrix(g0, g1)
    boundaries = [[c.differential[a].get(b, domain.zero) for b in g0] for a in below]
    boundary_rank = rank(boundaries, len(g0), domain)
    levels = [c.gradings[g][1] for g in g0]
    profile: Dict[int, int] = {}
    for j in sorted(set(levels)):
        support = [k for k, level in enumerate(levels) if level >= j]
        restricted = [[row[k] for k in support] for row in outgoing]
        cycles = []
        for vector in kernel_basis(restricted, len(support), domain):
            full = [domain.zero] * len(g0)
            for position, k in enumerate(support):
                full[k] = vector[position]
            cycles.append(full)
        profile[j] = rank(cycles + boundaries, len(g0), domain) - boundary_rank
    return profile


def s_invariant(d: PlanarDiagram, oracle: bool = False, size_limit: Optional[int] = None,
                threads: int = 1) -> SInvariantResult:
    complex_ = lee_complex(d, oracle, size_limit, threads)
    complex_.check_d_squared()
    reduced = simplify_complex(complex_)
    totals = reduced.total_homology_ranks()
    if totals != {0: 2}:
        raise ConsistencyError("Lee homology of a knot must have rank 2 in degree 0", ranks=totals)
    profile = lee_homology_dimension_by_filtration(reduced)
    smax = max(j for j, dim in profile.items() if dim >= 1)
    smin = max(j for j, dim in profile.items() if dim >= 2)
    if smax - smin != 2:
        raise ConsistencyError("Lee filtration levels must differ by 2", smin=smin, smax=smax)
    result = SInvariantResult(
        s=(smax + smin) // 2,
        smin=smin,
        smax=smax,
        field='Q',
        diagnostics={
            'generators_before': complex_.size,
            'generators_after': reduced.size,
            'filtration_profile': {str(j): dim for j, dim in sorted(profile.items())},
            'method': 'cube' if oracle else 'scanning',
        },
    )
    logger.info("s-invariant", extra={'crossings': d.n, 's': result.s, 'generators': complex_.size})
    return result
