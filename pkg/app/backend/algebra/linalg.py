"""
Exact linear algebra helpers.

Determinants over Laurent polynomials use fraction-free Bareiss elimination.
Everything over a field (ranks, kernels) goes through sympy's ``DomainMatrix``
with ``QQ`` or ``GF(p)`` as the domain; integer normal forms use sympy's Smith
form.
"""

import logging
from typing import List, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from app.backend.algebra.laurent import LaurentPoly
from app.backend.errors import AlgebraError

logger = logging.getLogger(__name__)

FIELDS = ('Q', 'F2')


def field_domain(name: str):
    """sympy domain for a field name: ``Q``, ``F2`` or ``Fp`` for a prime p."""
    key = (name or '').upper()
    if key in ('Q', 'QQ'):
        return QQ
    if key.startswith('F') and key[1:].isdigit():
        p = int(key[1:])
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise AlgebraError(f"F{p} is not a prime field", field=name)
        return GF(p)
    raise AlgebraError(f"unknown field {name!r}", field=name)


def to_domain_matrix(rows: Sequence[Sequence[int]], ncols: int, domain) -> DomainMatrix:
    converted = [[domain(x) for x in row] for row in rows]
    return DomainMatrix(converted, (len(converted), ncols), domain)


def rank(rows: Sequence[Sequence], ncols: int, domain) -> int:
    if not rows or not ncols:
        return 0
    return to_domain_matrix(rows, ncols, domain).rank()


def rank_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> int:
    return rank(rows, ncols, GF(p))


def kernel_basis(rows: Sequence[Sequence], ncols: int, domain) -> List[list]:
    """Basis of {v : M v = 0} as a list of coordinate lists."""
    if not rows:
        return [[domain.one if i == j else domain.zero for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = to_domain_matrix(rows, ncols, domain).rref()
    table = reduced.to_list()
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        vector = [domain.zero] * ncols
        vector[free] = domain.one
        for row, col in enumerate(pivots):
            vector[col] = -table[row][free]
        basis.append(vector)
    return basis


def bareiss_determinant(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant over Z[t, t^-1] without fractions; every division is exact."""
    size = len(matrix)
    if size == 0:
        return LaurentPoly.one()
    var = matrix[0][0].var if isinstance(matrix[0][0], LaurentPoly) else 't'
    work = [[entry if isinstance(entry, LaurentPoly) else LaurentPoly.constant(entry, var) for entry in row]
            for row in matrix]
    if any(len(row) != size for row in work):
        raise AlgebraError("determinant of a non-square matrix")
    sign = 1
    previous = LaurentPoly.one(var)
    for k in range(size - 1):
        if work[k][k].is_zero():
            swap = next((r for r in range(k + 1, size) if not work[r][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(var)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]).divmod_exact(previous)
        previous = pivot
    result = work[size - 1][size - 1]
    return -result if sign < 0 else result


def smith_invariants(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[int, List[int]]:
    """Free rank and torsion coefficients (all > 1) of Z^ncols / rowspace."""
    if not rows or not ncols:
        return ncols, []
    form = smith_normal_form(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(form[i, i])) for i in range(min(form.shape))]
    nonzero = [d for d in diagonal if d]
    return ncols - len(nonzero), [d for d in nonzero if d > 1]
