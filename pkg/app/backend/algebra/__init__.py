from app.backend.algebra.laurent import (BivariatePoly, LaurentPoly, add, degree_span, evaluate,
                                        invert_variable, mul, negate, normalize_up_to_units,
                                        parse_laurent)
from app.backend.algebra.linalg import (FIELDS, bareiss_determinant, field_domain, kernel_basis, rank,
                                        rank_mod_p, smith_invariants)

__all__ = [
    'BivariatePoly', 'LaurentPoly', 'add', 'degree_span', 'evaluate', 'invert_variable', 'mul', 'negate',
    'normalize_up_to_units', 'parse_laurent', 'FIELDS', 'bareiss_determinant', 'field_domain',
    'kernel_basis', 'rank', 'rank_mod_p', 'smith_invariants',
]
