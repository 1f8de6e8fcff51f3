from .jones import (BracketState, bracket_states, jones_polynomial, kauffman_bracket, naive_kauffman_bracket,
                    unnormalized_jones)
from .wirtinger import (AbelianGroup, AlexanderMatrix, Relation, WirtingerPresentation, abelianization,
                        alexander_matrix, alexander_polynomial, coloring_matrix, count_s3_homomorphisms,
                        fox_colorings_count, genus_lower_bound, knot_determinant, seifert_genus_upper_bound,
                        wirtinger_presentation)

__all__ = [
    'BracketState', 'bracket_states', 'jones_polynomial', 'kauffman_bracket', 'naive_kauffman_bracket',
    'unnormalized_jones', 'AbelianGroup', 'AlexanderMatrix', 'Relation', 'WirtingerPresentation', 'abelianization',
    'alexander_matrix', 'alexander_polynomial', 'coloring_matrix', 'count_s3_homomorphisms', 'fox_colorings_count',
    'genus_lower_bound', 'knot_determinant', 'seifert_genus_upper_bound', 'wirtinger_presentation',
]
