"""
Khovanov homology, the Lee deformation and the s-invariant.
"""

from .cobordism import FrobeniusAlgebra
from .complex import FilteredChainComplex, simplify_complex
from .cube import CubeEdge, CubeVertex, ResolutionCube, build_cube_complex, cube_of_resolutions
from .khovanov import BigradedRanks, euler_characteristic, khovanov_complex, khovanov_homology, khovanov_polynomial
from .lee import SInvariantResult, lee_complex, lee_homology_dimension_by_filtration, s_invariant
from .scanning import scanning_complex

__all__ = [
    'FrobeniusAlgebra', 'FilteredChainComplex', 'simplify_complex', 'CubeEdge', 'CubeVertex', 'ResolutionCube',
    'build_cube_complex', 'cube_of_resolutions', 'BigradedRanks', 'euler_characteristic', 'khovanov_complex',
    'khovanov_homology', 'khovanov_polynomial', 'SInvariantResult', 'lee_complex',
    'lee_homology_dimension_by_filtration', 's_invariant', 'scanning_complex',
]
