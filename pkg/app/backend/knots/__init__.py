"""
Planar diagram layer: PD codes, Gauss codes and diagram operations.
"""

from .diagram import (UNKNOT, Crossing, PlanarDiagram, component_count, crossing_change, mirror, parse_pd,
                      reverse, seifert_circles, writhe)
from .gauss import GaussCode, GaussVisit, parse_gauss, to_gauss_code
from .composition import connected_sum
from .mutation import TangleRegion, mutate, mutate_with_image
from .moves import (Move, R1MinusSite, R1PlusSite, R2MinusSite, R2PlusSite, R3Site, apply_reidemeister,
                    greedy_simplify, random_move_sequence, reidemeister_sites)

__all__ = [
    'UNKNOT', 'Crossing', 'PlanarDiagram', 'component_count', 'crossing_change', 'mirror', 'parse_pd',
    'reverse', 'seifert_circles', 'writhe', 'GaussCode', 'GaussVisit', 'parse_gauss', 'to_gauss_code',
    'connected_sum', 'TangleRegion', 'mutate', 'mutate_with_image', 'Move', 'R1MinusSite', 'R1PlusSite',
    'R2MinusSite', 'R2PlusSite', 'R3Site', 'apply_reidemeister', 'greedy_simplify', 'random_move_sequence',
    'reidemeister_sites'
]
