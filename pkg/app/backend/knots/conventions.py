"""
Orientation, sign, smoothing and grading conventions.

Every module that needs one of these rules imports it from here.

PD tuples
    ``X[a, b, c, d]`` lists the four edge labels counterclockwise starting
    from the incoming under-strand: ``a`` enters under, ``c`` leaves under,
    ``b`` and ``d`` carry the over-strand. Labels increase by one along each
    component (cyclically within the component's label range), so the
    orientation is read off the label succession.

    Compared with the KnotTheory package this is the mirror reading: the same
    tuple list denotes the mirror knot there. Tables copied from KnotTheory
    must therefore be passed through ``mirror`` to keep chirality.

Crossing sign
    Positive when the over-strand runs from slot 1 to slot 3 (``b -> d``),
    negative when it runs from slot 3 to slot 1. With this rule
    ``X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]`` has writhe +3 and is the right
    trefoil, and the kink ``X[1,1,2,2]`` has sign -1.

Smoothings
    The A-smoothing (Khovanov 0-resolution) joins (a, d) and (b, c); the
    B-smoothing (1-resolution) joins (a, b) and (c, d). The bracket uses
    A-weight +1 for the A-smoothing, ``delta = -A^2 - A^-2``.

Jones / Khovanov gradings
    ``V(t) = (-A^3)^(-w) <D>`` with ``A = t^(-1/4)``; the right trefoil gives
    ``-t^4 + t^3 + t``. The unnormalized Jones polynomial is
    ``(q + q^-1) V(q^2)``, the graded Euler characteristic of Khovanov homology
    with ``i = r - n_minus`` and ``j = q + n_plus - 2 n_minus``, where ``r``
    counts 1-resolutions and ``q = r + #(1-labelled circles) - #(x-labelled
    circles)``. The unknot sits at ``(0, +-1)``.

Lee deformation and s
    The Lee differential raises the quantum grading by 0 or 4, so
    ``F_j = span{q >= j}`` is a subcomplex filtration. ``s`` is the average of
    the two filtration levels of Lee homology; the right trefoil has s = +2.
"""

from typing import Sequence, Tuple

UNDER_IN = 0
UNDER_OUT = 2

A_SMOOTHING: Tuple[Tuple[int, int], Tuple[int, int]] = ((0, 3), (1, 2))
B_SMOOTHING: Tuple[Tuple[int, int], Tuple[int, int]] = ((0, 1), (2, 3))
SMOOTHINGS = (A_SMOOTHING, B_SMOOTHING)

LEE_FILTRATION_STEP = 4


def sign_from_over_in(over_in_slot: int) -> int:
    """Crossing sign given the slot (1 or 3) where the over-strand enters."""
    return 1 if over_in_slot == 1 else -1


def over_in_slot(sign: int) -> int:
    return 1 if sign > 0 else 3


def over_out_slot(sign: int) -> int:
    return 3 if sign > 0 else 1


def in_slots(sign: int) -> Tuple[int, int]:
    """Slots where a strand enters the crossing."""
    return (UNDER_IN, over_in_slot(sign))


def mirror_tuple(arcs: Sequence[int], sign: int) -> Tuple[int, int, int, int]:
    """Swap over and under at one crossing.

    The old over-strand becomes the under-strand, so the tuple is rotated to
    start from the old over-in slot.
    """
    a, b, c, d = arcs
    if sign > 0:
        return (b, c, d, a)
    return (d, a, b, c)


def seifert_pairs(sign: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """Oriented smoothing: each incoming slot is joined to the outgoing slot beside it."""
    return A_SMOOTHING if sign > 0 else B_SMOOTHING


def jones_exponent(a_exponent: int, writhe: int) -> int:
    """t-exponent of the bracket term A^e after writhe normalization.

    Raises ValueError when the exponent is not integral (a knot never does this).
    """
    shifted = a_exponent - 3 * writhe
    if shifted % 4:
        raise ValueError(f"A-exponent {a_exponent} with writhe {writhe} is not integral in t")
    return -shifted // 4


def khovanov_grading(resolution_degree: int, q_degree: int, n_plus: int, n_minus: int) -> Tuple[int, int]:
    """Shift raw cube gradings (q already includes the resolution degree) to (i, j)."""
    return resolution_degree - n_minus, q_degree + n_plus - 2 * n_minus
