"""Connected sum of two knot diagrams."""

import logging

from app.backend.errors import InvalidOperationError
from app.backend.knots.diagram import PlanarDiagram
from app.backend.knots.retrace import DraftCrossing, FreshLabels, drafts_from, finish

logger = logging.getLogger(__name__)


def connected_sum(d1: PlanarDiagram, d2: PlanarDiagram, a1: int = 1, a2: int = 1) -> PlanarDiagram:
    """Cut edge ``a1`` of ``d1`` and edge ``a2`` of ``d2`` and splice the ends crosswise.

    The result is relabeled from its first crossing. The 0-crossing unknot is
    the identity on either side.
    """
    d1.require_knot('connected_sum')
    d2.require_knot('connected_sum')
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    for d, arc in ((d1, a1), (d2, a2)):
        if arc not in d.heads:
            raise InvalidOperationError(f"no edge labelled {arc}", label=arc)

    fresh = FreshLabels('sum')
    left = drafts_from(d1)
    right = [DraftCrossing([('right', x) for x in draft.arcs], draft.sign) for draft in drafts_from(d2)]
    forward, backward = fresh(), fresh()

    c, s = d1.tails[a1]
    left[c].arcs[s] = forward
    c, s = d2.heads[a2]
    right[c].arcs[s] = forward
    c, s = d2.tails[a2]
    right[c].arcs[s] = backward
    c, s = d1.heads[a1]
    left[c].arcs[s] = backward

    result, _ = finish(left + right, keep_labels=False)
    logger.debug("connected sum", extra={'left': d1.n, 'right': d2.n})
    return result
