"""
Slice obstructions and the trace-sibling transfer rule.

Verdicts are two-valued: ``NotSlice`` when an implemented obstruction fires
and ``Inconclusive`` otherwise. Nothing here certifies that a knot is slice.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Tuple

from app.backend.algebra.laurent import LaurentPoly
from app.backend.errors import CertificateError
from app.backend.homology.lee import s_invariant
from app.backend.invariants.wirtinger import (alexander_polynomial, genus_lower_bound, knot_determinant,
                                              seifert_genus_upper_bound)
from app.backend.knots.diagram import PlanarDiagram

logger = logging.getLogger(__name__)

DETERMINANT_NONSQUARE = 'determinant-nonsquare'
S_NONZERO = 's-nonzero'
TRACE_TRANSFER = 'trace-transfer'

SUBADDITIVITY_NOTE = ("Unknotting number is subadditive under connected sum, u(K1 # K2) <= u(K1) + u(K2); "
                      "whether equality always holds is open. The engine computes no unknotting numbers.")
S_TRACE_NOTE = ("s is not a trace invariant: trace siblings may have different s values, "
                "so a zero s next to a transferred obstruction is not a contradiction.")


class Verdict(str, Enum):
    NOT_SLICE = 'NotSlice'
    INCONCLUSIVE = 'Inconclusive'


@dataclass(frozen=True)
class Obstruction:
    id: str
    detail: str
    source: Optional[str] = None  # sibling knot for transferred obstructions

    def to_dict(self) -> Dict[str, object]:
        payload = {'id': self.id, 'detail': self.detail}
        if self.source is not None:
            payload['source'] = self.source
        return payload


@dataclass(frozen=True)
class SliceReport:
    knot: str
    alexander_poly: LaurentPoly
    determinant: int
    determinant_is_square: bool
    genus_lower_bound: int
    genus_upper_bound: int
    s_value: Optional[int] = None
    topologically_slice_by_freedman: bool = False
    obstructions: Tuple[Obstruction, ...] = ()
    reference_genus: Optional[int] = None
    notes: Tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> Verdict:
        return Verdict.NOT_SLICE if self.obstructions else Verdict.INCONCLUSIVE

    @property
    def slice_genus_lower_bound(self) -> Optional[int]:
        return None if self.s_value is None else abs(self.s_value) // 2

    def obstruction_ids(self) -> List[str]:
        return [o.id for o in self.obstructions]

    def to_dict(self) -> Dict[str, object]:
        return {
            'knot': self.knot,
            'alexander': self.alexander_poly.to_text(),
            'determinant': self.determinant,
            'determinant_is_square': self.determinant_is_square,
            'genus_lower_bound': self.genus_lower_bound,
            'genus_upper_bound': self.genus_upper_bound,
            'reference_genus': self.reference_genus,
            's': self.s_value,
            'slice_genus_lower_bound': self.slice_genus_lower_bound,
            'topologically_slice_by_freedman': self.topologically_slice_by_freedman,
            'verdict': self.verdict.value,
            'obstructions': [o.to_dict() for o in self.obstructions],
            'notes': list(self.notes),
        }


@dataclass(frozen=True)
class TraceSiblingCertificate:
    knot_a: str
    knot_b: str
    provenance: str
    trusted: bool = False

    def names(self) -> Tuple[str, str]:
        return self.knot_a, self.knot_b


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def fox_milnor_determinant_test(d: PlanarDiagram) -> bool:
    """True when |Delta(-1)| is a perfect square, i.e. the necessary slice condition holds."""
    return _is_square(knot_determinant(d))


def slice_report(d: PlanarDiagram, compute_s: bool = True, name: str = 'K',
                 reference_genus: Optional[int] = None, s_value: Optional[int] = None, **s_options) -> SliceReport:
    """Collect the implemented obstructions for one knot.

    ``s_value`` short-circuits the Lee computation when the caller already has it.
    """
    d.require_knot('slice_report')
    delta = alexander_polynomial(d)
    determinant = knot_determinant(d)
    square = _is_square(determinant)
    obstructions = []
    if not square:
        obstructions.append(Obstruction(DETERMINANT_NONSQUARE, f"determinant {determinant} is not a perfect square"))
    if s_value is None and compute_s:
        s_value = s_invariant(d, **s_options).s
    if s_value:
        obstructions.append(Obstruction(S_NONZERO, f"s = {s_value}"))
    report = SliceReport(
        knot=name,
        alexander_poly=delta,
        determinant=determinant,
        determinant_is_square=square,
        genus_lower_bound=genus_lower_bound(d),
        genus_upper_bound=seifert_genus_upper_bound(d),
        s_value=s_value,
        topologically_slice_by_freedman=delta == LaurentPoly.one(),
        obstructions=tuple(obstructions),
        reference_genus=reference_genus,
        notes=(SUBADDITIVITY_NOTE,),
    )
    logger.info("slice report", extra={'knot': name, 'verdict': report.verdict.value,
                                       'obstructions': report.obstruction_ids()})
    return report


def _transferred(report: SliceReport, sibling: SliceReport, cert: TraceSiblingCertificate) -> SliceReport:
    own = tuple(o for o in report.obstructions if o.id != TRACE_TRANSFER)
    fired = [o.id for o in sibling.obstructions if o.id != TRACE_TRANSFER]
    if not fired:
        return replace(report, notes=report.notes + (S_TRACE_NOTE,))
    sibling_s = 'not computed' if sibling.s_value is None else str(sibling.s_value)
    detail = (f"trace sibling {sibling.knot} is not slice ({', '.join(fired)}; s = {sibling_s}); "
              f"certificate: {cert.provenance}")
    return replace(report, obstructions=own + (Obstruction(TRACE_TRANSFER, detail, sibling.knot),),
                   notes=report.notes + (S_TRACE_NOTE,))


def trace_transfer_verdict(cert: TraceSiblingCertificate, report_a: SliceReport,
                           report_b: SliceReport) -> Tuple[SliceReport, SliceReport]:
    """Apply the trace embedding rule: trace siblings are slice together or not at all.

    Returns the two reports with any transferred obstruction added; the order
    follows the arguments.
    """
    if not cert.trusted:
        raise CertificateError("trace-sibling certificate is not marked trusted",
                               knot_a=cert.knot_a, knot_b=cert.knot_b)
    if {report_a.knot, report_b.knot} != {cert.knot_a, cert.knot_b} or report_a.knot == report_b.knot:
        raise CertificateError("reports do not belong to the certificate's knots",
                               reports=[report_a.knot, report_b.knot], certificate=list(cert.names()))
    new_a = _transferred(report_a, report_b, cert)
    new_b = _transferred(report_b, report_a, cert)
    logger.info("trace transfer", extra={'knot_a': report_a.knot, 'knot_b': report_b.knot,
                                         'verdict_a': new_a.verdict.value, 'verdict_b': new_b.verdict.value})
    return new_a, new_b
