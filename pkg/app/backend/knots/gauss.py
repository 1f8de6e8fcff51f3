"""
Gauss codes: the sequence of over/under crossing visits along each component.

Text form: one token per visit, ``O3+`` (over crossing 3, positive) or
``U1-``; components are separated by `` | ``. Crossings are numbered from 1 in
PD order. The 0-crossing unknot has the empty code ``()``.
"""

import re
from dataclasses import dataclass
from typing import Tuple

from app.backend.errors import PDParseError
from app.backend.knots.diagram import PlanarDiagram

_VISIT = re.compile(r'^([OU])(\d+)([+-])$')


@dataclass(frozen=True)
class GaussVisit:
    crossing: int
    over: bool
    sign: int

    def to_text(self) -> str:
        return '%s%d%s' % ('O' if self.over else 'U', self.crossing, '+' if self.sign > 0 else '-')


@dataclass(frozen=True)
class GaussCode:
    components: Tuple[Tuple[GaussVisit, ...], ...]

    def to_text(self) -> str:
        if not any(self.components):
            return '()'
        return ' | '.join(' '.join(v.to_text() for v in comp) for comp in self.components)

    def __str__(self) -> str:
        return self.to_text()


def to_gauss_code(d: PlanarDiagram) -> GaussCode:
    """Walk each component from its lowest label; every edge ends in one visit."""
    if not d.crossings:
        return GaussCode(((),))
    components = []
    for lo, hi in d.component_ranges:
        visits = []
        for label in range(lo, hi + 1):
            index, slot = d.heads[label]
            visits.append(GaussVisit(index + 1, bool(slot % 2), d.crossings[index].sign))
        components.append(tuple(visits))
    return GaussCode(tuple(components))


def parse_gauss(text: str) -> GaussCode:
    text = (text or '').strip()
    if text in ('', '()'):
        return GaussCode(((),))
    components = []
    for chunk in text.split('|'):
        visits = []
        for token in chunk.split():
            match = _VISIT.match(token)
            if not match:
                raise PDParseError(f"malformed Gauss visit {token!r}")
            kind, index, sign = match.groups()
            visits.append(GaussVisit(int(index), kind == 'O', 1 if sign == '+' else -1))
        components.append(tuple(visits))
    code = GaussCode(tuple(components))
    _check(code)
    return code


def _check(code: GaussCode) -> None:
    seen = {}
    for comp in code.components:
        for visit in comp:
            seen.setdefault(visit.crossing, []).append(visit)
    for index, visits in seen.items():
        if len(visits) != 2 or visits[0].over == visits[1].over:
            raise PDParseError(f"crossing {index} must be visited once over and once under", crossing=index)
        if visits[0].sign != visits[1].sign:
            raise PDParseError(f"crossing {index} has inconsistent signs", crossing=index)
