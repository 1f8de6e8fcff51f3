from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from app.backend.knots.diagram import PlanarDiagram
from app.backend.knots.mutation import TangleRegion


@dataclass(frozen=True)
class ReferenceData:
    """Known values for a knot, each with a provenance string."""

    alexander: Optional[str] = None
    jones: Optional[str] = None
    determinant: Optional[int] = None
    genus: Optional[int] = None
    s: Optional[int] = None
    provenance: Dict[str, str] = field(default_factory=dict, compare=False)

    @classmethod
    def from_dict(cls, values: Optional[dict], provenance: Optional[dict] = None) -> 'ReferenceData':
        values = values or {}
        return cls(
            alexander=None if values.get('alexander') is None else str(values['alexander']),
            jones=None if values.get('jones') is None else str(values['jones']),
            determinant=values.get('determinant'),
            genus=values.get('genus'),
            s=values.get('s'),
            provenance={str(k): str(v) for k, v in (provenance or {}).items()},
        )


@dataclass(frozen=True)
class KnotRecord:
    name: str
    pd: PlanarDiagram
    reference: ReferenceData = field(default_factory=ReferenceData)
    aliases: Tuple[str, ...] = ()
    source: str = 'builtin'
    mutation_region: Optional[TangleRegion] = None
    mutation_partner: Optional[str] = None
    unknotting_crossing: Optional[int] = None
    duplicate_of: Optional[str] = None

    @property
    def crossings(self) -> int:
        return self.pd.n

    def names(self) -> Tuple[str, ...]:
        return (self.name,) + self.aliases
