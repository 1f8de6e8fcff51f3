"""
Bundled knot catalog: loading, self-validation and name lookup.
"""

import logging
import os
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import yaml

from app.backend.algebra.laurent import LaurentPoly, parse_laurent
from app.backend.catalog.ingest import ingest_pd_file
from app.backend.catalog.records import KnotRecord, ReferenceData
from app.backend.config import Config
from app.backend.errors import CatalogError, KnotEngineError, KnotNotFoundError
from app.backend.invariants.jones import jones_polynomial
from app.backend.invariants.wirtinger import alexander_polynomial, knot_determinant
from app.backend.knots.diagram import parse_pd
from app.backend.knots.mutation import TangleRegion, validate_region

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
CATALOG_FILE = os.path.join(DATA_DIR, 'catalog.yaml')


class Catalog:
    """Read-only collection of knot records with case-insensitive alias lookup."""

    def __init__(self, records: Iterable[KnotRecord]):
        self._records: List[KnotRecord] = []
        self._index: Dict[str, KnotRecord] = {}
        for record in records:
            self._add(record)

    def _add(self, record: KnotRecord) -> None:
        for key in record.names():
            folded = key.casefold()
            owner = self._index.get(folded)
            if owner is not None:
                raise CatalogError(f"name {key!r} of {record.name} already used by {owner.name}",
                                   name=key, knot=record.name, owner=owner.name)
            self._index[folded] = record
        self._records.append(record)

    def lookup(self, name: str) -> KnotRecord:
        record = self._index.get((name or '').strip().casefold())
        if record is None:
            raise KnotNotFoundError(name)
        return record

    def get(self, name: str) -> Optional[KnotRecord]:
        return self._index.get((name or '').strip().casefold())

    def names(self) -> List[str]:
        return [r.name for r in self._records]

    def merged(self, records: Iterable[KnotRecord]) -> 'Catalog':
        return Catalog(list(self._records) + list(records))

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def __iter__(self) -> Iterator[KnotRecord]:
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)


def _record_from_entry(entry: dict) -> KnotRecord:
    name = entry.get('name')
    if not name or 'pd' not in entry:
        raise CatalogError("catalog entry needs 'name' and 'pd'", entry=name)
    try:
        diagram = parse_pd(str(entry['pd']))
    except KnotEngineError as exc:
        raise CatalogError(f"{name}: {exc.message}", knot=name) from exc
    region = None
    partner = None
    mutation = entry.get('mutation')
    if mutation:
        region = TangleRegion.of(mutation['crossings'], mutation['boundary'])
        partner = mutation.get('partner')
    return KnotRecord(
        name=str(name),
        pd=diagram,
        reference=ReferenceData.from_dict(entry.get('reference'), entry.get('provenance')),
        aliases=tuple(str(a) for a in entry.get('aliases') or ()),
        mutation_region=region,
        mutation_partner=partner,
        unknotting_crossing=entry.get('unknotting_crossing'),
    )


def _mismatch(record: KnotRecord, what: str, expected, computed) -> CatalogError:
    return CatalogError(f"{record.name}: computed {what} {computed} does not match reference {expected}",
                        knot=record.name, invariant=what, expected=str(expected), computed=str(computed))


def validate_record(record: KnotRecord) -> Tuple[Optional[LaurentPoly], Optional[LaurentPoly]]:
    """Check the stored reference values against the engine; returns (Alexander, Jones)."""
    ref = record.reference
    delta = jones = None
    if ref.alexander is not None or ref.determinant is not None:
        delta = alexander_polynomial(record.pd)
        if ref.alexander is not None and delta != parse_laurent(ref.alexander):
            raise _mismatch(record, 'Alexander polynomial', ref.alexander, delta.to_text())
        if ref.determinant is not None and knot_determinant(record.pd) != ref.determinant:
            raise _mismatch(record, 'determinant', ref.determinant, knot_determinant(record.pd))
    if ref.jones is not None:
        jones = jones_polynomial(record.pd)
        if jones != parse_laurent(ref.jones):
            raise _mismatch(record, 'Jones polynomial', ref.jones, jones.to_text())
    if record.mutation_region is not None:
        try:
            validate_region(record.pd, record.mutation_region)
        except KnotEngineError as exc:
            raise CatalogError(f"{record.name}: bad mutation region: {exc.message}", knot=record.name) from exc
    return delta, jones


def _check_mutant_pairs(catalog: Catalog) -> None:
    for record in catalog:
        if record.mutation_partner is None:
            continue
        partner = catalog.get(record.mutation_partner)
        if partner is None:
            raise CatalogError(f"{record.name}: mutation partner {record.mutation_partner} is not in the catalog",
                               knot=record.name)
        for what, invariant in (('Jones', jones_polynomial), ('Alexander', alexander_polynomial)):
            if invariant(record.pd) != invariant(partner.pd):
                raise CatalogError(f"{record.name} and {partner.name} are listed as mutants but their {what} "
                                   "polynomials differ", knot=record.name, partner=partner.name)


def read_catalog_file(path: str = CATALOG_FILE) -> List[KnotRecord]:
    with open(path, encoding='utf-8') as handle:
        document = yaml.safe_load(handle) or {}
    if document.get('schema_version') != 1:
        raise CatalogError(f"{path}: unsupported catalog schema_version {document.get('schema_version')!r}")
    return [_record_from_entry(entry) for entry in document.get('knots') or ()]


def extra_paths(value: Optional[str] = None) -> List[str]:
    value = Config.CATALOG_EXTRA_PATHS if value is None else value
    return [p for p in (value or '').split(os.pathsep) if p.strip()]


@lru_cache(maxsize=None)
def load_builtin_catalog(validate: bool = True) -> Catalog:
    """Load and self-check the bundled catalog; any reference mismatch raises CatalogError."""
    catalog = Catalog(read_catalog_file())
    if validate:
        for record in catalog:
            validate_record(record)
        _check_mutant_pairs(catalog)
    logger.info("catalog loaded", extra={'knots': len(catalog), 'validated': validate})
    return catalog


def load_catalog(paths: Optional[Iterable[str]] = None, validate: bool = True) -> Catalog:
    """Built-in catalog merged with PD files from ``paths`` (default: ``CATALOG_EXTRA_PATHS``)."""
    catalog = load_builtin_catalog(validate)
    records: List[KnotRecord] = []
    for path in extra_paths() if paths is None else paths:
        records.extend(ingest_pd_file(path))
    return catalog.merged(records) if records else catalog
