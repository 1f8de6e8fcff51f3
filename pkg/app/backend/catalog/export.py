"""
Schema-stable JSON export of knot reports.

The document is serialized with sorted keys and fixed indentation, so equal
inputs give byte-identical output, and it is validated against the bundled
JSON schema before it is returned.
"""

import json
import logging
import os
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional

import jsonschema
import ujson

from app.backend.catalog.loader import DATA_DIR
from app.backend.catalog.records import KnotRecord
from app.backend.errors import ConsistencyError
from app.backend.homology.khovanov import BigradedRanks
from app.backend.invariants.jones import jones_polynomial
from app.backend.knots.diagram import writhe
from app.backend.slice.toolkit import SliceReport

logger = logging.getLogger(__name__)

SCHEMA_VERSION = '1.0'
SCHEMA_FILE = os.path.join(DATA_DIR, 'report.schema.json')


@lru_cache(maxsize=1)
def report_schema() -> dict:
    with open(SCHEMA_FILE, encoding='utf-8') as handle:
        return json.load(handle)


def knot_entry(record: KnotRecord, report: SliceReport, khovanov: Optional[BigradedRanks] = None) -> Dict:
    entry = report.to_dict()
    entry.pop('knot')
    entry.pop('determinant_is_square')
    entry.pop('notes')
    entry.update({
        'name': record.name,
        'crossings': record.crossings,
        'writhe': writhe(record.pd),
        'pd': record.pd.to_pd_text(),
        'jones': jones_polynomial(record.pd).to_text(),
        'khovanov': None if khovanov is None else {
            'field': khovanov.field,
            'ranks': [list(triple) for triple in khovanov.to_triples()],
        },
    })
    return entry


def validate_document(document: Dict) -> None:
    try:
        jsonschema.validate(instance=document, schema=report_schema())
    except jsonschema.ValidationError as exc:
        raise ConsistencyError(f"report does not match its schema: {exc.message}",
                               path=[str(p) for p in exc.absolute_path]) from exc


def build_document(records: Iterable[KnotRecord], reports: Mapping[str, SliceReport],
                   khovanov: Optional[Mapping[str, BigradedRanks]] = None) -> Dict:
    khovanov = khovanov or {}
    knots: List[Dict] = []
    notes: List[str] = []
    for record in records:
        report = reports[record.name]
        knots.append(knot_entry(record, report, khovanov.get(record.name)))
        notes.extend(n for n in report.notes if n not in notes)
    document = {'schema_version': SCHEMA_VERSION, 'knots': knots, 'notes': notes}
    validate_document(document)
    return document


def export_report(records: Iterable[KnotRecord], reports: Mapping[str, SliceReport],
                  khovanov: Optional[Mapping[str, BigradedRanks]] = None) -> str:
    """JSON text for ``records``; ``reports`` and ``khovanov`` are keyed by record name."""
    records = list(records)
    document = build_document(records, reports, khovanov)
    logger.info("report exported", extra={'knots': [r.name for r in records]})
    return ujson.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)
