"""
Knot catalog: bundled records, PD-file ingestion, certificates and JSON export.
"""

from .records import KnotRecord, ReferenceData
from .ingest import ingest_pd_file, parse_pd_lines, select_from_file, split_file_selector
from .loader import Catalog, load_builtin_catalog, load_catalog, validate_record
from .certificates import certificate_from_dict, load_certificate
from .export import SCHEMA_VERSION, build_document, export_report, validate_document

__all__ = [
    'KnotRecord', 'ReferenceData', 'ingest_pd_file', 'parse_pd_lines', 'select_from_file', 'split_file_selector',
    'Catalog', 'load_builtin_catalog', 'load_catalog', 'validate_record', 'certificate_from_dict',
    'load_certificate', 'SCHEMA_VERSION', 'build_document', 'export_report', 'validate_document',
]
