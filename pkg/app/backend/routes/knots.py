"""
Knot invariant endpoints: catalog listing, per-knot invariants, PD literal
evaluation and trace-sibling transfer.
"""

import logging
from typing import Any, Callable, Dict

from flask import Blueprint, current_app, jsonify, request

from app.backend.catalog import KnotRecord, certificate_from_dict, load_catalog
from app.backend.errors import InvalidOperationError, PDParseError
from app.backend.homology import khovanov_homology, khovanov_polynomial, s_invariant
from app.backend.invariants import (alexander_polynomial, fox_colorings_count, genus_lower_bound, jones_polynomial,
                                    knot_determinant, seifert_genus_upper_bound, unnormalized_jones)
from app.backend.knots import parse_pd, to_gauss_code, writhe
from app.backend.middleware import cache_route, track_computation, track_performance
from app.backend.slice import slice_report, trace_transfer_verdict

logger = logging.getLogger(__name__)

bp = Blueprint('knots', __name__, url_prefix='/api/knots')


def _homology_options() -> Dict[str, Any]:
    return {
        'size_limit': current_app.config.get('KH_SIZE_LIMIT'),
        'threads': current_app.config.get('THREADS', 1),
    }


def _field(params) -> str:
    field = (params.get('field') or current_app.config.get('KH_DEFAULT_FIELD', 'Q')).upper()
    if field not in ('Q', 'F2'):
        raise InvalidOperationError(f"unsupported field {field!r}, use Q or F2", field=field)
    return field


def _flag(params, name: str, default: bool = True) -> bool:
    value = params.get(name)
    if value is None:
        return default
    if isinstance(value, bool):
        return value
    return str(value).lower() not in ('0', 'false', 'no')


def _alexander(record: KnotRecord, params) -> Dict[str, Any]:
    return {
        'alexander': alexander_polynomial(record.pd).to_text(),
        'determinant': knot_determinant(record.pd),
        'genus_lower_bound': genus_lower_bound(record.pd),
        'genus_upper_bound': seifert_genus_upper_bound(record.pd),
    }


def _jones(record: KnotRecord, params) -> Dict[str, Any]:
    return {
        'jones': jones_polynomial(record.pd).to_text(),
        'unnormalized_jones': unnormalized_jones(record.pd).to_text(),
        'writhe': writhe(record.pd),
    }


def _khovanov(record: KnotRecord, params) -> Dict[str, Any]:
    ranks = khovanov_homology(record.pd, field=_field(params), **_homology_options())
    return {
        'field': ranks.field,
        'ranks': [list(t) for t in ranks.to_triples()],
        'poincare': khovanov_polynomial(ranks).to_text(),
    }


def _s(record: KnotRecord, params) -> Dict[str, Any]:
    result = s_invariant(record.pd, **_homology_options())
    return {'s': result.s, 'slice_genus_lower_bound': result.slice_genus_lower_bound,
            'diagnostics': result.diagnostics}


def _colorings(record: KnotRecord, params) -> Dict[str, Any]:
    try:
        p = int(params.get('p', 3))
    except (TypeError, ValueError):
        raise InvalidOperationError("p must be an odd prime")
    return {'p': p, 'colorings': fox_colorings_count(record.pd, p)}


def _report(record: KnotRecord, params) -> Dict[str, Any]:
    report = slice_report(record.pd, compute_s=_flag(params, 'compute_s'), name=record.name,
                          reference_genus=record.reference.genus, **_homology_options())
    return report.to_dict()


INVARIANTS: Dict[str, Callable[[KnotRecord, Any], Dict[str, Any]]] = {
    'alexander': _alexander,
    'jones': _jones,
    'khovanov': _khovanov,
    's': _s,
    'colorings': _colorings,
    'report': _report,
}


def _describe(record: KnotRecord) -> Dict[str, Any]:
    ref = record.reference
    return {
        'name': record.name,
        'aliases': list(record.aliases),
        'crossings': record.crossings,
        'pd': record.pd.to_pd_text(),
        'gauss': to_gauss_code(record.pd).to_text(),
        'source': record.source,
        'reference': {
            'alexander': ref.alexander, 'jones': ref.jones, 'determinant': ref.determinant,
            'genus': ref.genus, 's': ref.s, 'provenance': ref.provenance,
        },
    }


@bp.route('/', methods=['GET'])
@track_performance()
def list_knots():
    """Catalog listing."""
    catalog = load_catalog()
    return jsonify({'knots': [{'name': r.name, 'aliases': list(r.aliases), 'crossings': r.crossings}
                              for r in catalog]})


@bp.route('/<name>', methods=['GET'])
@track_performance()
def get_knot(name):
    return jsonify(_describe(load_catalog().lookup(name)))


@bp.route('/<name>/<invariant>', methods=['GET'])
@track_performance()
@cache_route()
def get_invariant(name, invariant):
    """
    Compute one invariant of a catalog knot.
    Query args: ``field`` for khovanov, ``p`` for colorings, ``compute_s`` for report.
    """
    compute = INVARIANTS.get(invariant)
    if compute is None:
        raise InvalidOperationError(f"unknown invariant {invariant!r}", known=sorted(INVARIANTS))
    record = load_catalog().lookup(name)
    with track_computation(invariant, knot=record.name):
        payload = compute(record, request.args)
    return jsonify({'knot': record.name, **payload})


@bp.route('/evaluate', methods=['POST'])
@track_performance()
@cache_route()
def evaluate_pd():
    """
    Evaluate invariants of a PD literal.
    Body: ``{"pd": "X[...] ...", "invariants": ["alexander", "jones"], "field": "Q"}``
    """
    data = request.get_json(silent=True)
    if not data or not data.get('pd'):
        raise PDParseError("missing required field: pd")
    requested = data.get('invariants') or ['alexander', 'jones']
    unknown = [name for name in requested if name not in INVARIANTS]
    if unknown:
        raise InvalidOperationError(f"unknown invariants {unknown}", known=sorted(INVARIANTS))
    record = KnotRecord(name=str(data.get('name') or 'K'), pd=parse_pd(data['pd']), source='request')
    result = {'knot': record.name, 'pd': record.pd.to_pd_text()}
    for name in requested:
        with track_computation(name, knot=record.name):
            result[name] = INVARIANTS[name](record, data)
    return jsonify(result)


@bp.route('/transfer', methods=['POST'])
@track_performance()
def transfer():
    """
    Apply a trace-sibling certificate to two catalog knots.
    Body: ``{"certificate": {"knot_a", "knot_b", "provenance", "trusted"}, "compute_s": true}``
    """
    data = request.get_json(silent=True) or {}
    cert = certificate_from_dict(data.get('certificate'), source='request')
    catalog = load_catalog()
    compute_s = _flag(data, 'compute_s')
    reports = []
    for name in cert.names():
        record = catalog.lookup(name)
        with track_computation('report', knot=record.name):
            reports.append(slice_report(record.pd, compute_s=compute_s, name=record.name,
                                        reference_genus=record.reference.genus, **_homology_options()))
    report_a, report_b = trace_transfer_verdict(cert, *reports)
    return jsonify({'reports': [report_a.to_dict(), report_b.to_dict()]})
