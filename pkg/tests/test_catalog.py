import json

import pytest

from app.backend.catalog import (Catalog, KnotRecord, ReferenceData, build_document, certificate_from_dict,
                                 export_report, ingest_pd_file, load_catalog, load_certificate, parse_pd_lines,
                                 select_from_file, split_file_selector, validate_document, validate_record)
from app.backend.catalog.loader import extra_paths
from app.backend.errors import (CatalogError, CertificateError, ConsistencyError, IngestionError,
                                KnotNotFoundError)
from app.backend.homology import khovanov_homology
from app.backend.knots import parse_pd
from app.backend.slice import slice_report

RIGHT_TREFOIL = 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'
FIGURE_EIGHT = 'X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]'


def test_builtin_catalog_contents(catalog):
    assert catalog.names() == ['unknot', 'kink', 'right-trefoil', 'left-trefoil', 'figure-eight', 'conway', 'kt']
    assert len(catalog) == 7


@pytest.mark.parametrize('alias, name', [
    ('3_1', 'right-trefoil'),
    ('Trefoil', 'right-trefoil'),
    ('4_1', 'figure-eight'),
    ('11N34', 'conway'),
    ('kinoshita-terasaka', 'kt'),
    (' U ', 'unknot'),
])
def test_alias_lookup(catalog, alias, name):
    assert catalog.lookup(alias).name == name
    assert alias.strip() in catalog


def test_unknown_knot(catalog):
    with pytest.raises(KnotNotFoundError) as info:
        catalog.lookup('5_2')
    assert info.value.exit_code == 6
    assert catalog.get('5_2') is None


def test_duplicate_alias_rejected(trefoil):
    first = KnotRecord(name='a', pd=trefoil, aliases=('x',))
    second = KnotRecord(name='b', pd=trefoil, aliases=('X',))
    with pytest.raises(CatalogError):
        Catalog([first, second])


def test_mutant_pair_metadata(catalog):
    conway = catalog.lookup('conway')
    assert conway.mutation_partner == 'kt'
    assert conway.mutation_region is not None
    assert conway.unknotting_crossing is not None


def test_validate_record_detects_wrong_reference(catalog):
    record = catalog.lookup('right-trefoil')
    broken = KnotRecord(name='broken', pd=record.pd,
                        reference=ReferenceData(jones='t^4 + t^3 + t', determinant=3))
    with pytest.raises(CatalogError):
        validate_record(broken)


def test_parse_pd_lines():
    lines = ['# two knots', '', f'tref: {RIGHT_TREFOIL}', f'fig8: {FIGURE_EIGHT}  # amphichiral']
    records = parse_pd_lines(lines, source='memory')
    assert [r.name for r in records] == ['tref', 'fig8']
    assert records[0].source == 'memory'
    assert records[1].pd.n == 4


def test_ingestion_is_all_or_nothing():
    lines = [f'good: {RIGHT_TREFOIL}', 'bad: X[1,4,2,5] X[3,6,4,1] X[5,2,6,1]', 'worse X[1,2]', f'good: {RIGHT_TREFOIL}']
    with pytest.raises(IngestionError) as info:
        parse_pd_lines(lines, source='memory')
    lines_reported = [d['line'] for d in info.value.diagnostics]
    assert lines_reported == [2, 3, 4]
    assert info.value.exit_code == 3


def test_duplicate_diagrams_are_flagged():
    records = parse_pd_lines([f'a: {RIGHT_TREFOIL}', f'b: {RIGHT_TREFOIL}'])
    assert records[0].duplicate_of is None
    assert records[1].duplicate_of == 'a'


def test_ingest_file(tmp_path):
    path = tmp_path / 'knots.pd'
    path.write_text(f'tref: {RIGHT_TREFOIL}\nfig8: {FIGURE_EIGHT}\n', encoding='utf-8')
    records = ingest_pd_file(str(path))
    assert len(records) == 2
    assert select_from_file(f'{path}:fig8').name == 'fig8'
    with pytest.raises(KnotNotFoundError):
        select_from_file(f'{path}:nope')
    with pytest.raises(IngestionError):
        select_from_file(str(path))


def test_missing_file():
    with pytest.raises(IngestionError):
        ingest_pd_file('/nonexistent/knots.pd')


def test_split_file_selector():
    assert split_file_selector('knots.pd:tref') == ('knots.pd', 'tref')
    assert split_file_selector('knots.pd') == ('knots.pd', None)
    assert split_file_selector('C:knots.pd') == ('C:knots.pd', None)


def test_load_catalog_with_extra_file(tmp_path):
    path = tmp_path / 'extra.pd'
    path.write_text(f'my-knot: {FIGURE_EIGHT}\n', encoding='utf-8')
    merged = load_catalog([str(path)])
    assert merged.lookup('my-knot').source == str(path)
    assert 'conway' in merged


def test_extra_paths_split():
    assert extra_paths('') == []
    assert extra_paths('a.pd') == ['a.pd']


def test_bundled_certificate():
    cert = load_certificate('conway_kprime.cert')
    assert cert.names() == ('conway', 'kprime')
    assert cert.trusted is True
    assert cert.provenance


@pytest.mark.parametrize('document', [
    {'knot_a': 'a', 'provenance': 'x'},
    {'knot_a': 'a', 'knot_b': 'A', 'provenance': 'x'},
    {'knot_a': 'a', 'knot_b': 'b', 'provenance': 'x', 'trusted': 'yes'},
    ['not', 'a', 'mapping'],
])
def test_bad_certificates(document):
    with pytest.raises(CertificateError):
        certificate_from_dict(document)


def test_certificate_file_errors(tmp_path):
    with pytest.raises(CertificateError):
        load_certificate(str(tmp_path / 'missing.cert.yaml'))
    broken = tmp_path / 'broken.cert.yaml'
    broken.write_text('knot_a: [unclosed\n', encoding='utf-8')
    with pytest.raises(CertificateError):
        load_certificate(str(broken))


def _export(catalog, names, with_khovanov=False):
    records = [catalog.lookup(name) for name in names]
    reports = {r.name: slice_report(r.pd, name=r.name, reference_genus=r.reference.genus) for r in records}
    khovanov = {r.name: khovanov_homology(r.pd) for r in records} if with_khovanov else None
    return export_report(records, reports, khovanov)


def test_export_is_valid_json(catalog):
    text = _export(catalog, ['right-trefoil', 'figure-eight'], with_khovanov=True)
    document = json.loads(text)
    assert document['schema_version'] == '1.0'
    trefoil = document['knots'][0]
    assert trefoil['name'] == 'right-trefoil'
    assert trefoil['s'] == 2
    assert trefoil['verdict'] == 'NotSlice'
    assert trefoil['khovanov']['ranks'] == [[0, 1, 1], [0, 3, 1], [2, 5, 1], [3, 9, 1]]
    assert len(document['notes']) == 1


def test_export_is_byte_stable(catalog):
    assert _export(catalog, ['unknot', 'right-trefoil']) == _export(catalog, ['unknot', 'right-trefoil'])


def test_schema_violation_is_a_consistency_error(catalog):
    record = catalog.lookup('right-trefoil')
    document = build_document([record], {record.name: slice_report(record.pd, name=record.name)})
    document['knots'][0]['verdict'] = 'Slice'
    with pytest.raises(ConsistencyError):
        validate_document(document)


def test_export_of_ingested_knot():
    record = parse_pd_lines([f'mine: {RIGHT_TREFOIL}'])[0]
    text = export_report([record], {'mine': slice_report(parse_pd(RIGHT_TREFOIL), name='mine', compute_s=False)})
    assert json.loads(text)['knots'][0]['s'] is None
