import pytest

from app.backend.catalog import certificate_from_dict
from app.backend.errors import CertificateError, LinkNotSupportedError
from app.backend.knots import connected_sum
from app.backend.slice import (DETERMINANT_NONSQUARE, S_NONZERO, S_TRACE_NOTE, SUBADDITIVITY_NOTE, TRACE_TRANSFER,
                               TraceSiblingCertificate, Verdict, fox_milnor_determinant_test, slice_report,
                               trace_transfer_verdict)


def test_trefoil_is_not_slice(trefoil):
    report = slice_report(trefoil, name='right-trefoil')
    assert report.verdict is Verdict.NOT_SLICE
    assert report.obstruction_ids() == [DETERMINANT_NONSQUARE, S_NONZERO]
    assert report.s_value == 2
    assert report.slice_genus_lower_bound == 1
    assert report.topologically_slice_by_freedman is False


def test_unknot_is_inconclusive(unknot):
    report = slice_report(unknot, name='unknot')
    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.obstructions == ()
    assert report.topologically_slice_by_freedman is True


def test_figure_eight_only_fails_determinant(figure_eight):
    report = slice_report(figure_eight, name='figure-eight')
    assert report.obstruction_ids() == [DETERMINANT_NONSQUARE]
    assert report.s_value == 0


def test_square_knot_is_inconclusive(trefoil, left_trefoil):
    """det 9 is a square and s = 0, so nothing fires for a knot that is in fact slice."""
    square = connected_sum(trefoil, left_trefoil)
    report = slice_report(square, name='square')
    assert report.determinant == 9
    assert report.determinant_is_square
    assert report.verdict is Verdict.INCONCLUSIVE


def test_granny_knot_fails_s_only(trefoil):
    report = slice_report(connected_sum(trefoil, trefoil), name='granny')
    assert report.determinant == 9
    assert report.obstruction_ids() == [S_NONZERO]
    assert report.s_value == 4


def test_skip_s(trefoil):
    report = slice_report(trefoil, compute_s=False)
    assert report.s_value is None
    assert report.slice_genus_lower_bound is None
    assert report.obstruction_ids() == [DETERMINANT_NONSQUARE]


def test_supplied_s_value(trefoil):
    report = slice_report(trefoil, s_value=0)
    assert report.obstruction_ids() == [DETERMINANT_NONSQUARE]


def test_fox_milnor_test(trefoil, unknot):
    assert fox_milnor_determinant_test(unknot)
    assert not fox_milnor_determinant_test(trefoil)


def test_report_dict(trefoil):
    payload = slice_report(trefoil, name='right-trefoil', reference_genus=1).to_dict()
    assert payload['knot'] == 'right-trefoil'
    assert payload['alexander'] == 't^2 - t + 1'
    assert payload['verdict'] == 'NotSlice'
    assert payload['reference_genus'] == 1
    assert payload['genus_lower_bound'] == 1
    assert payload['genus_upper_bound'] == 1
    assert payload['notes'] == [SUBADDITIVITY_NOTE]
    assert [o['id'] for o in payload['obstructions']] == [DETERMINANT_NONSQUARE, S_NONZERO]


def test_reports_reject_links(hopf_link):
    with pytest.raises(LinkNotSupportedError):
        slice_report(hopf_link)


def test_trace_transfer_moves_obstruction(catalog, trefoil):
    """A knot whose sibling is not slice inherits the verdict even with every own test passing."""
    conway = catalog.lookup('conway')
    cert = certificate_from_dict({'knot_a': 'conway', 'knot_b': 'stand-in', 'provenance': 'test fixture',
                                  'trusted': True})
    report_a = slice_report(conway.pd, compute_s=False, name='conway', s_value=0)
    report_b = slice_report(trefoil, name='stand-in', compute_s=False, s_value=2)
    assert report_a.verdict is Verdict.INCONCLUSIVE

    new_a, new_b = trace_transfer_verdict(cert, report_a, report_b)
    assert new_a.verdict is Verdict.NOT_SLICE
    transferred = new_a.obstructions[-1]
    assert transferred.id == TRACE_TRANSFER
    assert transferred.source == 'stand-in'
    assert 's = 2' in transferred.detail
    assert S_TRACE_NOTE in new_a.notes
    assert new_b.obstruction_ids() == [DETERMINANT_NONSQUARE, S_NONZERO]


def test_trace_transfer_with_nothing_to_transfer(unknot):
    cert = TraceSiblingCertificate('a', 'b', 'fixture', trusted=True)
    report_a = slice_report(unknot, name='a')
    report_b = slice_report(unknot, name='b')
    new_a, new_b = trace_transfer_verdict(cert, report_a, report_b)
    assert new_a.verdict is Verdict.INCONCLUSIVE
    assert new_b.verdict is Verdict.INCONCLUSIVE


def test_trace_transfer_order_follows_arguments(trefoil, unknot):
    cert = TraceSiblingCertificate('a', 'b', 'fixture', trusted=True)
    new_b, new_a = trace_transfer_verdict(cert, slice_report(unknot, name='b'), slice_report(trefoil, name='a'))
    assert new_b.knot == 'b' and new_a.knot == 'a'
    assert new_b.obstruction_ids() == [TRACE_TRANSFER]


def test_untrusted_certificate(trefoil, unknot):
    cert = TraceSiblingCertificate('a', 'b', 'fixture', trusted=False)
    with pytest.raises(CertificateError) as info:
        trace_transfer_verdict(cert, slice_report(trefoil, name='a'), slice_report(unknot, name='b'))
    assert info.value.exit_code == 5


def test_certificate_names_must_match(trefoil, unknot):
    cert = TraceSiblingCertificate('a', 'b', 'fixture', trusted=True)
    with pytest.raises(CertificateError):
        trace_transfer_verdict(cert, slice_report(trefoil, name='a'), slice_report(unknot, name='c'))
