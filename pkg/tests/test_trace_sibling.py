"""
End-to-end check of the Conway knot against its trace sibling K'.

The K' diagram is not bundled; point KPRIME_PD_FILE at a PD file holding a
``kprime: X[..] ...`` line to run these.
"""

import pytest

from app.backend.catalog import load_catalog, load_certificate, select_from_file
from app.backend.homology import s_invariant
from app.backend.slice import TRACE_TRANSFER, Verdict, slice_report, trace_transfer_verdict

pytestmark = [pytest.mark.stretch, pytest.mark.slow]


def test_kprime_has_s_two(kprime_file):
    record = select_from_file(f'{kprime_file}:kprime')
    assert s_invariant(record.pd).s == 2


def test_conway_is_not_slice(kprime_file):
    catalog = load_catalog([kprime_file])
    cert = load_certificate('conway_kprime.cert')
    conway, kprime = (catalog.lookup(name) for name in cert.names())
    report_conway = slice_report(conway.pd, name=conway.name)
    report_kprime = slice_report(kprime.pd, name=kprime.name)
    assert report_conway.verdict is Verdict.INCONCLUSIVE
    assert report_conway.s_value == 0

    new_conway, new_kprime = trace_transfer_verdict(cert, report_conway, report_kprime)
    assert new_conway.verdict is Verdict.NOT_SLICE
    assert new_conway.obstruction_ids() == [TRACE_TRANSFER]
    assert new_kprime.s_value == 2
