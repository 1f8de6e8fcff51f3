from .toolkit import (DETERMINANT_NONSQUARE, S_NONZERO, S_TRACE_NOTE, SUBADDITIVITY_NOTE, TRACE_TRANSFER, Obstruction,
                      SliceReport, TraceSiblingCertificate, Verdict, fox_milnor_determinant_test, slice_report,
                      trace_transfer_verdict)

__all__ = [
    'DETERMINANT_NONSQUARE', 'S_NONZERO', 'S_TRACE_NOTE', 'SUBADDITIVITY_NOTE', 'TRACE_TRANSFER', 'Obstruction',
    'SliceReport', 'TraceSiblingCertificate', 'Verdict', 'fox_milnor_determinant_test', 'slice_report',
    'trace_transfer_verdict',
]
