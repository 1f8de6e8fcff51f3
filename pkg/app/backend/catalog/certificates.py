import logging
import os

import yaml

from app.backend.catalog.loader import DATA_DIR
from app.backend.errors import CertificateError
from app.backend.slice.toolkit import TraceSiblingCertificate

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('knot_a', 'knot_b', 'provenance')


def certificate_from_dict(document, source: str = '<certificate>') -> TraceSiblingCertificate:
    if not isinstance(document, dict):
        raise CertificateError(f"{source}: certificate must be a mapping", path=source)
    missing = [key for key in REQUIRED_KEYS if not document.get(key)]
    if missing:
        raise CertificateError(f"{source}: missing {', '.join(missing)}", path=source, missing=missing)
    knot_a, knot_b = str(document['knot_a']), str(document['knot_b'])
    if knot_a.casefold() == knot_b.casefold():
        raise CertificateError(f"{source}: a certificate needs two distinct knots", path=source)
    trusted = document.get('trusted', False)
    if not isinstance(trusted, bool):
        raise CertificateError(f"{source}: 'trusted' must be true or false", path=source)
    return TraceSiblingCertificate(knot_a, knot_b, str(document['provenance']).strip(), trusted)


def load_certificate(path: str) -> TraceSiblingCertificate:
    """Read a ``*.cert.yaml`` file; a bare name resolves against the bundled data directory."""
    if not os.path.isfile(path):
        bundled = os.path.join(DATA_DIR, path if path.endswith('.yaml') else f'{path}.yaml')
        if not os.path.isfile(bundled):
            raise CertificateError(f"certificate file not found: {path}", path=path)
        path = bundled
    try:
        with open(path, encoding='utf-8') as handle:
            document = yaml.safe_load(handle)
    except yaml.YAMLError as exc:
        raise CertificateError(f"{path}: not valid YAML ({exc})", path=path) from exc
    cert = certificate_from_dict(document, path)
    logger.info("certificate loaded", extra={'path': path, 'knot_a': cert.knot_a, 'knot_b': cert.knot_b,
                                             'trusted': cert.trusted})
    return cert
