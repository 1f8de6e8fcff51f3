"""
Typed exceptions for the knot engine.

Every error carries an ``exit_code`` used by the CLI and a ``status_code``
used by the HTTP error handler, so both surfaces report the same failure the
same way.
"""

from typing import Any, Dict, List, Optional


class KnotEngineError(Exception):
    """Base class for all engine errors."""

    exit_code = 1
    status_code = 500

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            'error': type(self).__name__,
            'message': self.message,
            'status_code': self.status_code
        }
        if self.context:
            payload['context'] = self.context
        return payload


class PDParseError(KnotEngineError):
    """Malformed PD text, or a label/crossing that fails validation."""

    exit_code = 3
    status_code = 400

    def __init__(self, message: str, crossing: Optional[int] = None,
                 label: Optional[int] = None, line: Optional[int] = None):
        context = {k: v for k, v in (('crossing', crossing), ('label', label), ('line', line)) if v is not None}
        super().__init__(message, **context)
        self.crossing = crossing
        self.label = label
        self.line = line


class DiagramValidationError(PDParseError):
    """A syntactically valid PD code that is not a realizable oriented diagram."""


class LinkNotSupportedError(KnotEngineError):
    exit_code = 7
    status_code = 422

    def __init__(self, operation: str, components: int):
        super().__init__(f"{operation} requires a knot, got a {components}-component link",
                         operation=operation, components=components)


class InvalidOperationError(KnotEngineError):
    """A diagram operation whose precondition does not hold (site, index, region)."""

    exit_code = 7
    status_code = 422


class AlgebraError(KnotEngineError, ValueError):
    exit_code = 7
    status_code = 422


class SizeLimitExceeded(KnotEngineError):
    exit_code = 4
    status_code = 413

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} needs {size} generators, limit is {limit}",
                         size=size, limit=limit)


class ConsistencyError(KnotEngineError):
    """Internal invariant violated (d∘d != 0, Lee rank != 2, ...). Never recoverable."""

    exit_code = 8
    status_code = 500


class CertificateError(KnotEngineError):
    exit_code = 5
    status_code = 403


class CatalogError(KnotEngineError):
    exit_code = 3
    status_code = 500


class KnotNotFoundError(CatalogError):
    exit_code = 6
    status_code = 404

    def __init__(self, name: str):
        super().__init__(f"Unknown knot: {name}", name=name)


class IngestionError(CatalogError):
    """All-or-nothing ingestion failure with one diagnostic per offending line."""

    status_code = 400

    def __init__(self, path: str, diagnostics: List[Dict[str, Any]]):
        lines = '; '.join(f"line {d['line']}: {d['message']}" for d in diagnostics)
        super().__init__(f"{path}: {lines}", path=path, diagnostics=diagnostics)
        self.diagnostics = diagnostics
