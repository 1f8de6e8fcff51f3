"""
Ingestion of PD files: one ``name: X[..] X[..] ...`` knot per line.

Blank lines and ``#`` comments are skipped. Ingestion is all-or-nothing: any
bad line aborts the whole file with one diagnostic per offending line.
Knots whose Gauss codes coincide are kept but flagged as duplicates.
"""

import logging
import os
import re
from typing import Dict, Iterable, List, Optional, Tuple

from app.backend.catalog.records import KnotRecord
from app.backend.errors import IngestionError, KnotEngineError, KnotNotFoundError, PDParseError
from app.backend.knots.diagram import parse_pd
from app.backend.knots.gauss import to_gauss_code

logger = logging.getLogger(__name__)

_LINE = re.compile(r'^\s*([A-Za-z0-9_.*+\'-]+)\s*:\s*(.*?)\s*$')


def parse_pd_lines(lines: Iterable[str], source: str = '<input>') -> List[KnotRecord]:
    records: List[KnotRecord] = []
    diagnostics: List[Dict[str, object]] = []
    names: Dict[str, int] = {}
    codes: Dict[str, str] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if not match:
            diagnostics.append({'line': number, 'message': "expected 'name: X[a,b,c,d] ...'"})
            continue
        name, body = match.groups()
        if name in names:
            diagnostics.append({'line': number, 'message': f"duplicate name {name!r} (first on line {names[name]})"})
            continue
        names[name] = number
        try:
            diagram = parse_pd(body)
        except PDParseError as exc:
            diagnostic = {'line': number, 'message': exc.message}
            diagnostic.update(exc.context)
            diagnostics.append(diagnostic)
            continue
        except KnotEngineError as exc:
            diagnostics.append({'line': number, 'message': exc.message})
            continue
        code = to_gauss_code(diagram).to_text()
        duplicate_of = codes.get(code)
        if duplicate_of is None:
            codes[code] = name
        else:
            logger.warning("duplicate knot diagram", extra={'source': source, 'line': number,
                                                              'knot': name, 'duplicate_of': duplicate_of})
        records.append(KnotRecord(name=name, pd=diagram, source=source, duplicate_of=duplicate_of))
    if diagnostics:
        raise IngestionError(source, diagnostics)
    return records


def ingest_pd_file(path: str) -> List[KnotRecord]:
    if not os.path.isfile(path):
        raise IngestionError(path, [{'line': 0, 'message': 'file not found'}])
    with open(path, encoding='utf-8') as handle:
        records = parse_pd_lines(handle, source=path)
    logger.info("ingested PD file", extra={'path': path, 'knots': len(records)})
    return records


def split_file_selector(selector: str) -> Tuple[str, Optional[str]]:
    """``path[:name]`` -> (path, name or None); a Windows drive letter is not a separator."""
    path, sep, name = selector.rpartition(':')
    if not sep or not path or (len(path) == 1 and path.isalpha()):
        return selector, None
    return path, name or None


def select_from_file(selector: str) -> KnotRecord:
    path, name = split_file_selector(selector)
    records = ingest_pd_file(path)
    if name is None:
        if len(records) != 1:
            raise IngestionError(path, [{'line': 0, 'message': f"{len(records)} knots in file, pick one with PATH:NAME"}])
        return records[0]
    for record in records:
        if record.name == name:
            return record
    raise KnotNotFoundError(name)


