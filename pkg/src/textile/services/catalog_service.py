"""
Catalog persistence: JSONL files of CatalogEntry records.

One entry per line, keys in model order, sorted by (complexity, code),
UTF-8 with LF line endings, so equal catalogs give byte-identical files.

Usage:
    from textile.services.catalog_service import catalog_to_file, catalog_from_file
    catalog_to_file(entries, "reduced-211.jsonl")
    assert catalog_from_file("reduced-211.jsonl") == sorted(entries, key=lambda e: e.sort_key)
"""

import json
import logging
from collections.abc import Iterable
from pathlib import Path

from pydantic import ValidationError

from textile.config import settings
from textile.core.codes import parse_code
from textile.core.errors import CatalogError, TextileError
from textile.core.models import CatalogEntry
from textile.core.ring import reduce_sign, render_poly
from textile.core.zenkina import batch_polynomials

logger = logging.getLogger(__name__)


def _stamped(entry: CatalogEntry) -> CatalogEntry:
    """The entry carrying the schema version readers check against."""
    if entry.schema_version == settings.catalog_schema:
        return entry
    return entry.model_copy(update={"schema_version": settings.catalog_schema})


def catalog_record(entry: CatalogEntry) -> dict:
    return _stamped(entry).model_dump(by_alias=True)


def dump_line(entry: CatalogEntry) -> str:
    return _stamped(entry).model_dump_json(by_alias=True)


def catalog_lines(entries: Iterable[CatalogEntry]) -> list[str]:
    return [dump_line(e) for e in sorted(entries, key=lambda e: e.sort_key)]


def catalog_to_file(entries: Iterable[CatalogEntry], path: str | Path) -> int:
    """Write entries sorted; returns the number of lines written."""
    path = Path(path)
    lines = catalog_lines(entries)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")
    logger.info("Catalog written: %d entries to %s", len(lines), path)
    return len(lines)


def parse_line(line: str, path: str = "<catalog>", line_no: int | None = None) -> CatalogEntry:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise CatalogError(path, line_no, f"invalid JSON: {e.msg}") from e
    if not isinstance(data, dict):
        raise CatalogError(path, line_no, "expected a JSON object")
    version = data.get("schema")
    if version != settings.catalog_schema:
        raise CatalogError(
            path, line_no,
            f"schema {version!r} not supported (expected {settings.catalog_schema})",
        )
    try:
        entry = CatalogEntry.model_validate(data)
    except ValidationError as e:
        raise CatalogError(path, line_no, f"invalid entry: {e.errors()[0]['msg']}") from e
    try:
        parse_code(entry.code)
    except TextileError as e:
        raise CatalogError(path, line_no, f"bad code {entry.code!r}: {e}") from e
    return entry


def catalog_from_file(path: str | Path) -> list[CatalogEntry]:
    """Read a catalog; any malformed line raises CatalogError naming its 1-based number."""
    path = Path(path)
    entries: list[CatalogEntry] = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        entries.append(parse_line(line, str(path), line_no))
    logger.debug("Catalog read: %d entries from %s", len(entries), path)
    return entries


def with_invariants(entries: Iterable[CatalogEntry], workers: int = 1) -> list[CatalogEntry]:
    """
    Fill the zenkina field of single-word entries with crossings.

    Polynomials are computed per code over `workers` processes; the
    result keeps input order.
    """
    entries = list(entries)
    todo = [
        k for k, e in enumerate(entries)
        if e.zenkina is None and e.symbol.k == 1 and e.symbol.n > 0
    ]
    polys = batch_polynomials([parse_code(entries[k].code) for k in todo], workers)
    filled = list(entries)
    for k, poly in zip(todo, polys, strict=True):
        filled[k] = entries[k].model_copy(update={"zenkina": render_poly(reduce_sign(poly))})
    logger.info("Invariants computed for %d of %d entries", len(todo), len(entries))
    return filled
