"""
Golden tables: recompute the published classification tables and diff.

Expected values live in data/tables.yaml (or settings.tables_file) and are
loaded once per process. Every cell is recomputed from scratch: counts by
running the generator and the reduction pipeline, polynomials through the
incidence matrix. Polynomials are compared up to units.

Rows whose printed value is annexed under `errata` get status ERRATA; the
row then also states whether the computed value agrees with the annexed
correction.

Usage:
    from textile.services.tables_service import run_table, TableId
    report = run_table(TableId.ZENKINA4)
    report.exit_code        # 0 iff no mismatch
"""

import logging
import time
from enum import Enum
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field, ValidationError

from textile.config import settings
from textile.core.codes import knot_symbol, parse_code
from textile.core.enumeration import (
    EnumSpec,
    count_abstract,
    count_realizable,
    reduction_trace,
)
from textile.core.errors import InvalidBoundError, TableError, TextileError
from textile.core.models import SymbolRecord
from textile.core.ring import equals_mod_units, parse_poly, reduce_sign, render_poly
from textile.core.zenkina import zenkina_polynomial

logger = logging.getLogger(__name__)


class TableId(str, Enum):
    ALLCODES = "allcodes"
    REDCODES = "redcodes"
    ZENKINA4 = "zenkina4"
    ZENKINA5X2 = "zenkina5x2"
    ZENKINA5X3 = "zenkina5x3"


# ── Expected data ────────────────────────────────────────────


class CountRow(BaseModel):
    n: int
    l: int  # noqa: E741
    m: int
    abstract: int
    realizable: int


class ReducedRow(BaseModel):
    n: int
    l: int  # noqa: E741
    m: int
    reduced: int
    classes: int | None = None


class PolynomialRow(BaseModel):
    row: int
    code: str
    symbol: str | None
    polynomial: str


class Erratum(BaseModel):
    """A printed cell known to be wrong; count rows are keyed by their "(n,l,m)" label."""
    id: str
    table: TableId
    row: int | str
    kind: Literal["mismatch", "invalid-code"]
    corrected: str | None
    note: str = ""


class CountTable(BaseModel):
    title: str = ""
    rows: list[CountRow]


class ReducedTable(BaseModel):
    title: str = ""
    rows: list[ReducedRow]


class PolynomialTable(BaseModel):
    title: str = ""
    rows: list[PolynomialRow]


class TablesData(BaseModel):
    version: int
    allcodes: CountTable
    redcodes: ReducedTable
    zenkina4: PolynomialTable
    zenkina5x2: PolynomialTable
    zenkina5x3: PolynomialTable
    errata: list[Erratum] = Field(default_factory=list)

    def erratum(self, table: TableId, row: int | str) -> Erratum | None:
        for e in self.errata:
            if e.table is table and e.row == row:
                return e
        return None


# Module-level cache
_tables: TablesData | None = None
_loaded = False


def _tables_path() -> Path:
    if settings.tables_file:
        return Path(settings.tables_file)
    return Path(__file__).parent.parent / "data" / "tables.yaml"


def load_tables(force: bool = False) -> TablesData:
    """Parse and validate tables.yaml (cached; `force` reloads)."""
    global _tables, _loaded

    if _loaded and not force and _tables is not None:
        return _tables

    path = _tables_path()
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise TableError(f"cannot read {path}: {e}") from e
    except yaml.YAMLError as e:
        raise TableError(f"invalid YAML in {path}: {e}") from e

    try:
        _tables = TablesData.model_validate(raw or {})
    except ValidationError as e:
        raise TableError(f"malformed tables file {path}: {e.error_count()} errors") from e
    _loaded = True
    logger.debug("Tables loaded from %s (%d errata)", path, len(_tables.errata))
    return _tables


def reload_tables() -> TablesData:
    return load_tables(force=True)


# ── Reports ──────────────────────────────────────────────────


class RowStatus(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    ERRATA = "errata"


class RowResult(BaseModel):
    table: TableId
    row: str
    status: RowStatus
    expected: str
    got: str
    erratum: str | None = None
    agrees_with_correction: bool | None = None
    unit: str | None = None
    detail: str | None = None


class DiffReport(BaseModel):
    table: TableId
    allow_errata: bool = True
    rows: list[RowResult]

    @property
    def mismatches(self) -> list[RowResult]:
        return [
            r for r in self.rows
            if r.status is RowStatus.MISMATCH
            or (r.status is RowStatus.ERRATA and not self.allow_errata)
        ]

    @property
    def exit_code(self) -> int:
        return 1 if self.mismatches else 0


def _status(ok: bool) -> RowStatus:
    return RowStatus.MATCH if ok else RowStatus.MISMATCH


# ── Count tables ─────────────────────────────────────────────


def _count_row(table: TableId, label: str, expected: str, got: str,
               erratum: Erratum | None, detail: str | None = None) -> RowResult:
    if erratum is None:
        return RowResult(table=table, row=label, status=_status(got == expected),
                         expected=expected, got=got, detail=detail)
    note = "; ".join(part for part in (erratum.note, detail) if part)
    return RowResult(
        table=table, row=label, status=RowStatus.ERRATA,
        expected=expected, got=got, erratum=erratum.id,
        agrees_with_correction=got == erratum.corrected, detail=note or None,
    )


def _run_allcodes(data: TablesData, workers: int) -> list[RowResult]:
    results = []
    for r in data.allcodes.rows:
        spec = EnumSpec(r.n, r.l, r.m)
        abstract = count_abstract(spec, workers)
        realizable = count_realizable(spec, workers)
        label = f"({r.n},{r.l},{r.m})"
        results.append(_count_row(
            TableId.ALLCODES, label,
            expected=f"{r.abstract}/{r.realizable}",
            got=f"{abstract}/{realizable}",
            erratum=data.erratum(TableId.ALLCODES, label),
        ))
    return results


def _run_redcodes(data: TablesData, workers: int) -> list[RowResult]:
    results = []
    for r in data.redcodes.rows:
        trace = reduction_trace(EnumSpec(r.n, r.l, r.m), workers)
        got = len(trace.survivors)
        label = f"({r.n},{r.l},{r.m})"
        detail = (
            f"abstract={trace.abstract} realizable={trace.realizable} "
            f"r1_free={trace.r1_free} r2_free={trace.r2_free}"
        )
        # Survivors are listed whenever the printed count is not reproduced.
        if got != r.reduced:
            detail += "; survivors: " + " | ".join(trace.survivors)
        results.append(_count_row(
            TableId.REDCODES, label,
            expected=str(r.reduced),
            got=str(got),
            erratum=data.erratum(TableId.REDCODES, label),
            detail=detail,
        ))
    return results


# ── Polynomial tables ────────────────────────────────────────


def _polynomial_row(table: TableId, row: PolynomialRow, erratum: Erratum | None,
                    unit_bound: int) -> RowResult:
    try:
        code = parse_code(row.code)
    except TextileError as e:
        # Only an annexed invalid code is expected here.
        agrees = erratum is not None and erratum.kind == "invalid-code"
        return RowResult(
            table=table, row=str(row.row),
            status=RowStatus.ERRATA if erratum else RowStatus.MISMATCH,
            expected=row.polynomial, got="invalid code",
            erratum=erratum.id if erratum else None,
            agrees_with_correction=agrees if erratum else None,
            detail=str(e),
        )

    computed = zenkina_polynomial(code)
    got = render_poly(reduce_sign(computed))
    symbol = str(SymbolRecord.from_symbol(knot_symbol(code)))

    if erratum is not None:
        agrees = False
        if erratum.corrected is not None:
            agrees = bool(equals_mod_units(computed, parse_poly(erratum.corrected), unit_bound))
        return RowResult(
            table=table, row=str(row.row), status=RowStatus.ERRATA,
            expected=row.polynomial, got=got, erratum=erratum.id,
            agrees_with_correction=agrees, detail=erratum.note or None,
        )

    match = equals_mod_units(computed, parse_poly(row.polynomial), unit_bound)
    symbol_ok = row.symbol is None or row.symbol == symbol
    detail = None if symbol_ok else f"symbol {symbol}, expected {row.symbol}"
    return RowResult(
        table=table, row=str(row.row), status=_status(bool(match) and symbol_ok),
        expected=row.polynomial, got=got,
        unit=str(match.unit) if match.unit else None, detail=detail,
    )


def _run_polynomials(data: TablesData, table: TableId, unit_bound: int) -> list[RowResult]:
    rows = getattr(data, table.value).rows
    return [_polynomial_row(table, r, data.erratum(table, r.row), unit_bound) for r in rows]


# ── Public API ───────────────────────────────────────────────


def run_table(table: TableId | str, workers: int | None = None, unit_bound: int | None = None,
              allow_errata: bool = True) -> DiffReport:
    """Recompute one table and diff it against the expected data."""
    try:
        table = TableId(table)
    except ValueError as e:
        raise TableError(f"unknown table {table!r}") from e
    workers = settings.workers if workers is None else workers
    unit_bound = settings.unit_bound if unit_bound is None else unit_bound
    if workers < 1:
        raise TableError(f"workers must be >= 1, got {workers}")
    if unit_bound < 1:
        raise InvalidBoundError(unit_bound)
    data = load_tables()

    started = time.perf_counter()
    match table:
        case TableId.ALLCODES:
            rows = _run_allcodes(data, workers)
        case TableId.REDCODES:
            rows = _run_redcodes(data, workers)
        case _:
            rows = _run_polynomials(data, table, unit_bound)
    report = DiffReport(table=table, allow_errata=allow_errata, rows=rows)

    for r in report.mismatches:
        logger.warning("%s row %s: expected %s, got %s", table.value, r.row, r.expected, r.got)
    logger.info("Table %s: %d rows, %d mismatches (%.1fs)",
                table.value, len(rows), len(report.mismatches), time.perf_counter() - started)
    return report
