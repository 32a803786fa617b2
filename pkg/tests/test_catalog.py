import json

import pytest

from textile.config import settings
from textile.core.codes import parse_code
from textile.core.enumeration import EnumSpec, catalog_entry, reduce_catalog
from textile.core.errors import CatalogError
from textile.services.catalog_service import (
    catalog_from_file,
    catalog_lines,
    catalog_to_file,
    dump_line,
    parse_line,
    with_invariants,
)


def _entries() -> list:
    return reduce_catalog(EnumSpec(2, 1, 1))


def test_round_trip(tmp_path) -> None:
    entries = _entries()
    path = tmp_path / "reduced.jsonl"
    assert catalog_to_file(reversed(entries), path) == 8
    assert catalog_from_file(path) == entries


def test_files_are_byte_identical(tmp_path) -> None:
    entries = _entries()
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    catalog_to_file(entries, first)
    catalog_to_file(list(reversed(entries)), second)
    assert first.read_bytes() == second.read_bytes()
    assert b"\r\n" not in first.read_bytes()


def test_line_keys_in_model_order(diagonal) -> None:
    record = json.loads(dump_line(catalog_entry(diagonal)))
    assert list(record) == [
        "schema", "code", "complexity", "realizable", "r1", "r2", "symbol", "zenkina",
    ]
    assert record["schema"] == 1
    assert record["symbol"] == {"n": 2, "k": 2, "x": 0, "y": 2}


def test_lines_sorted_by_complexity_then_code(diagonal, plain_curve) -> None:
    lines = catalog_lines([catalog_entry(diagonal), catalog_entry(plain_curve)])
    assert [json.loads(line)["complexity"] for line in lines] == [2, 6]


def test_blank_lines_are_skipped(tmp_path, plain_curve) -> None:
    path = tmp_path / "c.jsonl"
    path.write_text("\n" + dump_line(catalog_entry(plain_curve)) + "\n\n", encoding="utf-8")
    assert [e.code for e in catalog_from_file(path)] == ["h1+ v1+"]


def test_malformed_line_names_its_number(tmp_path, plain_curve) -> None:
    good = dump_line(catalog_entry(plain_curve))
    path = tmp_path / "bad.jsonl"
    path.write_text(f"{good}\n{good}\n{{not json\n", encoding="utf-8")
    with pytest.raises(CatalogError) as err:
        catalog_from_file(path)
    assert err.value.line == 3
    assert f"{path} line 3" in str(err.value)


def test_schema_mismatch_rejected(plain_curve) -> None:
    record = json.loads(dump_line(catalog_entry(plain_curve)))
    record["schema"] = 2
    with pytest.raises(CatalogError, match="schema 2 not supported"):
        parse_line(json.dumps(record), "cat.jsonl", 1)


def test_writer_stamps_configured_schema(tmp_path, monkeypatch) -> None:
    monkeypatch.setattr(settings, "catalog_schema", 2)
    entries = _entries()
    path = tmp_path / "v2.jsonl"
    catalog_to_file(entries, path)
    first = json.loads(path.read_text(encoding="utf-8").splitlines()[0])
    assert first["schema"] == 2
    restored = catalog_from_file(path)
    assert [e.code for e in restored] == [e.code for e in entries]
    assert all(e.schema_version == 2 for e in restored)


@pytest.mark.parametrize("line,message", [
    ("[1, 2]", "expected a JSON object"),
    ('{"schema": 1, "code": "h1+ v1+"}', "invalid entry"),
    ('{"schema": 1, "code": "h1+ 1", "complexity": 2, "realizable": true, "r1": false,'
     ' "r2": false, "symbol": {"n": 1, "k": 1, "x": 0, "y": 1}}', "bad code"),
])
def test_invalid_records(line: str, message: str) -> None:
    with pytest.raises(CatalogError, match=message):
        parse_line(line)


def test_with_invariants_fills_knots_only(diagonal) -> None:
    knot = catalog_entry(parse_code("h1+ 1+ 2 v1+ 1 2+"))
    link = catalog_entry(diagonal)
    filled = with_invariants([link, knot])
    assert filled[0].zenkina is None
    assert filled[1].zenkina == "p^2*x*y + q*x + q*t*y - 1"
    assert knot.zenkina is None


def test_with_invariants_in_worker_pool() -> None:
    entries = _entries()
    assert with_invariants(entries, workers=2) == with_invariants(entries)
