"""
Renderers for the command line: JSON lines, CSV and plain text.

JSON emits one compact object per record in record order. CSV follows
RFC 4180 with a header row and LF line endings; nested objects are
flattened into dotted columns (symbol.n, symbol.k, ...).
"""

import csv
import io
import json
from typing import Any

from textile.adapters.base import Output, OutputFormat, Renderer


def _flatten(record: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list | tuple):
        return " | ".join(
            json.dumps(v, separators=(",", ":")) if isinstance(v, dict) else str(v)
            for v in value
        )
    return str(value)


class JsonRenderer(Renderer):
    format = OutputFormat.JSON

    def render(self, output: Output) -> str:
        lines = [
            json.dumps(r, ensure_ascii=False, separators=(",", ":"))
            for r in output.records
        ]
        return "".join(line + "\n" for line in lines)


class CsvRenderer(Renderer):
    format = OutputFormat.CSV

    def render(self, output: Output) -> str:
        rows = [_flatten(r) for r in output.records]
        if not rows:
            return ""
        columns: list[str] = []
        for row in rows:
            columns.extend(c for c in row if c not in columns)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()


class TextRenderer(Renderer):
    format = OutputFormat.TEXT

    def render(self, output: Output) -> str:
        if output.text is not None:
            lines = output.text
        else:
            lines = [
                "  ".join(f"{k}={_cell(v)}" for k, v in _flatten(r).items())
                for r in output.records
            ]
        return "".join(line + "\n" for line in lines)


_RENDERERS: dict[OutputFormat, Renderer] = {
    r.format: r for r in (JsonRenderer(), CsvRenderer(), TextRenderer())
}


def get_renderer(fmt: OutputFormat | str) -> Renderer:
    return _RENDERERS[OutputFormat(fmt)]
