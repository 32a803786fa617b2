"""
Command-line front end.

    textile check "h1+ 1 v2- 2+ ; h2+ v1+ 1- 2" [--dump-graph]
    textile canonical "v1+ 2- 1 h1+ 2 1+"
    textile enumerate -n 2 -l 1 -m 1 --stage reduced [--count] [--invariants]
    textile invariant "h1+ 1+ 2 v1+ 1 2+" [--raw|--reduced] [--match POLY] [--unit-bound B]
    textile homology "<code>" [--word K]
    textile symbol "<code>"
    textile tables zenkina5x2 [--no-allow-known-errata]

Every subcommand takes --format {json,csv,text}, --out FILE, --workers W
and --log-level LEVEL. `check` prints JSON unless told otherwise, the
others print text. `enumerate --out FILE` writes a JSONL catalog.
Polynomials print in ring normal form, so a printed p*q term reads q*t.
Exit status: 0 success or match, 1 negative verdict or mismatch, 2 bad
input.
"""

import argparse
import logging
import sys
from collections.abc import Callable
from pathlib import Path

from textile.adapters.base import Output, OutputFormat
from textile.adapters.cli.renderers import get_renderer
from textile.config import settings
from textile.core.codes import (
    canonicalize,
    complexity,
    homology_class,
    knot_symbol,
    parse_code,
    serialize_code,
)
from textile.core.enumeration import EnumSpec, Stage, build_catalog, count_stage
from textile.core.errors import InvalidBoundError, TextileError
from textile.core.graph import TextileGraph
from textile.core.models import SymbolRecord
from textile.core.realizability import trace_cycles
from textile.core.ring import equals_mod_units, parse_poly, reduce_sign, render_poly
from textile.core.zenkina import zenkina_polynomial
from textile.services.catalog_service import catalog_record, catalog_to_file, with_invariants
from textile.services.tables_service import RowStatus, TableId, run_table

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

Handler = Callable[[argparse.Namespace], tuple[Output, int]]


# ── Commands ─────────────────────────────────────────────────


def cmd_check(args: argparse.Namespace) -> tuple[Output, int]:
    code = parse_code(args.code)
    graph = TextileGraph(code)
    if args.dump_graph:
        for line in graph.dump():
            print(line, file=sys.stderr)
    report = trace_cycles(code, graph)

    failure = report.failure
    witness = graph.edge_label(failure.witness) if failure else None
    record = {
        "code": serialize_code(code),
        "realizable": report.realizable,
        "vertices": report.vertex_count,
        "adjacencies": report.adjacency_count,
        "euler_characteristic": report.euler_characteristic,
        "cycles": [
            {"len": len(c), "edges": [graph.edge_label(e) for e in c.edges]}
            for c in report.cycles
        ],
        "failure": {"reason": failure.reason.value, "witness": witness} if failure else None,
    }
    if report.realizable:
        text = f"realizable ({report.face_count} cycles)"
    elif failure:
        text = f"unrealizable: {failure.reason.value} at {witness}"
    else:
        text = f"unrealizable: {report.face_count} cycles for {report.vertex_count} vertices"
    return Output([record], [text]), EXIT_OK if report.realizable else EXIT_NEGATIVE


def cmd_canonical(args: argparse.Namespace) -> tuple[Output, int]:
    code = parse_code(args.code)
    canonical = serialize_code(canonicalize(code))
    return Output([{"code": serialize_code(code), "canonical": canonical}], [canonical]), EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> tuple[Output, int]:
    spec = EnumSpec(args.crossings, args.horizontal, args.vertical, Stage(args.stage))
    if args.count:
        total = count_stage(spec, args.workers)
        record = {"n": spec.crossings, "l": spec.horizontal, "m": spec.vertical,
                  "stage": spec.stage.value, "count": total}
        return Output([record], [str(total)]), EXIT_OK

    entries = build_catalog(spec, args.workers)
    if args.invariants:
        entries = with_invariants(entries, args.workers)
    if args.out:
        catalog_to_file(entries, args.out)
        return Output(written=True), EXIT_OK
    records = [catalog_record(e) for e in entries]
    return Output(records, [e.code for e in entries]), EXIT_OK


def cmd_invariant(args: argparse.Namespace) -> tuple[Output, int]:
    code = parse_code(args.code)
    poly = zenkina_polynomial(code)
    shown = poly if args.raw else reduce_sign(poly)
    record: dict = {"code": serialize_code(code), "polynomial": render_poly(shown)}
    if args.match is None:
        return Output([record], [record["polynomial"]]), EXIT_OK

    match = equals_mod_units(poly, parse_poly(args.match), args.unit_bound)
    unit = str(match.unit) if match.unit else None
    record.update({"match": args.match, "equal": match.equal, "unit": unit})
    text = unit if match.equal else "DISTINCT"
    return Output([record], [text]), EXIT_OK if match.equal else EXIT_NEGATIVE


def cmd_homology(args: argparse.Namespace) -> tuple[Output, int]:
    code = parse_code(args.code)
    words = [args.word] if args.word is not None else range(len(code.words))
    records, text = [], []
    for k in words:
        h = homology_class(code, k)
        records.append({"word": k, "x": h.x, "y": h.y})
        text.append(str(h))
    return Output(records, text), EXIT_OK


def cmd_symbol(args: argparse.Namespace) -> tuple[Output, int]:
    code = parse_code(args.code)
    symbol = SymbolRecord.from_symbol(knot_symbol(code))
    record = {"code": serialize_code(code), "complexity": complexity(code),
              "symbol": str(symbol)}
    return Output([record], [str(symbol)]), EXIT_OK


def cmd_tables(args: argparse.Namespace) -> tuple[Output, int]:
    report = run_table(args.table, args.workers, args.unit_bound, args.allow_known_errata)
    records = [r.model_dump(mode="json") for r in report.rows]
    text = []
    for r in report.rows:
        line = f"{r.row:>9}  {r.status.value:<8}  expected {r.expected}  got {r.got}"
        if r.erratum:
            verdict = "agrees with" if r.agrees_with_correction else "differs from"
            line += f"  [{r.erratum}: {verdict} correction]"
        if r.detail and r.status is not RowStatus.MATCH:
            line += f"  ({r.detail})"
        text.append(line)
    text.append(f"{report.table.value}: {len(report.rows)} rows, "
                f"{len(report.mismatches)} mismatches")
    return Output(records, text), report.exit_code


# ── Parser ───────────────────────────────────────────────────


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    common.add_argument("--out", type=Path, help="write output to FILE instead of stdout")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: TEXTILE_WORKERS)")
    common.add_argument("--log-level", default=None,
                        help="logging level (default: TEXTILE_LOG_LEVEL)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="textile",
        description="Textile codes: realizability, enumeration and invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide realizability")
    p.add_argument("code")
    p.add_argument("--dump-graph", action="store_true", help="print the textile graph to stderr")
    p.set_defaults(handler=cmd_check, format=OutputFormat.JSON.value)

    p = sub.add_parser("canonical", parents=[common], help="canonical form of a code")
    p.add_argument("code")
    p.set_defaults(handler=cmd_canonical)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate single-word codes")
    p.add_argument("-n", dest="crossings", type=int, required=True)
    p.add_argument("-l", dest="horizontal", type=int, required=True)
    p.add_argument("-m", dest="vertical", type=int, required=True)
    p.add_argument("--stage", choices=[s.value for s in Stage], default=Stage.ABSTRACT.value)
    p.add_argument("--count", action="store_true", help="print only the number of codes")
    p.add_argument("--invariants", action="store_true", help="fill in Zenkina polynomials")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser(
        "invariant", parents=[common], help="Zenkina polynomial",
        description="Zenkina polynomial in ring normal form. qp = qt in the ring, so a p*q "
                    "term of a printed table shows up as q*t.",
    )
    p.add_argument("code")
    form = p.add_mutually_exclusive_group()
    form.add_argument("--raw", action="store_true", help="determinant as computed")
    form.add_argument("--reduced", action="store_true",
                      help="sign-normalized (default)")
    p.add_argument("--match", metavar="POLY", help="compare up to units with POLY")
    p.add_argument("--unit-bound", type=int, default=None)
    p.set_defaults(handler=cmd_invariant)

    p = sub.add_parser("homology", parents=[common], help="homology class per word")
    p.add_argument("code")
    p.add_argument("--word", type=int, default=None)
    p.set_defaults(handler=cmd_homology)

    p = sub.add_parser("symbol", parents=[common], help="knot symbol n^k_(x,y)")
    p.add_argument("code")
    p.set_defaults(handler=cmd_symbol)

    p = sub.add_parser("tables", parents=[common], help="reproduce a published table")
    p.add_argument("table", choices=[t.value for t in TableId])
    p.add_argument("--unit-bound", type=int, default=None)
    p.add_argument("--allow-known-errata", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(handler=cmd_tables)

    return parser


def _resolve_defaults(args: argparse.Namespace) -> None:
    if args.workers is None:
        args.workers = settings.workers
    elif args.workers < 1:
        raise TextileError(f"--workers must be >= 1, got {args.workers}")
    if not hasattr(args, "unit_bound"):
        return
    if args.unit_bound is None:
        args.unit_bound = settings.unit_bound
    elif args.unit_bound < 1:
        raise InvalidBoundError(args.unit_bound)


def dispatch(args: argparse.Namespace) -> int:
    """Run the parsed command, write its output, return the exit status."""
    handler: Handler = args.handler
    try:
        _resolve_defaults(args)
        output, status = handler(args)
        if output.written:
            return status
        rendered = get_renderer(args.format).render(output)
        if args.out:
            args.out.write_text(rendered, encoding="utf-8", newline="\n")
            logger.info("Output written to %s", args.out)
        else:
            sys.stdout.write(rendered)
    except (TextileError, IndexError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return status
