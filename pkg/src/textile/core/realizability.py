"""
Realizability of textile codes by torus diagrams.

The turn-left rules define a successor on oriented edges of the textile
graph; its orbits are the boundaries of the faces that a torus diagram
would have. The code is realizable iff no face boundary runs along an
edge in both directions and there are exactly V faces (Euler
characteristic V - E + F = 0 with E = 2V).

Successor rules, for an edge arriving at token a with direction d
(e = sign of the decorated partner or of a itself):

    crossing  over  i   -> from i^e   in direction  e*d
              under i^e -> from i     in direction -e*d
    h point   h (boundary) -> from h^e in direction  d*e
              h^e (code)   -> from h   in direction -d*e
    v point   v (boundary) -> from v^e in direction -d*e
              v^e (code)   -> from v   in direction  d*e
    corner    arriving from the h-run continues into the v-run keeping d,
              arriving from the v-run continues into the h-run flipping d.

The outgoing edge leaves the partner token towards its next (direction +)
or previous (direction -) neighbour in the partner's own word.

Usage:
    report = trace_cycles(parse_code("h1+ 1 v2- 2+ ; h2+ v1+ 1- 2"))
    report.realizable          # True
    len(report.cycles)         # 7
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from textile.core.codes import TextileCode
from textile.core.graph import OrientedEdge, TextileGraph, TokenKind, Vertex

logger = logging.getLogger(__name__)


class FailureReason(str, Enum):
    BOTH_PASSES = "cycle contains both passes of one adjacency"
    EDGE_REACHED_TWICE = "oriented edge reached twice"


@dataclass(frozen=True, slots=True)
class Contradiction:
    reason: FailureReason
    witness: OrientedEdge


@dataclass(frozen=True, slots=True)
class Cycle:
    """A closed face boundary; the successor of the last edge is the first."""
    edges: tuple[OrientedEdge, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True, slots=True)
class CycleReport:
    cycles: tuple[Cycle, ...]
    vertex_count: int
    adjacency_count: int
    realizable: bool
    failure: Contradiction | None = None

    @property
    def face_count(self) -> int:
        return len(self.cycles)

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.adjacency_count + self.face_count

    def partition(self) -> frozenset[frozenset[OrientedEdge]]:
        """Cycles as edge sets, for comparing reports independent of start edges."""
        return frozenset(frozenset(c.edges) for c in self.cycles)


@dataclass(frozen=True, slots=True)
class RealizabilityVerdict:
    realizable: bool
    report: CycleReport

    def __bool__(self) -> bool:
        return self.realizable


# ── Turn-left successor ──────────────────────────────────────


def _successor(graph: TextileGraph, edge_id: int) -> int:
    g = edge_id >> 1
    if edge_id & 1:
        land, d = g, -1
    else:
        land, d = graph.next_tok[g], 1

    tok = graph.tokens[land]
    kind = tok.kind
    if kind is TokenKind.CORNER:
        c0, c1 = graph.corners
        if land == c0:
            partner, out = (c1, -1) if d > 0 else (c0, -1)
        else:
            partner, out = (c1, 1) if d > 0 else (c0, 1)
    else:
        partner = graph.partner[land]
        if kind is TokenKind.OVER:
            out = graph.tokens[partner].sign * d
        elif kind is TokenKind.UNDER:
            out = -tok.sign * d
        elif kind is TokenKind.BOUNDARY_H:
            out = d * graph.tokens[partner].sign
        elif kind is TokenKind.H:
            out = -d * tok.sign
        elif kind is TokenKind.BOUNDARY_V:
            out = -d * graph.tokens[partner].sign
        else:
            out = d * tok.sign

    if out > 0:
        return 2 * partner
    return 2 * graph.prev_tok[partner] + 1


def next_edge(edge: OrientedEdge, graph: TextileGraph) -> OrientedEdge:
    """The oriented edge following `edge` on its face boundary."""
    return graph.edge(_successor(graph, graph.edge_id(edge)))


# ── Cycle tracing ────────────────────────────────────────────


Step = Callable[[TextileGraph, int], int]


def _trace(graph: TextileGraph, step: Step) -> CycleReport:
    """
    Partition all oriented edges into orbits of `step`.

    Start edges are taken in (word, position, dir) order. The first
    contradiction is recorded and tracing continues, so the report always
    covers the whole edge set.
    """
    total = graph.edge_count
    used = bytearray(total)
    mark = [-1] * graph.adjacency_count
    cycles: list[Cycle] = []
    failure: Contradiction | None = None

    for start in range(total):
        if used[start]:
            continue
        number = len(cycles)
        ids: list[int] = []
        e = start
        while True:
            used[e] = 1
            ids.append(e)
            adj = e >> 1
            if mark[adj] == number and failure is None:
                failure = Contradiction(FailureReason.BOTH_PASSES, graph.edge(e))
                logger.debug("contradiction in cycle %d at %s",
                             number, graph.edge_label(graph.edge(e)))
            mark[adj] = number
            e = step(graph, e)
            if e == start:
                break
            if used[e]:
                if failure is None:
                    failure = Contradiction(FailureReason.EDGE_REACHED_TWICE, graph.edge(e))
                break
        cycles.append(Cycle(tuple(graph.edge(i) for i in ids)))

    realizable = failure is None and len(cycles) == graph.vertex_count
    return CycleReport(
        cycles=tuple(cycles),
        vertex_count=graph.vertex_count,
        adjacency_count=graph.adjacency_count,
        realizable=realizable,
        failure=failure,
    )


def trace_cycles(code: TextileCode, graph: TextileGraph | None = None) -> CycleReport:
    """Trace the face boundaries of the textile complex. O(N) in code length."""
    return _trace(graph or TextileGraph(code), _successor)


def is_realizable(code: TextileCode) -> RealizabilityVerdict:
    report = trace_cycles(code)
    return RealizabilityVerdict(report.realizable, report)


# ── Rotation-system oracle ───────────────────────────────────
#
# Each occurrence owns two edge-ends: towards its next token and towards
# its previous token. Drawn in the square, every edge-end points to one
# compass direction at its vertex. A face is traced by arriving at an
# edge-end and leaving by the next edge-end clockwise.

_N, _E, _S, _W = range(4)
_NEXT, _PREV = 0, 1


def _compass(graph: TextileGraph, g: int) -> tuple[int, int]:
    """(next-end, prev-end) directions of token g."""
    tok = graph.tokens[g]
    match tok.kind:
        case TokenKind.OVER:
            return _N, _S
        case TokenKind.UNDER:
            return (_W, _E) if tok.sign > 0 else (_E, _W)
        case TokenKind.H:
            return (_N, _S) if tok.sign > 0 else (_S, _N)
        case TokenKind.BOUNDARY_H:
            return _E, _W
        case TokenKind.V:
            return (_E, _W) if tok.sign > 0 else (_W, _E)
        case TokenKind.BOUNDARY_V:
            return _N, _S
    return (_E, _S) if g == graph.corners[0] else (_N, _W)


def _rotation_step_factory(graph: TextileGraph) -> Step:
    ends: dict[tuple[Vertex, int], tuple[int, int]] = {}
    direction: list[tuple[int, int]] = []
    for g, tok in enumerate(graph.tokens):
        nxt, prv = _compass(graph, g)
        direction.append((nxt, prv))
        ends[(tok.vertex, nxt)] = (g, _NEXT)
        ends[(tok.vertex, prv)] = (g, _PREV)

    def step(graph: TextileGraph, edge_id: int) -> int:
        g = edge_id >> 1
        arrival = (g, _NEXT) if edge_id & 1 else (graph.next_tok[g], _PREV)
        occ, side = arrival
        clockwise = (direction[occ][side] + 1) % 4
        occ2, side2 = ends[(graph.tokens[occ].vertex, clockwise)]
        if side2 == _NEXT:
            return 2 * occ2
        return 2 * graph.prev_tok[occ2] + 1

    return step


def faces_via_rotation_system(code: TextileCode) -> CycleReport:
    """Independent face tracing from explicit per-vertex rotations."""
    graph = TextileGraph(code)
    return _trace(graph, _rotation_step_factory(graph))
