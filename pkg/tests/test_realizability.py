import random
import time

import pytest

from textile.core.codes import Sign, parse_code
from textile.core.enumeration import EnumSpec, enumerate_abstract, random_abstract_code
from textile.core.graph import OrientedEdge, TextileGraph
from textile.core.realizability import (
    FailureReason,
    faces_via_rotation_system,
    is_realizable,
    next_edge,
    trace_cycles,
)

from .conftest import UNREALIZABLE


def _labels(graph: TextileGraph, edges) -> list[str]:
    return [graph.edge_label(e) for e in edges]


# ── Successor ────────────────────────────────────────────────


def test_next_edge_at_crossing(diagonal) -> None:
    graph = TextileGraph(diagonal)
    following = next_edge(OrientedEdge(0, 0, Sign.PLUS), graph)
    assert graph.edge_label(following) == "(1-,v1+)-"


def test_next_edge_at_corner(diagonal) -> None:
    graph = TextileGraph(diagonal)
    following = next_edge(OrientedEdge(2, 3, Sign.MINUS), graph)
    assert graph.edge_label(following) == "(c,h1)+"


def test_next_edge_at_decorated_h(diagonal) -> None:
    graph = TextileGraph(diagonal)
    following = next_edge(OrientedEdge(0, 3, Sign.PLUS), graph)
    assert graph.edge_label(following) == "(h1,c)-"


# ── Cycle tracing ────────────────────────────────────────────


def test_diagonal_has_seven_cycles(diagonal) -> None:
    report = trace_cycles(diagonal)
    assert report.realizable
    assert report.failure is None
    assert report.face_count == 7
    assert sorted(len(c) for c in report.cycles) == [3, 3, 3, 4, 4, 5, 6]
    assert sum(len(c) for c in report.cycles) == 28
    assert report.euler_characteristic == 0


def test_first_cycle_of_diagonal(diagonal) -> None:
    graph = TextileGraph(diagonal)
    report = trace_cycles(diagonal, graph)
    assert _labels(graph, report.cycles[0].edges) == [
        "(h1+,1)+", "(1-,v1+)-", "(v1,c)-", "(c,h1)+",
    ]


def test_diagonal_cycle_through_both_words(diagonal) -> None:
    graph = TextileGraph(diagonal)
    cycles = [_labels(graph, c.edges) for c in trace_cycles(diagonal, graph).cycles]
    expected = ["(v2-,2+)+", "(2,1-)-", "(1,h1+)-", "(h1,h2)+", "(h2+,v1+)+", "(v1,v2)+"]
    match = [c for c in cycles if expected[0] in c]
    assert len(match) == 1
    k = match[0].index(expected[0])
    assert match[0][k:] + match[0][:k] == expected


def test_cycles_partition_all_oriented_edges(diagonal) -> None:
    report = trace_cycles(diagonal)
    edges = [e for c in report.cycles for e in c.edges]
    assert len(edges) == len(set(edges)) == 28


def test_plain_curve_is_realizable(plain_curve) -> None:
    report = trace_cycles(plain_curve)
    assert report.realizable
    assert report.face_count == 3
    assert sum(len(c) for c in report.cycles) == 12


def test_unrealizable_code() -> None:
    verdict = is_realizable(parse_code(UNREALIZABLE))
    assert not verdict
    assert not verdict.report.realizable
    assert verdict.report.euler_characteristic != 0 or verdict.report.failure is not None


def test_unrealizable_report_covers_every_edge() -> None:
    report = trace_cycles(parse_code("h1+ 1 1+ v1+"))
    edges = [e for c in report.cycles for e in c.edges]
    assert len(edges) == len(set(edges)) == report.adjacency_count * 2
    if report.failure is not None:
        assert report.failure.reason in (FailureReason.BOTH_PASSES,
                                          FailureReason.EDGE_REACHED_TWICE)
        assert not report.realizable


def test_realizable_means_v_faces() -> None:
    for code in enumerate_abstract(EnumSpec(1, 1, 1)):
        report = trace_cycles(code)
        if report.realizable:
            assert report.face_count == report.vertex_count
            assert report.failure is None
            assert sum(len(c) for c in report.cycles) == 4 * report.vertex_count


# ── Invariance ───────────────────────────────────────────────


def test_rotation_invariance() -> None:
    for code in enumerate_abstract(EnumSpec(2, 1, 1)):
        expected = is_realizable(code).realizable
        for k in (1, 3, 5):
            assert is_realizable(code.rotate(0, k)).realizable == expected


def test_relabel_invariance() -> None:
    for code in enumerate_abstract(EnumSpec(2, 1, 1)):
        swapped = code.relabel({1: 2, 2: 1})
        assert is_realizable(swapped).realizable == is_realizable(code).realizable


def test_multi_word_rotation_invariance(diagonal) -> None:
    assert is_realizable(diagonal.rotate(1, 2)).realizable
    assert trace_cycles(diagonal.rotate(0, 1)).face_count == 7


# ── Rotation-system oracle ───────────────────────────────────


def test_oracle_on_diagonal(diagonal) -> None:
    assert faces_via_rotation_system(diagonal).partition() == trace_cycles(diagonal).partition()


def test_oracle_on_plain_curve(plain_curve) -> None:
    oracle = faces_via_rotation_system(plain_curve)
    assert oracle.partition() == trace_cycles(plain_curve).partition()
    assert oracle.face_count == 3


SMALL_SPECS = [
    EnumSpec(0, 1, 1), EnumSpec(0, 2, 1), EnumSpec(0, 1, 2),
    EnumSpec(0, 3, 1), EnumSpec(0, 2, 2), EnumSpec(0, 1, 3),
    EnumSpec(1, 1, 1), EnumSpec(1, 2, 1), EnumSpec(1, 1, 2), EnumSpec(2, 1, 1),
]


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=str)
def test_oracle_agrees_exhaustively_up_to_complexity_four(spec: EnumSpec) -> None:
    for code in enumerate_abstract(spec):
        traced = trace_cycles(code)
        oracle = faces_via_rotation_system(code)
        assert traced.partition() == oracle.partition(), str(code)
        assert traced.realizable == oracle.realizable, str(code)


def _random_complexity_five(rng: random.Random):
    spec = rng.choice([EnumSpec(3, 1, 1), EnumSpec(2, 2, 1), EnumSpec(2, 1, 2),
                       EnumSpec(1, 3, 1), EnumSpec(1, 2, 2), EnumSpec(1, 1, 3)])
    return random_abstract_code(spec, rng)


def test_oracle_agrees_on_random_sample() -> None:
    rng = random.Random(5)
    for _ in range(500):
        code = _random_complexity_five(rng)
        assert trace_cycles(code).partition() == faces_via_rotation_system(code).partition()


@pytest.mark.slow
def test_oracle_agrees_on_ten_thousand_random_codes() -> None:
    rng = random.Random(20240501)
    for _ in range(10_000):
        code = _random_complexity_five(rng)
        traced, oracle = trace_cycles(code), faces_via_rotation_system(code)
        assert traced.partition() == oracle.partition(), str(code)
        assert traced.realizable == oracle.realizable


# ── Linear time ──────────────────────────────────────────────


def _ladder(length: int):
    return parse_code(" ".join(f"h{j}+" for j in range(1, length + 1)) + " v1+")


def test_ladder_family_is_realizable() -> None:
    for length in (1, 2, 3, 10):
        assert is_realizable(_ladder(length)).realizable


@pytest.mark.slow
def test_runtime_scales_linearly() -> None:
    def best_of(code, runs: int = 5) -> float:
        times = []
        for _ in range(runs):
            started = time.perf_counter()
            trace_cycles(code)
            times.append(time.perf_counter() - started)
        return min(times)

    small, large = _ladder(500), _ladder(5000)
    assert is_realizable(large).realizable
    assert best_of(large) <= 12 * best_of(small)
