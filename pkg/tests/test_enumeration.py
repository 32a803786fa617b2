import random

import pytest

from textile.core.codes import canonicalize, parse_code, serialize_code
from textile.core.enumeration import (
    EnumSpec,
    Stage,
    build_catalog,
    catalog_entry,
    count_abstract,
    count_realizable,
    count_stage,
    enumerate_abstract,
    has_r1_pattern,
    has_r2_pattern,
    random_abstract_code,
    reduce_catalog,
    reduction_trace,
)
from textile.core.errors import InvalidEnumSpecError
from textile.core.realizability import is_realizable

# ── Spec ─────────────────────────────────────────────────────


def test_spec_closed_form_count() -> None:
    assert EnumSpec(1, 1, 1).abstract_count == 48
    assert EnumSpec(2, 1, 1).abstract_count == 1920
    assert EnumSpec(3, 1, 1).complexity == 5


@pytest.mark.parametrize("n,l,m", [(-1, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_spec_rejects_bad_counts(n: int, l: int, m: int) -> None:  # noqa: E741
    with pytest.raises(InvalidEnumSpecError):
        EnumSpec(n, l, m)


# ── Generation ───────────────────────────────────────────────


@pytest.mark.parametrize("spec", [EnumSpec(0, 1, 1), EnumSpec(1, 1, 1), EnumSpec(2, 1, 1),
                                  EnumSpec(1, 2, 1), EnumSpec(1, 1, 2)])
def test_generator_matches_closed_form(spec: EnumSpec) -> None:
    assert count_abstract(spec) == spec.abstract_count


def test_generated_codes_start_at_h1_and_are_distinct() -> None:
    codes = [serialize_code(c) for c in enumerate_abstract(EnumSpec(1, 1, 1))]
    assert len(set(codes)) == len(codes)
    assert all(c.startswith("h1") for c in codes)


def test_shards_partition_the_output() -> None:
    spec = EnumSpec(1, 2, 1)
    merged = [
        serialize_code(c)
        for s in range(spec.shards)
        for c in enumerate_abstract(spec, s)
    ]
    assert merged == [serialize_code(c) for c in enumerate_abstract(spec)]


def test_random_code_uses_the_spec_symbols() -> None:
    spec = EnumSpec(3, 2, 1)
    rng = random.Random(1)
    for _ in range(20):
        code = random_abstract_code(spec, rng)
        assert (code.crossings, code.horizontal, code.vertical) == (3, 2, 1)
        assert serialize_code(code).startswith("h1")


# ── Counts ───────────────────────────────────────────────────


@pytest.mark.parametrize("n,l,m,expected", [(1, 1, 1, 32), (2, 1, 1, 672), (1, 3, 1, 368)])
def test_realizable_counts(n: int, l: int, m: int, expected: int) -> None:  # noqa: E741
    assert count_realizable(EnumSpec(n, l, m)) == expected


def test_one_crossing_codes_embed_exactly_when_kinked() -> None:
    # A lone self-crossing on a (±1,±1) curve can only be a kink.
    codes = list(enumerate_abstract(EnumSpec(1, 1, 1)))
    verdicts = [is_realizable(c).realizable for c in codes]
    assert sum(verdicts) == 32
    assert verdicts == [has_r1_pattern(c) for c in codes]


def test_worker_count_does_not_change_results() -> None:
    spec = EnumSpec(2, 1, 1)
    assert count_realizable(spec, workers=3) == count_realizable(spec, workers=1)
    assert reduction_trace(spec, workers=2) == reduction_trace(spec, workers=1)


@pytest.mark.slow
@pytest.mark.parametrize("n,l,m,abstract,realizable", [
    (2, 2, 1, 23040, 1312),
    (3, 1, 1, 161280, 24960),
])
def test_complexity_five_counts(n: int, l: int, m: int,  # noqa: E741
                                abstract: int, realizable: int) -> None:
    spec = EnumSpec(n, l, m)
    assert count_abstract(spec, workers=4) == abstract
    assert count_realizable(spec, workers=4) == realizable


# ── Reidemeister patterns ────────────────────────────────────


@pytest.mark.parametrize("text,expected", [
    ("h1+ 1 1- v1+", True),
    ("h1+ 1- 1 v1+", True),
    ("1 h1+ v1+ 1+", True),
    ("h1+ 1 v1+ 1+", False),
    ("h1+ 1 2 v1+ 1+ 2-", False),
])
def test_r1_pattern(text: str, expected: bool) -> None:
    assert has_r1_pattern(parse_code(text)) is expected


@pytest.mark.parametrize("text,expected", [
    ("h1+ 1 2 v1+ 1+ 2-", True),
    ("h1+ 2 1 v1+ 1- 2+", True),
    ("h1+ 1+ 2 v1+ 1 2+", False),
    ("h1+ 1 2 v1+ 1- 2+", True),
    ("h1+ 1 2 v1+ 2+ 1-", True),
    ("h1+ 2 1 v1+ 1+ 2-", True),
    ("h1+ 1 2 v1+ 1+ 2+", False),
    ("h1+ 1 2 v1+ 2- 1-", False),
    ("h1+ 1 2 ; v1+ 1+ 2-", True),
])
def test_r2_pattern(text: str, expected: bool) -> None:
    assert has_r2_pattern(parse_code(text)) is expected


# ── Reduction ────────────────────────────────────────────────


def test_reduction_stages_shrink() -> None:
    trace = reduction_trace(EnumSpec(2, 1, 1))
    assert trace.abstract == 1920
    assert trace.realizable == 672
    assert trace.abstract >= trace.realizable >= trace.r1_free >= trace.r2_free
    assert len(trace.survivors) == 8


def test_one_crossing_reduces_to_nothing() -> None:
    assert reduce_catalog(EnumSpec(1, 1, 1)) == []
    assert count_stage(EnumSpec(1, 1, 1, Stage.REDUCED)) == 0


def test_reduced_catalog_entries() -> None:
    entries = reduce_catalog(EnumSpec(2, 1, 1))
    assert len(entries) == 8
    assert [e.code for e in entries] == sorted(e.code for e in entries)
    for e in entries:
        code = parse_code(e.code)
        assert e.realizable and not e.r1 and not e.r2
        assert serialize_code(canonicalize(code)) == e.code
        assert e.symbol.n == 2 and e.symbol.k == 1
        assert e.zenkina is None


def test_reduced_catalog_with_invariants() -> None:
    entries = reduce_catalog(EnumSpec(2, 1, 1), invariants=True)
    assert all(e.zenkina for e in entries)


@pytest.mark.slow
@pytest.mark.parametrize("n,l,m,expected", [(2, 2, 1, 48), (3, 1, 1, 64)])
def test_reduced_counts_complexity_five(n: int, l: int, m: int,  # noqa: E741
                                        expected: int) -> None:
    assert count_stage(EnumSpec(n, l, m, Stage.REDUCED), workers=4) == expected


# ── Catalog entries ──────────────────────────────────────────


def test_catalog_entry_fields() -> None:
    entry = catalog_entry(parse_code("h1+ 1+ 2 v1+ 1 2+"), invariants=True)
    assert entry.complexity == 4
    assert entry.realizable
    assert str(entry.symbol) == "2^1_(1,1)"
    assert entry.zenkina == "p^2*x*y + q*x + q*t*y - 1"


def test_catalog_entry_skips_invariant_for_links_and_plain_curves(plain_curve, diagonal) -> None:
    assert catalog_entry(plain_curve, invariants=True).zenkina is None
    assert catalog_entry(diagonal, invariants=True).zenkina is None


def test_realizable_stage_lists_only_realizable() -> None:
    entries = build_catalog(EnumSpec(1, 1, 1, Stage.REALIZABLE))
    assert len(entries) == 32
    assert all(is_realizable(parse_code(e.code)).realizable for e in entries)
    assert [e.sort_key for e in entries] == sorted(e.sort_key for e in entries)


def test_abstract_stage_lists_everything() -> None:
    assert len(build_catalog(EnumSpec(1, 1, 1))) == 48
