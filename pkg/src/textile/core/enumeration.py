"""
Exhaustive enumeration of single-word textile codes and their reduction.

For given counts (n, l, m) the 2n + l + m decorated symbols are pairwise
distinct, so each rotation class of arrangements has exactly one member
starting with h1. Fixing h1 first and permuting the rest gives
(2n+l+m-1)! arrangements, times 2^(n+l+m) sign assignments.

Reduction keeps realizable codes without Reidemeister I/II patterns and
collapses crossing relabellings through canonicalize().

Work is sharded by the symbol placed right after h1, so shards are
independent and any worker count yields the same merged result.

Usage:
    spec = EnumSpec(2, 1, 1)
    count_realizable(spec)                     # 672
    [e.code for e in reduce_catalog(spec)]     # 8 canonical codes
"""

import itertools
import logging
import math
import random
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import TypeVar

from textile.core.codes import (
    Sign,
    Symbol,
    SymbolKind,
    TextileCode,
    Word,
    canonicalize,
    complexity,
    knot_symbol,
    parse_code,
    serialize_code,
)
from textile.core.errors import InvalidEnumSpecError
from textile.core.models import CatalogEntry, SymbolRecord
from textile.core.realizability import is_realizable
from textile.core.ring import reduce_sign, render_poly
from textile.core.zenkina import zenkina_polynomial

logger = logging.getLogger(__name__)

T = TypeVar("T")


class Stage(str, Enum):
    ABSTRACT = "abstract"
    REALIZABLE = "realizable"
    REDUCED = "reduced"


@dataclass(frozen=True, slots=True)
class EnumSpec:
    """Symbol counts of the codes to enumerate: n crossings, l h points, m v points."""
    crossings: int
    horizontal: int
    vertical: int
    stage: Stage = Stage.ABSTRACT

    def __post_init__(self) -> None:
        if self.crossings < 0:
            raise InvalidEnumSpecError(f"crossings must be >= 0, got {self.crossings}")
        if self.horizontal < 1 or self.vertical < 1:
            raise InvalidEnumSpecError(
                f"need at least one h and one v point, got l={self.horizontal} m={self.vertical}"
            )

    @property
    def complexity(self) -> int:
        return self.crossings + self.horizontal + self.vertical

    @property
    def abstract_count(self) -> int:
        """(2n+l+m-1)! * 2^(n+l+m)."""
        n, h, v = self.crossings, self.horizontal, self.vertical
        return math.factorial(2 * n + h + v - 1) * 2 ** (n + h + v)

    @property
    def shards(self) -> int:
        return 2 * self.crossings + self.horizontal + self.vertical - 1

    def __str__(self) -> str:
        return f"(n={self.crossings}, l={self.horizontal}, m={self.vertical})"


# ── Generation ───────────────────────────────────────────────

# Slot = (kind, index); signs are attached afterwards.
Slot = tuple[SymbolKind, int]


def _slots(spec: EnumSpec) -> tuple[list[Slot], list[Slot]]:
    """(free slots after h1, signed slots in sign-assignment order)."""
    hs = [(SymbolKind.H, j) for j in range(1, spec.horizontal + 1)]
    vs = [(SymbolKind.V, k) for k in range(1, spec.vertical + 1)]
    overs = [(SymbolKind.OVER, i) for i in range(1, spec.crossings + 1)]
    unders = [(SymbolKind.UNDER, i) for i in range(1, spec.crossings + 1)]
    return hs[1:] + vs + overs + unders, hs + vs + unders


def _symbol_table(spec: EnumSpec) -> dict[tuple[Slot, int], Symbol]:
    """Every symbol the counts allow, keyed by (slot, sign) with sign 0 for overcrossings."""
    table: dict[tuple[Slot, int], Symbol] = {}
    free, _ = _slots(spec)
    for slot in [(SymbolKind.H, 1), *free]:
        kind, index = slot
        if kind is SymbolKind.OVER:
            table[(slot, 0)] = Symbol.over(index)
            continue
        for sign in Sign:
            table[(slot, sign)] = Symbol(kind, index, sign)
    return table


def enumerate_abstract(spec: EnumSpec, shard: int | None = None) -> Iterator[TextileCode]:
    """
    Yield every single-word abstract code with the given symbol counts, one per rotation class.

    With `shard` set, only arrangements whose second symbol is the
    shard-th free slot are produced.
    """
    free, signed = _slots(spec)
    table = _symbol_table(spec)
    first = (SymbolKind.H, 1)
    shard_ids = range(len(free)) if shard is None else [shard]

    for s in shard_ids:
        head = free[s]
        rest = free[:s] + free[s + 1:]
        for perm in itertools.permutations(rest):
            arrangement = (first, head, *perm)
            for signs in itertools.product((Sign.PLUS, Sign.MINUS), repeat=len(signed)):
                chosen = dict(zip(signed, signs, strict=True))
                symbols = tuple(table[(slot, chosen.get(slot, 0))] for slot in arrangement)
                yield TextileCode((Word(symbols),))


def random_abstract_code(spec: EnumSpec, rng: random.Random) -> TextileCode:
    """A uniformly random generator representative for `spec`."""
    free, signed = _slots(spec)
    table = _symbol_table(spec)
    order = list(free)
    rng.shuffle(order)
    chosen = {slot: rng.choice((Sign.PLUS, Sign.MINUS)) for slot in signed}
    arrangement = [(SymbolKind.H, 1), *order]
    return TextileCode((Word(tuple(table[(slot, chosen.get(slot, 0))] for slot in arrangement)),))


def _run_shards(fn: Callable[[EnumSpec, int], T], spec: EnumSpec, workers: int) -> list[T]:
    """Apply fn to every shard, in shard order, optionally in a process pool."""
    shards = list(range(spec.shards))
    if workers <= 1 or len(shards) == 1:
        return [fn(spec, s) for s in shards]
    with ProcessPoolExecutor(max_workers=min(workers, len(shards))) as pool:
        return list(pool.map(fn, itertools.repeat(spec), shards))


# ── Counting ─────────────────────────────────────────────────


def _count_abstract_shard(spec: EnumSpec, shard: int) -> int:
    return sum(1 for _ in enumerate_abstract(spec, shard))


def _count_realizable_shard(spec: EnumSpec, shard: int) -> int:
    return sum(1 for code in enumerate_abstract(spec, shard) if is_realizable(code).realizable)


def count_abstract(spec: EnumSpec, workers: int = 1) -> int:
    """Count generated codes by running the generator (not the closed formula)."""
    return sum(_run_shards(_count_abstract_shard, spec, workers))


def count_realizable(spec: EnumSpec, workers: int = 1) -> int:
    started = time.perf_counter()
    total = sum(_run_shards(_count_realizable_shard, spec, workers))
    logger.info("%s: %d realizable codes (%.1fs, %d workers)",
                spec, total, time.perf_counter() - started, workers)
    return total


# ── Reidemeister patterns ────────────────────────────────────


def _adjacent_pairs(code: TextileCode) -> Iterator[tuple[Symbol, Symbol]]:
    """Cyclically adjacent (a, b) pairs, b right after a, over all words."""
    for word in code.words:
        symbols = word.symbols
        if len(symbols) < 2:
            continue
        for k, sym in enumerate(symbols):
            yield sym, symbols[(k + 1) % len(symbols)]


def has_r1_pattern(code: TextileCode) -> bool:
    """True iff some word has "... i i± ..." or "... i± i ..." (cyclically)."""
    for a, b in _adjacent_pairs(code):
        if a.is_crossing and b.is_crossing and a.index == b.index and a.kind is not b.kind:
            return True
    return False


def has_r2_pattern(code: TextileCode) -> bool:
    """
    True iff two crossings i, j are adjacent as overcrossings and adjacent
    as undercrossings, in either order, with opposite signs.

    This covers "... i j ... i+ j- ..." and "... j i ... i- j+ ..." together
    with their sign-swapped and strand-reversed forms. Pairs may sit in
    different words; adjacency is cyclic.
    """
    over_pairs: set[frozenset[int]] = set()
    under_pairs: set[frozenset[int]] = set()
    for a, b in _adjacent_pairs(code):
        if a.kind is SymbolKind.OVER and b.kind is SymbolKind.OVER:
            over_pairs.add(frozenset((a.index, b.index)))
        elif (a.kind is SymbolKind.UNDER and b.kind is SymbolKind.UNDER
              and a.sign is not b.sign):
            under_pairs.add(frozenset((a.index, b.index)))
    return not over_pairs.isdisjoint(under_pairs)


# ── Reduction ────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class ReductionTrace:
    """Per-stage counts of the reduction pipeline and its surviving codes."""
    abstract: int
    realizable: int
    r1_free: int
    r2_free: int
    survivors: tuple[str, ...]


def _reduce_shard(spec: EnumSpec, shard: int) -> ReductionTrace:
    abstract = realizable = r1_free = r2_free = 0
    survivors: set[str] = set()
    for code in enumerate_abstract(spec, shard):
        abstract += 1
        if not is_realizable(code).realizable:
            continue
        realizable += 1
        if has_r1_pattern(code):
            continue
        r1_free += 1
        if has_r2_pattern(code):
            continue
        r2_free += 1
        survivors.add(serialize_code(canonicalize(code)))
    return ReductionTrace(abstract, realizable, r1_free, r2_free, tuple(sorted(survivors)))


def reduction_trace(spec: EnumSpec, workers: int = 1) -> ReductionTrace:
    """Run realizability -> R1 -> R2 -> canonical dedup and keep every stage count."""
    started = time.perf_counter()
    parts = _run_shards(_reduce_shard, spec, workers)
    survivors = sorted(set().union(*(p.survivors for p in parts)))
    trace = ReductionTrace(
        abstract=sum(p.abstract for p in parts),
        realizable=sum(p.realizable for p in parts),
        r1_free=sum(p.r1_free for p in parts),
        r2_free=sum(p.r2_free for p in parts),
        survivors=tuple(survivors),
    )
    logger.info(
        "%s reduced: %d abstract, %d realizable, %d R1-free, %d R2-free, %d canonical (%.1fs)",
        spec, trace.abstract, trace.realizable, trace.r1_free, trace.r2_free,
        len(survivors), time.perf_counter() - started,
    )
    return trace


def catalog_entry(code: TextileCode, *, invariants: bool = False) -> CatalogEntry:
    """Classify one code. The Zenkina field is filled for single-word codes with crossings."""
    zenkina = None
    if invariants and len(code.words) == 1 and code.crossings > 0:
        zenkina = render_poly(reduce_sign(zenkina_polynomial(code)))
    return CatalogEntry(
        code=serialize_code(code),
        complexity=complexity(code),
        realizable=is_realizable(code).realizable,
        r1=has_r1_pattern(code),
        r2=has_r2_pattern(code),
        symbol=SymbolRecord.from_symbol(knot_symbol(code)),
        zenkina=zenkina,
    )


def _entries_shard(spec: EnumSpec, shard: int) -> list[CatalogEntry]:
    entries = []
    for code in enumerate_abstract(spec, shard):
        entry = catalog_entry(code)
        if spec.stage is Stage.REALIZABLE and not entry.realizable:
            continue
        entries.append(entry)
    return entries


def reduce_catalog(spec: EnumSpec, workers: int = 1, *, invariants: bool = False
                   ) -> list[CatalogEntry]:
    """Reduced realizable codes as sorted catalog entries."""
    trace = reduction_trace(spec, workers)
    return [catalog_entry(parse_code(text), invariants=invariants) for text in trace.survivors]


def build_catalog(spec: EnumSpec, workers: int = 1, *, invariants: bool = False
                  ) -> list[CatalogEntry]:
    """
    Catalog for spec.stage.

    Abstract and realizable stages list generator representatives (each
    already starts at h1); the reduced stage lists canonical codes.
    """
    if spec.stage is Stage.REDUCED:
        return reduce_catalog(spec, workers, invariants=invariants)
    entries = [e for part in _run_shards(_entries_shard, spec, workers) for e in part]
    return sorted(entries, key=lambda e: e.sort_key)


def count_stage(spec: EnumSpec, workers: int = 1) -> int:
    match spec.stage:
        case Stage.ABSTRACT:
            return count_abstract(spec, workers)
        case Stage.REALIZABLE:
            return count_realizable(spec, workers)
    return len(reduction_trace(spec, workers).survivors)
