"""
Zenkina polynomial of single-component textile codes.

Crossing symbols of the word, read around a circle, form a Gauss diagram.
A crossing is odd when its chord is linked with an odd number of other
chords. The word is cut at every undercrossing into arcs; h and v points
split each arc into sub-arcs whose homology degree (alpha, beta) starts at
(0, 0) and moves by the sign of every v (alpha) or h (beta) passed.

The incidence entry [i : a] sums up to three terms

    z1 * x^a y^b    a starts at undercrossing i          (first sub-arc)
    z2 * x^a y^b    overcrossing i lies inside a          (its sub-arc)
    z3 * x^a y^b    a ends at undercrossing i             (last sub-arc)

with z2 = 1 - t (even) or q (odd), and for a positive crossing z1 = -1,
z3 = t (even) or p (odd); a negative crossing swaps z1 and z3. The
polynomial is the determinant of the n x n matrix, rows by crossing,
columns by the arc starting at that crossing.

Usage:
    code = parse_code("h1+ 1 2+ 3 1- v1+ 3+ 2")
    parity(code, 1)                    # 0
    render_poly(zenkina_polynomial(code))
"""

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from textile.core.codes import Sign, Symbol, SymbolKind, TextileCode
from textile.core.errors import MultiComponentError, NoCrossingsError, UnknownCrossingError
from textile.core.ring import (
    ONE,
    P,
    Q,
    T,
    ZERO,
    Exponents,
    RingElement,
    equals_mod_units,
    normal_form,
    ring_monomial,
)

logger = logging.getLogger(__name__)

Degree = tuple[int, int]


class Role(str, Enum):
    OVER = "over"
    UNDER = "under"


# ── Gauss diagram ────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class GaussDiagram:
    """Crossing occurrences around the circle and, per crossing, its (over, under) positions."""
    circle: tuple[tuple[int, Role], ...]
    chords: dict[int, tuple[int, int]]

    def linked(self, i: int, j: int) -> bool:
        """Chords i and j interleave: exactly one end of j lies strictly inside i."""
        if i == j:
            return False
        lo, hi = sorted(self.chords[i])
        return sum(lo < end < hi for end in self.chords[j]) == 1


def _single_word(code: TextileCode) -> tuple[Symbol, ...]:
    if len(code.words) > 1:
        raise MultiComponentError(len(code.words))
    if code.crossings == 0:
        raise NoCrossingsError()
    return code.words[0].symbols


def gauss_diagram(code: TextileCode) -> GaussDiagram:
    circle: list[tuple[int, Role]] = []
    over: dict[int, int] = {}
    under: dict[int, int] = {}
    for sym in _single_word(code):
        if not sym.is_crossing:
            continue
        role = Role.OVER if sym.kind is SymbolKind.OVER else Role.UNDER
        (over if role is Role.OVER else under)[sym.index] = len(circle)
        circle.append((sym.index, role))
    chords = {i: (over[i], under[i]) for i in sorted(over)}
    return GaussDiagram(tuple(circle), chords)


def parity_map(code: TextileCode) -> dict[int, int]:
    diagram = gauss_diagram(code)
    return {
        i: sum(diagram.linked(i, j) for j in diagram.chords) % 2
        for i in diagram.chords
    }


def parity(code: TextileCode, i: int) -> int:
    """f(i) = 1 if crossing i is linked with an odd number of crossings, else 0."""
    table = parity_map(code)
    if i not in table:
        raise UnknownCrossingError(i)
    return table[i]


# ── Arcs ─────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class SubArc:
    symbols: tuple[Symbol, ...]
    degree: Degree


@dataclass(frozen=True, slots=True)
class Arc:
    """
    The run from undercrossing `start` to the next undercrossing `end`,
    both ends included. `degrees[k]` is the degree of the sub-arc holding
    run[k]; an h/v symbol already counts towards its own position.
    """
    start: int
    end: int
    run: tuple[Symbol, ...]
    degrees: tuple[Degree, ...]

    @property
    def first_degree(self) -> Degree:
        return self.degrees[0]

    @property
    def last_degree(self) -> Degree:
        return self.degrees[-1]

    @property
    def sub_arcs(self) -> list[SubArc]:
        parts: list[SubArc] = []
        current: list[Symbol] = []
        degree = self.degrees[0]
        for sym, deg in zip(self.run, self.degrees, strict=True):
            if deg != degree:
                parts.append(SubArc(tuple(current), degree))
                current, degree = [], deg
            current.append(sym)
        parts.append(SubArc(tuple(current), degree))
        return parts

    def over_degree(self, i: int) -> Degree | None:
        """Degree at overcrossing i when it lies strictly inside the arc."""
        for sym, deg in zip(self.run[1:-1], self.degrees[1:-1], strict=True):
            if sym.kind is SymbolKind.OVER and sym.index == i:
                return deg
        return None

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.run)


def _step(degree: Degree, sym: Symbol) -> Degree:
    alpha, beta = degree
    if sym.kind is SymbolKind.V:
        return alpha + int(sym.sign), beta
    if sym.kind is SymbolKind.H:
        return alpha, beta + int(sym.sign)
    return degree


def arcs(code: TextileCode) -> list[Arc]:
    """One arc per undercrossing, ordered by crossing index."""
    symbols = _single_word(code)
    size = len(symbols)
    starts = [k for k, s in enumerate(symbols) if s.kind is SymbolKind.UNDER]
    found: list[Arc] = []
    for s in starts:
        run = [symbols[s]]
        degrees = [(0, 0)]
        k = (s + 1) % size
        while True:
            sym = symbols[k]
            degree = _step(degrees[-1], sym)
            run.append(sym)
            degrees.append(degree)
            if sym.kind is SymbolKind.UNDER:
                break
            k = (k + 1) % size
        found.append(Arc(symbols[s].index, run[-1].index, tuple(run), tuple(degrees)))
    return sorted(found, key=lambda a: a.start)


# ── Incidence matrix ─────────────────────────────────────────


def _laurent(degree: Degree) -> RingElement:
    alpha, beta = degree
    return ring_monomial(x=alpha, y=beta)


def _z_values(sign: Sign, odd: int) -> tuple[RingElement, RingElement, RingElement]:
    z1, z3 = -ONE, (P if odd else T)
    z2 = Q if odd else ONE - T
    if sign is Sign.MINUS:
        z1, z3 = z3, z1
    return z1, z2, z3


def _signs(code: TextileCode) -> dict[int, Sign]:
    return {
        sym.index: sym.sign
        for _, _, sym in code.symbols()
        if sym.kind is SymbolKind.UNDER
    }


def _factor(i: int, arc: Arc, sign: Sign, odd: int) -> RingElement:
    z1, z2, z3 = _z_values(sign, odd)
    entry = ZERO
    if arc.start == i:
        entry += z1 * _laurent(arc.first_degree)
    inner = arc.over_degree(i)
    if inner is not None:
        entry += z2 * _laurent(inner)
    if arc.end == i:
        entry += z3 * _laurent(arc.last_degree)
    return entry


def incidence_factor(code: TextileCode, i: int, arc: Arc) -> RingElement:
    """[i : arc], summing every applicable term."""
    signs = _signs(code)
    if i not in signs:
        raise UnknownCrossingError(i)
    return _factor(i, arc, signs[i], parity(code, i))


Matrix = list[list[RingElement]]


def zenkina_matrix(code: TextileCode) -> Matrix:
    """A[i][j] = [i+1 : arc starting at undercrossing j+1]."""
    columns = arcs(code)
    signs = _signs(code)
    odd = parity_map(code)
    return [
        [_factor(i, arc, signs[i], odd[i]) for arc in columns]
        for i in sorted(signs)
    ]


def determinant(matrix: Sequence[Sequence[RingElement]]) -> RingElement:
    """Cofactor expansion along the first row, skipping zero entries."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return ONE
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]

    total = ZERO
    for j, element in enumerate(matrix[0]):
        if element.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = element * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def zenkina_polynomial(code: TextileCode) -> RingElement:
    poly = determinant(zenkina_matrix(code))
    logger.debug("zenkina %s: %d terms", code, len(poly))
    return poly


# ── Batches ──────────────────────────────────────────────────


def _terms(code: TextileCode) -> dict[Exponents, int]:
    # RingElement wraps a mappingproxy, which does not pickle.
    return dict(zenkina_polynomial(code).terms)


def batch_polynomials(codes: Iterable[TextileCode], workers: int = 1) -> list[RingElement]:
    """Zenkina polynomials in input order, optionally over a process pool."""
    codes = list(codes)
    if workers <= 1 or len(codes) < 2:
        return [zenkina_polynomial(c) for c in codes]
    with ProcessPoolExecutor(max_workers=min(workers, len(codes))) as pool:
        return [normal_form(terms) for terms in pool.map(_terms, codes)]


def invariants_distinct(codes: Iterable[TextileCode], bound: int = 4, workers: int = 1
                        ) -> list[list[TextileCode]]:
    """
    Group codes whose polynomials agree up to a unit ±p^a q^b t^c.

    Classes keep input order, ordered by their first member.
    """
    codes = list(codes)
    polys = batch_polynomials(codes, workers)
    classes: list[list[TextileCode]] = []
    heads: list[RingElement] = []
    for code, poly in zip(codes, polys, strict=True):
        for members, head in zip(classes, heads, strict=True):
            if equals_mod_units(poly, head, bound):
                members.append(code)
                break
        else:
            classes.append([code])
            heads.append(poly)
    logger.info("%d codes fall into %d classes", len(codes), len(classes))
    return classes
