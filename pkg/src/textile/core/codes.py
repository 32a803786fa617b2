"""
Textile codes: data model, text grammar, validation and canonical forms.

A torus diagram is read along each link component and written as a cyclic
word of symbols:

    i       overcrossing at crossing i
    i+/i-   undercrossing at crossing i (sign of the crossing)
    hj+/-   intersection with the horizontal edge of the square
    vk+/-   intersection with the vertical edge of the square

Words are separated by ';', tokens by whitespace:

    h1+ 1 v2- 2+ ; h2+ v1+ 1- 2

Usage:
    from textile.core.codes import parse_code, serialize_code, canonicalize
    code = parse_code("v1+ 2- 1 h1+ 2 1+")
    serialize_code(canonicalize(code))   # "h1+ 1 2+ v1+ 1- 2"

This module never imports anything outside the standard library and
textile.core; every value is immutable.
"""

import re
from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum, IntEnum

from textile.core.errors import CodeSyntaxError, CodeValidationError


class Sign(IntEnum):
    """Orientation sign of a crossing or an edge intersection."""
    PLUS = 1
    MINUS = -1

    def __str__(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, char: str) -> "Sign":
        return cls.PLUS if char == "+" else cls.MINUS


class SymbolKind(str, Enum):
    """Variant of a code symbol. Declaration order is the canonical order."""
    H = "h"
    V = "v"
    UNDER = "under"
    OVER = "over"


_KIND_RANK: dict[SymbolKind, int] = {
    SymbolKind.H: 0,
    SymbolKind.V: 1,
    SymbolKind.UNDER: 2,
    SymbolKind.OVER: 3,
}


@dataclass(frozen=True, slots=True)
class Symbol:
    """
    One symbol of a textile code.

    Overcrossings carry no sign (sign is None); the three other kinds
    always carry one.
    """
    kind: SymbolKind
    index: int
    sign: Sign | None = None

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"symbol index must be >= 1, got {self.index}")
        if (self.kind is SymbolKind.OVER) != (self.sign is None):
            raise ValueError(f"{self.kind.value} symbol has wrong sign {self.sign!r}")

    # ── Constructors ─────────────────────────────────────────

    @classmethod
    def over(cls, index: int) -> "Symbol":
        return cls(SymbolKind.OVER, index)

    @classmethod
    def under(cls, index: int, sign: Sign) -> "Symbol":
        return cls(SymbolKind.UNDER, index, Sign(sign))

    @classmethod
    def h(cls, index: int, sign: Sign) -> "Symbol":
        return cls(SymbolKind.H, index, Sign(sign))

    @classmethod
    def v(cls, index: int, sign: Sign) -> "Symbol":
        return cls(SymbolKind.V, index, Sign(sign))

    # ── Properties ───────────────────────────────────────────

    @property
    def is_crossing(self) -> bool:
        return self.kind is SymbolKind.OVER or self.kind is SymbolKind.UNDER

    @property
    def is_boundary(self) -> bool:
        return self.kind is SymbolKind.H or self.kind is SymbolKind.V

    @property
    def sort_key(self) -> tuple[int, int, int]:
        """Total order: H < V < Under < Over, then index, then + < -."""
        return (_KIND_RANK[self.kind], self.index, 1 if self.sign is Sign.MINUS else 0)

    def relabel(self, mapping: Mapping[int, int]) -> "Symbol":
        """Rename the crossing index; boundary symbols are returned unchanged."""
        if not self.is_crossing:
            return self
        return Symbol(self.kind, mapping[self.index], self.sign)

    def __str__(self) -> str:
        if self.kind is SymbolKind.OVER:
            return str(self.index)
        if self.kind is SymbolKind.UNDER:
            return f"{self.index}{self.sign}"
        return f"{self.kind.value}{self.index}{self.sign}"


@dataclass(frozen=True, slots=True, eq=False)
class Word:
    """
    A nonempty cyclic word of symbols.

    Two words are equal iff one is a rotation of the other; `symbols`
    keeps the order the word was written in.
    """
    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("a word needs at least one symbol")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __getitem__(self, position: int) -> Symbol:
        return self.symbols[position]

    def rotated(self, k: int) -> "Word":
        """The same cyclic word written from position k."""
        k %= len(self.symbols)
        return Word(self.symbols[k:] + self.symbols[:k])

    def least_rotation(self) -> tuple[Symbol, ...]:
        """Rotation that starts at the least symbol (lexicographic on ties)."""
        keys = [s.sort_key for s in self.symbols]
        least = min(keys)
        starts = [i for i, key in enumerate(keys) if key == least]
        if len(starts) == 1:
            k = starts[0]
            return self.symbols[k:] + self.symbols[:k]
        size = len(keys)
        best = min(starts, key=lambda k: [keys[(k + j) % size] for j in range(size)])
        return self.symbols[best:] + self.symbols[:best]

    def canonical(self) -> "Word":
        return Word(self.least_rotation())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        if len(self) != len(other):
            return False
        return self.least_rotation() == other.least_rotation()

    def __hash__(self) -> int:
        return hash(self.least_rotation())

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.symbols)


@dataclass(frozen=True, slots=True)
class HomologyClass:
    """Net signed windings of a component: x around the meridian, y around the longitude."""
    x: int
    y: int

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.x + other.x, self.y + other.y)

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


@dataclass(frozen=True, slots=True)
class KnotSymbol:
    """Short notation n^k_(x,y): crossings, components, homology per component."""
    crossings: int
    components: int
    homology: tuple[HomologyClass, ...]

    @property
    def total(self) -> HomologyClass:
        """Homology summed over all components (what the short notation shows)."""
        result = HomologyClass(0, 0)
        for h in self.homology:
            result = result + h
        return result

    def __str__(self) -> str:
        return f"{self.crossings}^{self.components}_{self.total}"


@dataclass(frozen=True)
class TextileCode:
    """
    A validated abstract textile code.

    `crossings`, `horizontal` and `vertical` are the counts n, l and m
    (largest crossing, h and v index). Construction raises
    CodeValidationError listing every broken occurrence rule.
    """
    words: tuple[Word, ...]
    crossings: int = field(init=False)
    horizontal: int = field(init=False)
    vertical: int = field(init=False)

    def __post_init__(self) -> None:
        words = tuple(w if isinstance(w, Word) else Word(tuple(w)) for w in self.words)
        if not words:
            raise CodeValidationError(["a code needs at least one word"])
        object.__setattr__(self, "words", words)
        n, horizontal, vertical = _validate(words)
        object.__setattr__(self, "crossings", n)
        object.__setattr__(self, "horizontal", horizontal)
        object.__setattr__(self, "vertical", vertical)

    @classmethod
    def of(cls, *words: list[Symbol] | tuple[Symbol, ...]) -> "TextileCode":
        return cls(tuple(Word(tuple(w)) for w in words))

    def symbols(self) -> Iterator[tuple[int, int, Symbol]]:
        """Yield (word index, position, symbol) in reading order."""
        for wi, word in enumerate(self.words):
            for pos, sym in enumerate(word.symbols):
                yield wi, pos, sym

    def rotate(self, word_index: int, k: int) -> "TextileCode":
        words = list(self.words)
        words[word_index] = words[word_index].rotated(k)
        return TextileCode(tuple(words))

    def relabel(self, mapping: Mapping[int, int]) -> "TextileCode":
        """Rename crossings by `mapping` (a permutation of 1..n)."""
        return TextileCode(
            tuple(Word(tuple(s.relabel(mapping) for s in w)) for w in self.words)
        )

    def __str__(self) -> str:
        return " ; ".join(str(w) for w in self.words)


# ── Validation ───────────────────────────────────────────────


def _validate(words: tuple[Word, ...]) -> tuple[int, int, int]:
    overs: Counter[int] = Counter()
    unders: Counter[int] = Counter()
    hs: Counter[int] = Counter()
    vs: Counter[int] = Counter()
    violations: list[str] = []

    for wi, word in enumerate(words, 1):
        if not any(s.is_boundary for s in word):
            violations.append(f"word {wi} has no h or v symbol")
        for sym in word:
            if sym.kind is SymbolKind.OVER:
                overs[sym.index] += 1
            elif sym.kind is SymbolKind.UNDER:
                unders[sym.index] += 1
            elif sym.kind is SymbolKind.H:
                hs[sym.index] += 1
            else:
                vs[sym.index] += 1

    n = max([*overs, *unders], default=0)
    for i in range(1, n + 1):
        if overs[i] == 0 and unders[i] == 0:
            violations.append(f"crossing index {i} is missing (indices must be 1..{n})")
            continue
        if overs[i] != 1:
            violations.append(f"crossing {i} has {overs[i]} overcrossings")
        if unders[i] != 1:
            violations.append(f"crossing {i} has {unders[i]} undercrossings")

    horizontal = max(hs, default=0)
    vertical = max(vs, default=0)
    for name, counts, top in (("h", hs, horizontal), ("v", vs, vertical)):
        if top == 0:
            violations.append(f"code has no {name} symbol")
        for j in range(1, top + 1):
            if counts[j] != 1:
                violations.append(f"{name}{j} occurs {counts[j]} times")

    if violations:
        raise CodeValidationError(violations)
    return n, horizontal, vertical


# ── Text grammar ─────────────────────────────────────────────

_TOKEN_RE = re.compile(r"(?:(?P<edge>[hv])(?P<eidx>[1-9][0-9]*)(?P<esign>[+-])"
                       r"|(?P<idx>[1-9][0-9]*)(?P<sign>[+-])?)\Z")
_SPAN_RE = re.compile(r"[^;\s]+|;")


def parse_symbol(token: str, position: int = 0) -> Symbol:
    match = _TOKEN_RE.match(token)
    if match is None:
        raise CodeSyntaxError("bad token", token, position)
    if match["edge"]:
        sign = Sign.parse(match["esign"])
        index = int(match["eidx"])
        return Symbol.h(index, sign) if match["edge"] == "h" else Symbol.v(index, sign)
    index = int(match["idx"])
    if match["sign"] is None:
        return Symbol.over(index)
    return Symbol.under(index, Sign.parse(match["sign"]))


def parse_code(text: str) -> TextileCode:
    """
    Parse and validate a textile code.

    Raises CodeSyntaxError on the first bad token and
    CodeValidationError listing all occurrence-rule violations.
    """
    words: list[Word] = []
    current: list[Symbol] = []
    last_offset = 0
    for match in _SPAN_RE.finditer(text):
        token, last_offset = match.group(), match.start()
        if token == ";":
            if not current:
                raise CodeSyntaxError("empty word", token, last_offset)
            words.append(Word(tuple(current)))
            current = []
            continue
        current.append(parse_symbol(token, last_offset))
    if not current:
        raise CodeSyntaxError("empty word", text[last_offset:].strip(), len(text))
    words.append(Word(tuple(current)))
    return TextileCode(tuple(words))


def serialize_code(code: TextileCode) -> str:
    """Canonical text: each word from its least symbol, words joined by ' ; '."""
    return " ; ".join(
        " ".join(str(s) for s in word.least_rotation()) for word in code.words
    )


# ── Measures ─────────────────────────────────────────────────


def complexity(code: TextileCode) -> int:
    """n + l + m."""
    return code.crossings + code.horizontal + code.vertical


def homology_class(code: TextileCode, word_index: int) -> HomologyClass:
    """x sums the signs of the word's v symbols, y those of its h symbols."""
    if not 0 <= word_index < len(code.words):
        raise IndexError(f"word index {word_index} out of range (code has {len(code.words)})")
    x = y = 0
    for sym in code.words[word_index]:
        if sym.kind is SymbolKind.V:
            x += sym.sign
        elif sym.kind is SymbolKind.H:
            y += sym.sign
    return HomologyClass(x, y)


def knot_symbol(code: TextileCode) -> KnotSymbol:
    return KnotSymbol(
        crossings=code.crossings,
        components=len(code.words),
        homology=tuple(homology_class(code, i) for i in range(len(code.words))),
    )


# ── Canonical form ───────────────────────────────────────────


def canonicalize(code: TextileCode) -> TextileCode:
    """
    Representative of the code's class under word rotation and crossing relabelling.

    Each word is rotated to its least symbol. Every word holds an h or v
    symbol, so that least symbol never depends on crossing labels and the
    words can be ordered by it. Crossings are then renumbered 1..n in
    order of first encounter.
    """
    words = sorted((w.least_rotation() for w in code.words), key=lambda s: s[0].sort_key)
    mapping: dict[int, int] = {}
    for word in words:
        for sym in word:
            if sym.is_crossing and sym.index not in mapping:
                mapping[sym.index] = len(mapping) + 1
    return TextileCode(tuple(Word(tuple(s.relabel(mapping) for s in w)) for w in words))
