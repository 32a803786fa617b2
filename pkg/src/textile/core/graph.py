"""
Textile graph: the extended code and its 4-valent multigraph.

The extended code is the code's words followed by the boundary word
c h1 … hl c v1 … vm. Every symbol occurrence of the extended code is a
token with a global index; the edge between a token and its cyclic
successor is an adjacency, identified by the (word, position) of its
left end, and each adjacency carries two oriented edges.

Vertices are crossings, h points, v points and one corner. Each crossing
is met twice in code words; each h/v point once in a code word and once
in the boundary word; the corner twice in the boundary word. So every
vertex has degree 4 and E = 2V.

Usage:
    graph = TextileGraph(code)
    graph.adjacency_count          # 2 * graph.vertex_count
    for line in graph.dump():
        print(line)
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from textile.core.codes import Sign, SymbolKind, TextileCode

BOUNDARY_LABEL = "B"


class TokenKind(str, Enum):
    OVER = "over"
    UNDER = "under"
    H = "h"                     # decorated h in a code word
    V = "v"                     # decorated v in a code word
    BOUNDARY_H = "boundary_h"   # undecorated h in the boundary word
    BOUNDARY_V = "boundary_v"
    CORNER = "corner"


class VertexKind(str, Enum):
    CROSSING = "crossing"
    H = "h"
    V = "v"
    CORNER = "corner"


@dataclass(frozen=True, slots=True, order=True)
class Vertex:
    kind: VertexKind
    index: int = 0

    def __str__(self) -> str:
        if self.kind is VertexKind.CORNER:
            return "c"
        if self.kind is VertexKind.CROSSING:
            return str(self.index)
        return f"{self.kind.value}{self.index}"


@dataclass(frozen=True, slots=True)
class Token:
    """One occurrence in the extended code; sign is 0 for undecorated tokens."""
    kind: TokenKind
    index: int
    sign: int = 0

    @property
    def vertex(self) -> Vertex:
        if self.kind in (TokenKind.OVER, TokenKind.UNDER):
            return Vertex(VertexKind.CROSSING, self.index)
        if self.kind in (TokenKind.H, TokenKind.BOUNDARY_H):
            return Vertex(VertexKind.H, self.index)
        if self.kind in (TokenKind.V, TokenKind.BOUNDARY_V):
            return Vertex(VertexKind.V, self.index)
        return Vertex(VertexKind.CORNER)

    def __str__(self) -> str:
        sign = "" if self.sign == 0 else ("+" if self.sign > 0 else "-")
        match self.kind:
            case TokenKind.OVER:
                return str(self.index)
            case TokenKind.UNDER:
                return f"{self.index}{sign}"
            case TokenKind.H | TokenKind.BOUNDARY_H:
                return f"h{self.index}{sign}"
            case TokenKind.V | TokenKind.BOUNDARY_V:
                return f"v{self.index}{sign}"
        return "c"


_SYMBOL_TOKEN: dict[SymbolKind, TokenKind] = {
    SymbolKind.OVER: TokenKind.OVER,
    SymbolKind.UNDER: TokenKind.UNDER,
    SymbolKind.H: TokenKind.H,
    SymbolKind.V: TokenKind.V,
}


@dataclass(frozen=True, slots=True)
class ExtendedCode:
    """The code words (as tokens) followed by the boundary word."""
    words: tuple[tuple[Token, ...], ...]

    @property
    def boundary(self) -> tuple[Token, ...]:
        return self.words[-1]

    @property
    def boundary_id(self) -> int:
        return len(self.words) - 1

    def word_label(self, word: int) -> str:
        return BOUNDARY_LABEL if word == self.boundary_id else str(word)


@dataclass(frozen=True, slots=True, order=True)
class Adjacency:
    """Unoriented edge between the token at (word, pos) and its cyclic successor."""
    word: int
    pos: int


@dataclass(frozen=True, slots=True)
class OrientedEdge:
    """
    One pass of an adjacency.

    dir = + runs from the token at (word, pos) to its successor;
    dir = - runs from the successor back to (word, pos).
    """
    word: int
    pos: int
    dir: Sign

    @property
    def adjacency(self) -> Adjacency:
        return Adjacency(self.word, self.pos)

    @property
    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.word, self.pos, Sign(-self.dir))

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.word, self.pos, 0 if self.dir is Sign.PLUS else 1)


def extend(code: TextileCode) -> ExtendedCode:
    """Tokenize the code words and append the boundary word c h1..hl c v1..vm."""
    words = [
        tuple(Token(_SYMBOL_TOKEN[s.kind], s.index, int(s.sign or 0)) for s in word)
        for word in code.words
    ]
    boundary = (
        [Token(TokenKind.CORNER, 0)]
        + [Token(TokenKind.BOUNDARY_H, j) for j in range(1, code.horizontal + 1)]
        + [Token(TokenKind.CORNER, 0)]
        + [Token(TokenKind.BOUNDARY_V, k) for k in range(1, code.vertical + 1)]
    )
    words.append(tuple(boundary))
    return ExtendedCode(tuple(words))


class TextileGraph:
    """
    Occurrence-indexed multigraph Γ(W) with O(1) neighbour and partner lookups.

    Tokens are numbered globally in reading order (code words first, the
    boundary word last). Oriented edges are numbered 2*g (dir +) and
    2*g + 1 (dir -) for the adjacency whose left end is token g, so numeric
    order is (word, position, dir) order with + before -.
    """

    __slots__ = (
        "code", "extended", "tokens", "offsets", "word_of", "pos_of",
        "next_tok", "prev_tok", "partner", "corners",
    )

    def __init__(self, code: TextileCode) -> None:
        self.code = code
        self.extended = extend(code)
        self.tokens: list[Token] = []
        self.offsets: list[int] = []
        self.word_of: list[int] = []
        self.pos_of: list[int] = []
        self.next_tok: list[int] = []
        self.prev_tok: list[int] = []

        for wi, word in enumerate(self.extended.words):
            start = len(self.tokens)
            size = len(word)
            self.offsets.append(start)
            for pos, token in enumerate(word):
                self.tokens.append(token)
                self.word_of.append(wi)
                self.pos_of.append(pos)
                self.next_tok.append(start + (pos + 1) % size)
                self.prev_tok.append(start + (pos - 1) % size)

        # Symbol-to-occurrence table: each decorated symbol occurs once.
        location: dict[tuple[TokenKind, int], int] = {
            (tok.kind, tok.index): g for g, tok in enumerate(self.tokens)
            if tok.kind is not TokenKind.CORNER
        }
        counterpart = {
            TokenKind.OVER: TokenKind.UNDER,
            TokenKind.UNDER: TokenKind.OVER,
            TokenKind.H: TokenKind.BOUNDARY_H,
            TokenKind.BOUNDARY_H: TokenKind.H,
            TokenKind.V: TokenKind.BOUNDARY_V,
            TokenKind.BOUNDARY_V: TokenKind.V,
        }
        self.partner: list[int] = [
            -1 if tok.kind is TokenKind.CORNER else location[(counterpart[tok.kind], tok.index)]
            for tok in self.tokens
        ]
        boundary_start = self.offsets[-1]
        self.corners = (boundary_start, boundary_start + code.horizontal + 1)

    # ── Sizes ────────────────────────────────────────────────

    @property
    def vertex_count(self) -> int:
        code = self.code
        return code.crossings + code.horizontal + code.vertical + 1

    @property
    def adjacency_count(self) -> int:
        return len(self.tokens)

    @property
    def edge_count(self) -> int:
        """Number of oriented edges (4V)."""
        return 2 * len(self.tokens)

    # ── Structure ────────────────────────────────────────────

    def vertices(self) -> list[Vertex]:
        return sorted({tok.vertex for tok in self.tokens})

    def adjacencies(self) -> list[Adjacency]:
        return [Adjacency(self.word_of[g], self.pos_of[g]) for g in range(len(self.tokens))]

    def oriented_edges(self) -> list[OrientedEdge]:
        return [self.edge(e) for e in range(self.edge_count)]

    def token_id(self, word: int, pos: int) -> int:
        return self.offsets[word] + pos

    def endpoints(self, adjacency: Adjacency) -> tuple[Token, Token]:
        g = self.token_id(adjacency.word, adjacency.pos)
        return self.tokens[g], self.tokens[self.next_tok[g]]

    def degree(self, vertex: Vertex) -> int:
        """Edge-ends at the vertex; a self-loop counts twice."""
        return self.degrees()[vertex]

    def degrees(self) -> Counter[Vertex]:
        counts: Counter[Vertex] = Counter()
        for g, tok in enumerate(self.tokens):
            counts[tok.vertex] += 1
            counts[self.tokens[self.next_tok[g]].vertex] += 1
        return counts

    # ── Oriented edges ───────────────────────────────────────

    def edge(self, edge_id: int) -> OrientedEdge:
        g = edge_id >> 1
        return OrientedEdge(self.word_of[g], self.pos_of[g],
                            Sign.MINUS if edge_id & 1 else Sign.PLUS)

    def edge_id(self, edge: OrientedEdge) -> int:
        return 2 * self.token_id(edge.word, edge.pos) + (0 if edge.dir is Sign.PLUS else 1)

    def edge_ends(self, edge_id: int) -> tuple[Token, Token]:
        """(from, to) tokens of an oriented edge."""
        g = edge_id >> 1
        left, right = self.tokens[g], self.tokens[self.next_tok[g]]
        return (right, left) if edge_id & 1 else (left, right)

    def edge_label(self, edge: OrientedEdge) -> str:
        """Render as '(a,b)+' / '(a,b)-' with tokens in grammar syntax."""
        src, dst = self.edge_ends(self.edge_id(edge))
        return f"({src},{dst}){edge.dir}"

    # ── Debug ────────────────────────────────────────────────

    def dump(self) -> list[str]:
        """One line per adjacency: 'wordId:pos  a -- b', boundary word as 'B'."""
        lines = []
        for g, tok in enumerate(self.tokens):
            label = self.extended.word_label(self.word_of[g])
            lines.append(f"{label}:{self.pos_of[g]}  {tok} -- {self.tokens[self.next_tok[g]]}")
        return lines


def build_graph(code: TextileCode) -> TextileGraph:
    return TextileGraph(code)
