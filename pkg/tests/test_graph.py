from textile.core.codes import Sign, parse_code
from textile.core.enumeration import EnumSpec, enumerate_abstract
from textile.core.graph import (
    Adjacency,
    OrientedEdge,
    TextileGraph,
    TokenKind,
    Vertex,
    VertexKind,
    build_graph,
    extend,
)


def _boundary(text: str) -> str:
    return " ".join(str(t) for t in extend(parse_code(text)).boundary)


def test_boundary_word() -> None:
    assert _boundary("h1+ 1 v2- 2+ ; h2+ v1+ 1- 2") == "c h1 h2 c v1 v2"
    assert _boundary("h1+ v1+") == "c h1 c v1"
    assert _boundary("h1+ 1 h2- h3+ 1- v1+") == "c h1 h2 h3 c v1"


def test_extend_keeps_code_words(diagonal) -> None:
    extended = extend(diagonal)
    assert len(extended.words) == 3
    assert [str(t) for t in extended.words[0]] == ["h1+", "1", "v2-", "2+"]
    assert extended.words[-1][0].kind is TokenKind.CORNER


def test_diagonal_graph_sizes(diagonal) -> None:
    graph = build_graph(diagonal)
    assert graph.vertex_count == 7
    assert graph.adjacency_count == 14
    assert graph.edge_count == 28
    assert len(graph.vertices()) == 7
    assert len(graph.oriented_edges()) == 28


def test_diagonal_adjacencies(diagonal) -> None:
    graph = TextileGraph(diagonal)
    pairs = [tuple(str(t) for t in graph.endpoints(a)) for a in graph.adjacencies()]
    assert pairs[:4] == [("h1+", "1"), ("1", "v2-"), ("v2-", "2+"), ("2+", "h1+")]
    assert pairs[-6:] == [("c", "h1"), ("h1", "h2"), ("h2", "c"),
                          ("c", "v1"), ("v1", "v2"), ("v2", "c")]


def test_dump_format(diagonal) -> None:
    lines = TextileGraph(diagonal).dump()
    assert lines[0] == "0:0  h1+ -- 1"
    assert lines[3] == "0:3  2+ -- h1+"
    assert lines[4] == "1:0  h2+ -- v1+"
    assert lines[8] == "B:0  c -- h1"
    assert lines[-1] == "B:5  v2 -- c"


def test_plain_curve_graph(plain_curve) -> None:
    graph = TextileGraph(plain_curve)
    assert graph.vertex_count == 3
    assert graph.adjacency_count == 6
    assert set(graph.degrees().values()) == {4}


def test_parallel_edges_stay_distinct(plain_curve) -> None:
    graph = TextileGraph(plain_curve)
    corner_h = [
        a for a in graph.adjacencies()
        if {t.vertex for t in graph.endpoints(a)} == {Vertex(VertexKind.CORNER),
                                                      Vertex(VertexKind.H, 1)}
    ]
    assert corner_h == [Adjacency(1, 0), Adjacency(1, 1)]


def test_self_loop_counts_twice() -> None:
    graph = TextileGraph(parse_code("h1+ 1 1- ; v1+"))
    assert graph.degree(Vertex(VertexKind.V, 1)) == 4
    assert graph.degree(Vertex(VertexKind.CROSSING, 1)) == 4


def test_every_vertex_has_degree_four() -> None:
    for spec in (EnumSpec(1, 1, 1), EnumSpec(2, 1, 1), EnumSpec(1, 2, 1)):
        for code in enumerate_abstract(spec):
            graph = TextileGraph(code)
            degrees = graph.degrees()
            assert len(degrees) == graph.vertex_count
            assert set(degrees.values()) == {4}
            assert graph.adjacency_count == 2 * graph.vertex_count


def test_edge_ids_round_trip(diagonal) -> None:
    graph = TextileGraph(diagonal)
    for edge_id in range(graph.edge_count):
        edge = graph.edge(edge_id)
        assert graph.edge_id(edge) == edge_id
        assert graph.edge_id(edge.reversed) == edge_id ^ 1


def test_edge_labels(diagonal) -> None:
    graph = TextileGraph(diagonal)
    assert graph.edge_label(OrientedEdge(0, 0, Sign.PLUS)) == "(h1+,1)+"
    assert graph.edge_label(OrientedEdge(0, 0, Sign.MINUS)) == "(1,h1+)-"
    assert graph.edge_label(OrientedEdge(2, 3, Sign.MINUS)) == "(v1,c)-"
