import pytest

from bakergame.fileio import (
    FormatError,
    parse_embedding,
    parse_graph,
    write_embedding,
    write_graph,
)
from bakergame.generators import (
    gen_apex_grid,
    gen_diag_grid,
    gen_grid,
    gen_ktree,
    gen_random_instance,
)
from bakergame.graph import check_chordal_ordering, validate_embedding


def test_grid_shape():
    g = gen_grid(3, 4)
    assert g.n == 12
    # [TRIVIAL] rows*(cols-1) + (rows-1)*cols edges
    assert g.m == 3 * 3 + 2 * 4
    assert g.has_edge(0, 1) and g.has_edge(0, 4) and not g.has_edge(3, 4)


def test_apex_grid_shape():
    g = gen_apex_grid(3)
    assert g.n == 10
    # apex 0 adjacent to every grid vertex
    assert all(g.has_edge(0, v) for v in range(1, 10))
    assert g.m == 9 + 12


def test_diag_grid_embedding_valid():
    g, emb = gen_diag_grid(3)
    assert g.n == 9
    validate_embedding(g, emb)  # raises on bad spacing or missing edges
    # diagonal neighbors present
    assert g.has_edge(0, 4)


def test_ktree_is_chordal_with_left_degree():
    for seed in range(10):
        g = gen_ktree(12, 3, seed=seed)
        ok, d = check_chordal_ordering(g)
        assert ok and d <= 3
        assert g.m <= 3 * g.n


def test_ktree_deterministic():
    a = gen_ktree(10, 2, seed=7)
    b = gen_ktree(10, 2, seed=7)
    assert a.edge_list() == b.edge_list()


def test_random_instance_kinds():
    g = gen_grid(2, 3)
    dom = gen_random_instance("domset", g, seed=1)
    assert dom.demand <= g.vertex_set
    mis = gen_random_instance("mis", g, seed=1)
    assert mis.forbidden <= g.vertex_set
    col = gen_random_instance("ccolorable", g, seed=1, colors=3)
    for v, allowed in col.lists:
        assert allowed and allowed <= {1, 2, 3}


def test_graph_roundtrip(tmp_path):
    g = gen_grid(3, 3)
    g.annotations["demand"] = {0, 4, 8}
    p = tmp_path / "g.gr"
    p.write_text(write_graph(g))
    h = parse_graph(p.read_text())
    assert h.vertices == g.vertices
    assert h.edge_list() == g.edge_list()
    assert h.annotations["demand"] == {0, 4, 8}


def test_embedding_roundtrip(tmp_path):
    g, emb = gen_diag_grid(2)
    p = tmp_path / "e.emb"
    p.write_text(write_embedding(emb))
    emb2 = parse_embedding(p.read_text())
    assert emb2.dim == emb.dim and emb2.beta == emb.beta
    assert emb2.coords == emb.coords


def test_parse_graph_comments_and_blanks():
    text = "# header\n\np graph 3 2\ne 0 1\n# mid\ne 1 2\n"
    g = parse_graph(text)
    assert g.n == 3 and g.m == 2


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("e 0 1\n", 1),  # edge before header
        ("p graph 2 1\ne 0 2\n", 2),  # endpoint out of range
        ("p graph 2 2\ne 0 1\n", 1),  # declared edge count wrong, reported at header
        ("p graph 2 1\ne 0\n", 2),  # malformed edge line
    ],
)
def test_parse_graph_errors_carry_line_numbers(text, lineno):
    with pytest.raises(FormatError) as exc:
        parse_graph(text)
    assert exc.value.lineno == lineno


def test_bare_annotation_declares_empty_set():
    g = parse_graph("p graph 2 1\ne 0 1\na hit:0\n")
    assert g.annotations["hit:0"] == frozenset()
    assert "a hit:0\n" in write_graph(g)


def test_parse_embedding_errors():
    with pytest.raises(FormatError):
        parse_embedding("c 0 1.0\n")
    with pytest.raises(FormatError) as exc:
        parse_embedding("p embed 2 1 1\nc 0 0.0\nc 0 1.0\n")
    assert exc.value.lineno == 3
    with pytest.raises(FormatError):
        parse_embedding("p embed 2 1 1\nc 0 0.0\n")  # missing vertex 1
