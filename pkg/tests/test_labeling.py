import pytest
from hypothesis import given, settings, strategies as st

from oracles import rdf_ok, strdf_ok
from strongroman.graph import Graph, ParseError, complete_graph, path_graph
from strongroman.labeling import (
    Labeling,
    OrderMismatchError,
    defense_threshold,
    is_rdf,
    is_strdf,
    normalize_strdf,
    parse_labeling,
    verify_rdf,
    verify_strdf,
    weight,
)

# Left graph of the introductory figures: a hub (8) with twelve neighbours,
# two of which (2 and 5) also touch vertex 1. Vertex ids follow the drawing
# minus one.
LEFT_EDGES = [(7, v) for v in (1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13)] + [(1, 0), (0, 4)]
LEFT_ROMAN = [1, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0]
LEFT_STRONG = [1, 0, 0, 0, 0, 0, 0, 7, 0, 0, 0, 0, 0, 0]

# Right graph (vertices 15..28 of the drawing, shifted to 0..13).
RIGHT_EDGES = [(3, 6), (6, 2), (2, 1), (1, 0), (0, 5), (5, 4), (5, 6), (6, 8), (8, 7),
               (6, 9), (9, 12), (10, 8), (8, 11), (9, 13)]
RIGHT_ROMAN = [0, 1, 0, 0, 0, 2, 2, 0, 2, 2, 0, 0, 0, 0]
RIGHT_STRONG = [0, 1, 0, 0, 0, 2, 2, 0, 3, 2, 0, 0, 0, 0]

# Two stars K_{1,4} whose centres share a middle vertex.
TWIN_EDGES = [(0, 3), (1, 3), (4, 3), (2, 3), (3, 5), (5, 7), (6, 7), (8, 7), (9, 7), (10, 7)]
TWIN_STRONG_MIN = [0, 0, 0, 3, 0, 1, 0, 3, 0, 0, 0]


def test_figure_left_strong():
    g = Graph(14, LEFT_EDGES)
    rep = verify_strdf(g, LEFT_STRONG)
    assert rep.valid and rep.weight == 8
    assert rep.thresholds[7] == 7


def test_figure_left_roman_is_not_strong():
    g = Graph(14, LEFT_EDGES)
    assert verify_rdf(g, LEFT_ROMAN).valid and verify_rdf(g, LEFT_ROMAN).weight == 3
    rep = verify_strdf(g, LEFT_ROMAN)
    assert not rep.valid
    assert rep.thresholds[7] == 7 > LEFT_ROMAN[7]


def test_figure_right():
    g = Graph(14, RIGHT_EDGES)
    assert is_rdf(g, RIGHT_ROMAN) and weight(RIGHT_ROMAN) == 9
    rep = verify_strdf(g, RIGHT_STRONG)
    assert rep.valid and rep.weight == 10


def test_twin_star_strong_minimum():
    g = Graph(11, TWIN_EDGES)
    assert is_strdf(g, TWIN_STRONG_MIN) and weight(TWIN_STRONG_MIN) == 7


def test_trivial_labelings():
    assert weight([0] * 5) == 0
    g = complete_graph(4)
    rep = verify_strdf(g, [1] * 4)
    assert rep.valid and rep.weight == 4
    k2 = path_graph(2)
    assert len(verify_rdf(k2, [0, 0]).violations) == 2
    with pytest.raises(ValueError):
        verify_rdf(k2, [3, 0])
    with pytest.raises(OrderMismatchError):
        verify_strdf(k2, [1, 1, 1])
    with pytest.raises(ValueError):
        Labeling([1, -1])


def test_isolated_zero_vertex():
    rep = verify_strdf(Graph(1), [0])
    assert not rep.valid and rep.violations[0].gap is None


def test_cap_warning_does_not_invalidate():
    rep = verify_strdf(path_graph(3), [0, 5, 0])
    assert rep.valid and rep.cap_warnings


def test_thresholds():
    assert [defense_threshold(z) for z in range(6)] == [1, 2, 2, 3, 3, 4]


def test_parse_labeling_formats():
    assert parse_labeling("[0, 2, 0]").values == (0, 2, 0)
    assert parse_labeling("0 0\n1 2 # hub\n2 0\n").values == (0, 2, 0)
    for bad in ("[0, -1]", "0 1\n0 2\n", "0 1\n2 1\n", "0 x\n", "[1,"):
        with pytest.raises(ParseError):
            parse_labeling(bad)
    with pytest.raises(ParseError):
        parse_labeling("[1, 1]", order=3)


small_graphs = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
            lambda e: e[0] != e[1]), max_size=12),
        st.lists(st.integers(0, 4), min_size=n, max_size=n),
    )
)


@settings(max_examples=300, deadline=None)
@given(small_graphs)
def test_verifier_matches_definition(case):
    n, edges, f = case
    g = Graph(n, edges)
    adj = [list(g.neighbors(v)) for v in range(n)]
    assert is_strdf(g, f) == strdf_ok(adj, f)
    roman = [min(x, 2) for x in f]
    assert is_rdf(g, roman) == rdf_ok(adj, roman)


@settings(max_examples=200, deadline=None)
@given(small_graphs)
def test_strong_zero_has_heavy_neighbour(case):
    n, edges, f = case
    g = Graph(n, edges)
    if is_strdf(g, f):
        for v in range(n):
            if f[v] == 0:
                assert any(f[w] >= 2 for w in g.adj[v])


@settings(max_examples=200, deadline=None)
@given(small_graphs)
def test_raising_roman_twos_gives_strong(case):
    n, edges, f = case
    g = Graph(n, edges)
    roman = [min(x, 2) for x in f]
    if is_rdf(g, roman):
        cap = 1 + (g.max_degree + 1) // 2
        assert is_strdf(g, [cap if x == 2 else x for x in roman])


@settings(max_examples=200, deadline=None)
@given(small_graphs)
def test_normalize_keeps_validity(case):
    n, edges, f = case
    g = Graph(n, edges)
    if is_strdf(g, f):
        h = normalize_strdf(g, f)
        assert is_strdf(g, h) and sum(h) <= sum(f)
        assert [x == 0 for x in h] == [x == 0 for x in f]
