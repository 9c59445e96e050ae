import pytest
from hypothesis import given, settings, strategies as st

from oracles import strdf_ok
from strongroman import trees
from strongroman.families import spider
from strongroman.graph import Graph, GraphError, cycle_graph, path_graph, random_trees, star_graph
from strongroman.trees import (
    ConstructionAuditError,
    construct_tree_strdf,
    feasible_band,
    realize_parameters,
    realize_tree,
)


def check(t, w):
    adj = [list(t.neighbors(v)) for v in range(t.n)]
    assert strdf_ok(adj, w.labeling.values)
    assert w.weight <= 6 * t.n // 7


def test_extremal_spider():
    w = construct_tree_strdf(spider(3, 3))
    check(spider(3, 3), w)
    assert w.weight == 6


def test_path_6():
    w = construct_tree_strdf(path_graph(6))
    check(path_graph(6), w)
    assert w.weight <= 5


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 60), st.integers(0, 10**6))
def test_random_trees_without_fallback(n, seed):
    t = next(random_trees(n, 1, seed=seed))
    w = construct_tree_strdf(t)
    check(t, w)
    assert not w.used_fallback
    assert w.case_trace


def test_rejects_non_trees():
    with pytest.raises(GraphError):
        construct_tree_strdf(cycle_graph(5))
    with pytest.raises(GraphError):
        construct_tree_strdf(path_graph(2))


def test_audit_fallback_and_error(monkeypatch):
    monkeypatch.setattr(trees._Builder, "build", lambda self, adj: {v: 0 for v in adj})
    small = star_graph(6)
    w = construct_tree_strdf(small)
    assert w.used_fallback and w.weight == 4
    with pytest.raises(ConstructionAuditError):
        construct_tree_strdf(path_graph(trees.FALLBACK_LIMIT + 1))


def test_band():
    assert feasible_band(10) == (6, 8)
    assert feasible_band(7) == (4, 6)


def test_realize_examples():
    r = realize_tree(3, 2)
    assert r.tree.edges == path_graph(3).edges
    r = realize_tree(4, 3)
    assert r.tree.edges == star_graph(4).edges
    assert realize_parameters(10, 6) == (0, 1, 7)
    r = realize_tree(10, 6, certify="solver")
    assert str(r.spec) == "gnqjl:0,1,7" and r.value == 6


@pytest.mark.parametrize("n,p", [(10, 5), (10, 9), (2, 1)])
def test_realize_out_of_band(n, p):
    with pytest.raises(ValueError):
        realize_tree(n, p)


def test_realize_bad_mode():
    with pytest.raises(ValueError):
        realize_tree(10, 6, certify="guess")
