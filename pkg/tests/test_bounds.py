import math

import pytest

from oracles import strdf_ok
from strongroman.bounds import (
    bounds_report,
    lower_order,
    n_minus_2_witness,
    upper_diameter,
    upper_girth,
    upper_max_degree,
    upper_probabilistic,
)
from strongroman.families import double_star
from strongroman.graph import complete_graph, cycle_graph, disjoint_union, path_graph, star_graph
from strongroman.solvers import gamma_strdf


def test_path_7():
    g = path_graph(7)
    assert lower_order(7) == 4
    assert upper_max_degree(g) == 6
    assert upper_diameter(g) == 5
    assert upper_girth(g) is None
    assert gamma_strdf(g) == 5 == math.ceil(14 / 3)


def test_complete_5_probabilistic():
    g = complete_graph(5)
    assert upper_probabilistic(g) == pytest.approx(3 * (math.log(5 / 3) + 1))
    assert gamma_strdf(g) == 3
    rep = bounds_report(g)
    assert rep.upper_probabilistic_floor == 4


def test_probabilistic_not_applicable_on_paths():
    assert upper_probabilistic(path_graph(5)) is None
    rep = bounds_report(path_graph(5))
    assert "upper_probabilistic" in rep.reasons


def test_star_9_meets_lower_bound():
    g = star_graph(9)
    assert lower_order(9) == 5 == gamma_strdf(g)


def test_n_minus_2_witnesses():
    w = n_minus_2_witness(path_graph(7))
    assert w.applicable and w.condition == 1
    adj = [list(path_graph(7).neighbors(v)) for v in range(7)]
    assert strdf_ok(adj, w.labeling.values) and w.labeling.weight == 5
    assert not n_minus_2_witness(complete_graph(4)).applicable
    ds = double_star(3, 3)
    w = n_minus_2_witness(ds)
    assert w.applicable and w.labeling.weight == ds.n - 2 == 6
    assert strdf_ok([list(ds.neighbors(v)) for v in range(ds.n)], w.labeling.values)


def test_report_on_disconnected_graph():
    rep = bounds_report(disjoint_union(cycle_graph(4), path_graph(2)))
    assert rep.upper_diameter is None and "upper_diameter" in rep.reasons
    assert rep.upper_girth == 6 - 1
    d = rep.to_dict()
    assert d["upper_diameter"] is None and d["n_minus_2_witness"] is None


def test_report_without_solver_values():
    g = path_graph(25)
    rep = bounds_report(g)
    assert rep.lower_roman is None and rep.upper_domination is None
    assert set(rep.reasons) >= {"lower_roman", "upper_domination"}
    rep = bounds_report(g, gamma_value=9, gamma_r_value=17)
    assert rep.upper_domination == 2 * 9 and rep.best_lower == 17
