import networkx as nx
import pytest

from oracles import cnf_satisfiable, one_negative_corpus, strdf_ok, to_nx
from strongroman.graph import ParseError
from strongroman.reduction import (
    BRUTE_FORCE_LIMIT,
    FIGURE5_DIMACS,
    SAMPLE_DIMACS,
    assignment_labeling,
    build_reduction_graph,
    make_formula,
    parse_cnf,
    satisfiable_bruteforce,
    validate_1neg3sat,
)


def test_parse_sample_and_figure():
    f = parse_cnf(SAMPLE_DIMACS)
    assert (f.num_vars, f.num_clauses) == (2, 3)
    g = parse_cnf(FIGURE5_DIMACS)
    assert (g.num_vars, g.num_clauses) == (3, 3)
    assert parse_cnf(g.to_dimacs()) == g


def test_clause_spanning_lines():
    f = parse_cnf("c hi\np cnf 3 2\n1 -2\n 3 0 -1 2 0\n")
    assert f.clauses == (frozenset({1, -2, 3}), frozenset({-1, 2}))


def test_duplicate_clause_dropped():
    f = parse_cnf("p cnf 2 2\n1 2 0\n2 1 0\n")
    assert f.num_clauses == 1 and f.warnings


@pytest.mark.parametrize(
    "text",
    ["1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 2 0\n", "p cnf 2 1\n1 2\n",
     "p cnf 2 1\n0\n", "p cnf x 1\n", "p cnf 2 1\np cnf 2 1\n1 0\n", "p cnf 2 1\n1 a 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_cnf(text)


def test_validation():
    assert validate_1neg3sat(parse_cnf(FIGURE5_DIMACS)).valid
    rep = validate_1neg3sat(make_formula(2, [[-1, 2], [-1, -2], [1, 2]]))
    assert not rep.valid and any("negatively 2 times" in v for v in rep.violations)
    rep = validate_1neg3sat(make_formula(3, [[1, 2, 3], [-1, 2], [-2, -3, 1], [3, -1]]))
    assert any("none is negative" in v for v in rep.violations)
    assert not validate_1neg3sat(make_formula(1, [[1, -1]])).valid
    assert not validate_1neg3sat(make_formula(1, [[1], [-1]])).valid
    assert validate_1neg3sat(parse_cnf(FIGURE5_DIMACS)).planarity == "unchecked"


def test_validation_matches_oracle_corpus():
    """Every formula the oracle generates is accepted."""
    for n, clauses in one_negative_corpus(3, 4):
        assert validate_1neg3sat(make_formula(n, clauses)).valid


def test_matching_needed():
    # variables 1..3 all live in the same two clauses plus one more
    f = make_formula(3, [[1, 2, -3], [-1, -2, 3], [1, 2, 3]])
    assert not validate_1neg3sat(f).valid


def test_figure5_graph():
    rg = build_reduction_graph(parse_cnf(FIGURE5_DIMACS))
    g = rg.graph
    assert g.n == 18 and g.m == 29
    assert [g.degree(c) for c in rg.clause_vertices] == [3, 2, 3]
    assert nx.check_planarity(to_nx(g))[0]
    for i, part in rg.partition.items():
        assert len(part) == 6 and set(rg.literal_vertices[i]) <= set(part)
    roles = rg.role_map()
    assert [r["role"] for r in roles["vertices"]].count("clause") == 3


def test_sample_graph():
    rg = build_reduction_graph(parse_cnf(SAMPLE_DIMACS))
    assert rg.graph.n == 13 and rg.graph.m <= 3 * 3 + 7 * 2


def test_build_rejects_invalid():
    with pytest.raises(ValueError):
        build_reduction_graph(make_formula(1, [[1, -1]]))


def test_bruteforce_sat():
    ok, a = satisfiable_bruteforce(parse_cnf(FIGURE5_DIMACS))
    assert ok and cnf_satisfiable(3, parse_cnf(FIGURE5_DIMACS).clauses)
    ok, a = satisfiable_bruteforce(parse_cnf(SAMPLE_DIMACS))
    assert ok and a == {1: True, 2: True}
    assert satisfiable_bruteforce(make_formula(3, []))[0]
    assert not satisfiable_bruteforce(make_formula(1, [[1], [-1]]))[0]
    with pytest.raises(ValueError):
        satisfiable_bruteforce(make_formula(BRUTE_FORCE_LIMIT + 1, []))


def test_assignment_labeling_figure5():
    f = parse_cnf(FIGURE5_DIMACS)
    rg = build_reduction_graph(f)
    lab = assignment_labeling(rg, {1: True, 2: False, 3: True})
    adj = [list(rg.graph.neighbors(v)) for v in range(rg.graph.n)]
    assert strdf_ok(adj, lab.values) and lab.weight == 12
