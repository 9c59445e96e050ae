"""Strong Roman domination: exact solvers, bounds, tree constructions and
the planar hardness gadget."""

from .graph import Graph, GraphError, ParseError, parse_edge_list
from .labeling import Labeling, is_rdf, is_strdf, verify_rdf, verify_strdf
from .solvers import (
    SolveResult,
    solve_domination_exact,
    solve_roman_exact,
    solve_strdf_exact,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "Labeling",
    "ParseError",
    "SolveResult",
    "is_rdf",
    "is_strdf",
    "parse_edge_list",
    "solve_domination_exact",
    "solve_roman_exact",
    "solve_strdf_exact",
    "verify_rdf",
    "verify_strdf",
]
