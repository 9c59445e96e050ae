"""Closed-form lower and upper bounds on the strong Roman domination number."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, diameter, girth
from .labeling import Labeling, is_strdf
from .solvers import gamma, gamma_roman

# Largest order for which the report runs the exponential solvers on its own.
SOLVER_LIMIT = 20


def lower_order(n: int) -> int:
    return (n + 2) // 2


def upper_max_degree(g: Graph) -> int:
    return g.n - g.max_degree // 2


def upper_domination(g: Graph, gamma_value: int) -> int:
    return (1 + (g.max_degree + 1) // 2) * gamma_value


def upper_diameter(g: Graph) -> int | None:
    if not g.is_connected:
        return None
    return g.n - (1 + int(diameter(g))) // 3


def upper_girth(g: Graph) -> int | None:
    gg = girth(g)
    if math.isinf(gg):
        return None
    return g.n - int(gg) // 3


def upper_probabilistic(g: Graph) -> float | None:
    """Real-valued bound, defined only when ceil(Delta/2) < delta."""
    half = (g.max_degree + 1) // 2
    delta = g.min_degree
    if not half < delta:
        return None
    return (1 + half) * g.n / (delta + 1) * (math.log((1 + delta) / (1 + half)) + 1)


@dataclass(frozen=True)
class NMinus2Witness:
    applicable: bool
    condition: int | None = None
    x: int | None = None
    y: int | None = None
    labeling: Labeling | None = None


def _lemma_labeling(g: Graph, x: int, y: int) -> Labeling | None:
    nx_ = sorted(g.adj[x] - g.adj[y] - {y})
    ny_ = sorted(g.adj[y] - g.adj[x] - {x})
    if len(nx_) < 2 or len(ny_) < 2:
        return None
    f = [1] * g.n
    f[x] = f[y] = 2
    for v in nx_[:2] + ny_[:2]:
        f[v] = 0
    return Labeling(f)


def n_minus_2_witness(g: Graph) -> NMinus2Witness:
    """Look for a pair of vertices certifying weight ``n - 2``.

    Three sufficient conditions are tried in order: degree >= 2 vertices at
    distance >= 3; adjacent degree >= 3 vertices without common neighbours;
    non-adjacent degree >= 3 vertices sharing at most one neighbour.
    """
    if g.n < 6 or not g.is_connected:
        return NMinus2Witness(False)
    dist = g.distance_matrix
    deg = g.degrees
    checks = [
        (1, lambda x, y: deg[x] >= 2 and deg[y] >= 2 and dist[x][y] >= 3),
        (2, lambda x, y: deg[x] >= 3 and deg[y] >= 3 and g.has_edge(x, y)
            and not g.adj[x] & g.adj[y]),
        (3, lambda x, y: deg[x] >= 3 and deg[y] >= 3 and not g.has_edge(x, y)
            and len(g.adj[x] & g.adj[y]) <= 1),
    ]
    for cond, test in checks:
        for x, y in combinations(range(g.n), 2):
            if test(x, y):
                f = _lemma_labeling(g, x, y)
                if f is None or not is_strdf(g, f):
                    raise AssertionError(f"lemma labeling failed for pair {(x, y)}")
                return NMinus2Witness(True, cond, x, y, f)
    return NMinus2Witness(False)


@dataclass
class BoundsReport:
    n: int
    lower_order: int
    lower_roman: int | None
    upper_domination: int | None
    upper_max_degree: int
    upper_diameter: int | None
    upper_girth: int | None
    upper_probabilistic: float | None
    upper_probabilistic_floor: int | None
    upper_n_minus_2: int | None
    n_minus_2: NMinus2Witness
    reasons: dict[str, str] = field(default_factory=dict)

    def lower_bounds(self) -> dict[str, int]:
        out = {"lower_order": self.lower_order}
        if self.lower_roman is not None:
            out["lower_roman"] = self.lower_roman
        return out

    def upper_bounds(self) -> dict[str, int]:
        """Applicable integer upper bounds (the probabilistic one as its floor)."""
        names = ("upper_domination", "upper_max_degree", "upper_diameter",
                 "upper_girth", "upper_n_minus_2")
        out = {k: getattr(self, k) for k in names if getattr(self, k) is not None}
        if self.upper_probabilistic_floor is not None:
            out["upper_probabilistic"] = self.upper_probabilistic_floor
        return out

    @property
    def best_lower(self) -> int:
        return max(self.lower_bounds().values())

    @property
    def best_upper(self) -> int:
        return min(self.upper_bounds().values())

    def to_dict(self) -> dict:
        w = self.n_minus_2
        return {
            "n": self.n,
            "lower_order": self.lower_order,
            "lower_roman": self.lower_roman,
            "upper_domination": self.upper_domination,
            "upper_max_degree": self.upper_max_degree,
            "upper_diameter": self.upper_diameter,
            "upper_girth": self.upper_girth,
            "upper_probabilistic": self.upper_probabilistic,
            "upper_probabilistic_floor": self.upper_probabilistic_floor,
            "upper_n_minus_2": self.upper_n_minus_2,
            "n_minus_2_witness": None if w.labeling is None else {
                "condition": w.condition,
                "x": w.x,
                "y": w.y,
                "labeling": list(w.labeling.values),
            },
            "reasons": dict(self.reasons),
        }


def bounds_report(
    g: Graph, gamma_value: int | None = None, gamma_r_value: int | None = None
) -> BoundsReport:
    """Evaluate every bound that applies to ``g``.

    ``gamma_value`` and ``gamma_r_value`` are computed with the exact solvers
    when omitted and ``g`` has at most ``SOLVER_LIMIT`` vertices; above that
    the bounds that need them are marked as missing.
    """
    if g.n == 0:
        raise ValueError("the graph must have at least one vertex")
    reasons: dict[str, str] = {}
    if gamma_value is None and g.n <= SOLVER_LIMIT:
        gamma_value = gamma(g)
    if gamma_r_value is None and g.n <= SOLVER_LIMIT:
        gamma_r_value = gamma_roman(g)
    if gamma_value is None:
        reasons["upper_domination"] = f"domination number not supplied and n > {SOLVER_LIMIT}"
    if gamma_r_value is None:
        reasons["lower_roman"] = f"Roman domination number not supplied and n > {SOLVER_LIMIT}"

    up_diam = upper_diameter(g)
    if up_diam is None:
        reasons["upper_diameter"] = "graph is disconnected"
    up_girth = upper_girth(g)
    if up_girth is None:
        reasons["upper_girth"] = "graph is acyclic"
    prob = upper_probabilistic(g)
    if prob is None:
        reasons["upper_probabilistic"] = "requires ceil(Delta/2) < delta"
    wit = n_minus_2_witness(g)
    if not wit.applicable:
        reasons["upper_n_minus_2"] = "conditions not met"

    return BoundsReport(
        n=g.n,
        lower_order=lower_order(g.n),
        lower_roman=gamma_r_value,
        upper_domination=None if gamma_value is None else upper_domination(g, gamma_value),
        upper_max_degree=upper_max_degree(g),
        upper_diameter=up_diam,
        upper_girth=up_girth,
        upper_probabilistic=prob,
        upper_probabilistic_floor=None if prob is None else math.floor(prob),
        upper_n_minus_2=g.n - 2 if wit.applicable else None,
        n_minus_2=wit,
        reasons=reasons,
    )
