"""Exact solvers for the domination, Roman domination and strong Roman
domination numbers.

Both Roman-type solvers search over the zero set ``B0``. Some optimal
labeling has a normal form: zero vertices get 0, defenders get exactly
their threshold, every other vertex gets 1. So a fixed zero set leaves a
weighted set cover problem (defenders cover the zero set), solved exactly
by :func:`_cover_search`. The outer search prunes with the counting bound
``cost >= (n + #nonzero) / 2``.

Witnesses are the lexicographically smallest optimal normal-form labeling;
a second pass with the optimum known enumerates ties to find it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .graph import Graph
from .labeling import Labeling, defense_threshold

DEFAULT_BUDGET = 10**8

STRDF = "strdf"
ROMAN = "roman"
DOMINATION = "domination"


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SolveResult:
    problem: str
    value: int | None
    witness: Labeling | None
    nodes_explored: int
    elapsed: float
    status: str = "optimal"
    lower_bound: int | None = None
    upper_bound: int | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_dict(self, include_witness: bool = True) -> dict:
        out = {
            "problem": self.problem,
            "status": self.status,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "nodes_explored": self.nodes_explored,
            "elapsed_seconds": round(self.elapsed, 6),
        }
        if include_witness and self.witness is not None:
            out["witness"] = list(self.witness.values)
        return out


class _Counter:
    __slots__ = ("nodes", "budget", "deadline")

    def __init__(self, budget: int, time_limit: float | None):
        self.nodes = 0
        self.budget = budget
        self.deadline = None if time_limit is None else time.perf_counter() + time_limit

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted
        if self.deadline is not None and not self.nodes & 0xFFF:
            if time.perf_counter() > self.deadline:
                raise BudgetExhausted


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _cover_search(
    universe: int,
    cands: Sequence[tuple[int, int]],
    limit: int,
    lower: Callable[[int], int],
    counter: _Counter,
    visit: Callable[[tuple[int, ...], int], None] | None = None,
) -> tuple[int, tuple[int, ...]] | None:
    """Exact minimum weight set cover of ``universe`` by ``cands``.

    ``cands`` holds ``(mask, weight)`` pairs, weights >= 1. Only covers of
    cost <= ``limit`` are considered. ``lower(uncovered)`` must never exceed
    the cost still needed. Without ``visit`` the cheapest cover is returned
    as ``(cost, chosen indices)``; with ``visit`` every cover of cost <=
    ``limit`` is reported once and nothing is returned.
    """
    containing: dict[int, list[int]] = {}
    for e in _bits(universe):
        bit = 1 << e
        containing[e] = [i for i, (m, _) in enumerate(cands) if m & bit]
        if not containing[e]:
            return None

    best_cost = limit + 1
    best_choice: tuple[int, ...] | None = None

    def rec(uncovered: int, cost: int, chosen: tuple[int, ...], banned: int) -> None:
        nonlocal best_cost, best_choice
        counter.tick()
        if uncovered == 0:
            if visit is not None:
                if cost <= limit:
                    visit(chosen, cost)
            elif cost < best_cost:
                best_cost, best_choice = cost, chosen
            return
        bound = best_cost if visit is None else limit + 1
        if cost + lower(uncovered) >= bound:
            return
        # branch on the uncovered element with the fewest usable sets
        pick = -1
        pick_opts: list[int] = []
        for e in _bits(uncovered):
            opts = [i for i in containing[e] if not banned >> i & 1]
            if pick < 0 or len(opts) < len(pick_opts):
                pick, pick_opts = e, opts
                if len(opts) <= 1:
                    break
        for i in pick_opts:
            mask, w = cands[i]
            rec(uncovered & ~mask, cost + w, chosen + (i,), banned)
            banned |= 1 << i

    rec(universe, 0, (), 0)
    if visit is not None or best_choice is None:
        return None
    return best_cost, best_choice


# --- per-problem pieces -----------------------------------------------------


def _strdf_candidates(g: Graph, zmask: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Possible defenders of ``zmask`` with their extra cost over label 1."""
    ids, cands = [], []
    for w in range(g.n):
        if zmask >> w & 1:
            continue
        covered = g.masks[w] & zmask
        if covered:
            ids.append(w)
            cands.append((covered, (covered.bit_count() + 1) // 2))
    return ids, cands


def _roman_candidates(g: Graph, zmask: int) -> tuple[list[int], list[tuple[int, int]]]:
    ids, cands = [], []
    for w in range(g.n):
        if zmask >> w & 1:
            continue
        covered = g.masks[w] & zmask
        if covered:
            ids.append(w)
            cands.append((covered, 1))
    return ids, cands


def _half_up(uncovered: int) -> int:
    return (uncovered.bit_count() + 1) // 2


class _ZeroSetProblem:
    """Shared machinery for the two Roman-type problems on one component."""

    def __init__(self, g: Graph, kind: str, counter: _Counter):
        self.g = g
        self.kind = kind
        self.counter = counter
        self.n = g.n
        self.delta = max(g.max_degree, 1)
        if kind == STRDF:
            self.candidates = _strdf_candidates
            self.cover_lower = _half_up
        else:
            self.candidates = _roman_candidates
            delta = self.delta
            self.cover_lower = lambda u: -(-u.bit_count() // delta)

    def lower(self, nonzero: int) -> int:
        """Lower bound on the cost given ``nonzero`` vertices forced non-zero."""
        if self.kind == STRDF:
            return (self.n + nonzero + 1) // 2
        return nonzero + -(-(self.n - nonzero) // self.delta)

    def labeling(self, zmask: int, defenders: Sequence[int]) -> list[int]:
        g = self.g
        f = [0 if zmask >> v & 1 else 1 for v in range(self.n)]
        for w in defenders:
            if self.kind == STRDF:
                f[w] = defense_threshold((g.masks[w] & zmask).bit_count())
            else:
                f[w] = 2
        return f

    def initial(self) -> list[int]:
        """Cheap valid labeling: a maximum degree vertex defends its neighbours."""
        g = self.g
        v = max(range(self.n), key=lambda x: (g.degree(x), -x))
        zmask = g.masks[v]
        return self.labeling(zmask, [v] if zmask else [])

    def _feasible(self, v: int, znew: int) -> bool:
        masks = self.g.masks
        if not masks[v] & ~znew:
            return False
        for w in _bits(masks[v] & znew):
            if not masks[w] & ~znew:
                return False
        return True

    def optimum(self) -> tuple[int, list[int]]:
        """First pass: optimal value with some witness."""
        f0 = self.initial()
        best = [sum(f0), f0]
        n, masks = self.n, self.g.masks
        order = _bfs_order(self.g)
        tick = self.counter.tick

        def dfs(i: int, zmask: int, nonzero: int) -> None:
            tick()
            if self.lower(nonzero) >= best[0]:
                return
            if i == n:
                base = n - zmask.bit_count()
                limit = best[0] - 1 - base
                ids, cands = self.candidates(self.g, zmask)
                res = _cover_search(zmask, cands, limit, self.cover_lower, self.counter)
                if res is not None:
                    extra, chosen = res
                    best[0] = base + extra
                    best[1] = self.labeling(zmask, [ids[k] for k in chosen])
                return
            v = order[i]
            znew = zmask | 1 << v
            if self._feasible(v, znew):
                dfs(i + 1, znew, nonzero)
            dfs(i + 1, zmask, nonzero + 1)

        if n > 0:
            dfs(0, 0, 0)
        return best[0], best[1]

    def lex_min(self, opt: int) -> list[int]:
        """Second pass: lexicographically smallest optimal normal-form labeling."""
        n = self.n
        inc: list[list[int] | None] = [None]
        state = [0] * n  # 0 zero, 1 non-zero, for decided prefix
        tick = self.counter.tick

        def prefix_dominated(i: int) -> bool:
            g_lab = inc[0]
            if g_lab is None:
                return False
            for j in range(i):
                lb = state[j]
                gj = g_lab[j]
                if lb == gj:
                    continue
                return lb > gj
            return False

        def dfs(i: int, zmask: int, nonzero: int) -> None:
            tick()
            if self.lower(nonzero) > opt or prefix_dominated(i):
                return
            if i == n:
                base = n - zmask.bit_count()
                ids, cands = self.candidates(self.g, zmask)

                def visit(chosen, cost):
                    f = self.labeling(zmask, [ids[k] for k in chosen])
                    if inc[0] is None or f < inc[0]:
                        inc[0] = f

                _cover_search(zmask, cands, opt - base, self.cover_lower, self.counter, visit)
                return
            znew = zmask | 1 << i
            if self._feasible(i, znew):
                state[i] = 0
                dfs(i + 1, znew, nonzero)
            state[i] = 1
            dfs(i + 1, zmask, nonzero + 1)

        dfs(0, 0, 0)
        assert inc[0] is not None, "optimum found in the first pass must be re-found"
        return inc[0]


def _bfs_order(g: Graph) -> list[int]:
    seen = [False] * g.n
    order = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        for v in queue:
            order.append(v)
            for w in sorted(g.adj[v]):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _gminimo_bound(n: int) -> int:
    return (n + 2) // 2


def _solve_by_components(
    g: Graph,
    kind: str,
    budget: int,
    time_limit: float | None,
    lexicographic: bool,
) -> SolveResult:
    if g.n == 0:
        raise ValueError("the graph must have at least one vertex")
    start = time.perf_counter()
    counter = _Counter(budget, time_limit)
    labels = [0] * g.n
    total = 0
    lower = upper = 0
    complete = True
    for comp in g.components:
        sub, old = g.induced_subgraph(comp)
        problem = _ZeroSetProblem(sub, kind, counter)
        if not complete:
            f = problem.initial()
            lower += _component_lower(sub, kind)
            upper += sum(f)
        else:
            try:
                opt, f = problem.optimum()
                if lexicographic:
                    f = problem.lex_min(opt)
                total += opt
                lower += opt
                upper += opt
            except BudgetExhausted:
                complete = False
                f = problem.initial()
                lower += _component_lower(sub, kind)
                upper += sum(f)
        for local, v in enumerate(old):
            labels[v] = f[local]
    elapsed = time.perf_counter() - start
    if complete:
        return SolveResult(kind, total, Labeling(labels), counter.nodes, elapsed,
                           "optimal", total, total)
    return SolveResult(kind, None, Labeling(labels), counter.nodes, elapsed,
                       "incomplete", lower, upper)


def _component_lower(sub: Graph, kind: str) -> int:
    if kind == STRDF:
        return _gminimo_bound(sub.n)
    return 1 if sub.n <= 2 else 2


def solve_strdf_exact(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    time_limit: float | None = None,
    lexicographic: bool = True,
) -> SolveResult:
    """Strong Roman domination number with a witness labeling.

    When the node ``budget`` or ``time_limit`` runs out the result has
    status ``"incomplete"``, ``value`` None and a bracketing
    ``(lower_bound, upper_bound)`` pair; the witness is then the best
    labeling known, still valid.
    """
    return _solve_by_components(g, STRDF, budget, time_limit, lexicographic)


def solve_roman_exact(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    time_limit: float | None = None,
    lexicographic: bool = True,
) -> SolveResult:
    return _solve_by_components(g, ROMAN, budget, time_limit, lexicographic)


def solve_domination_exact(
    g: Graph, budget: int = DEFAULT_BUDGET, time_limit: float | None = None
) -> SolveResult:
    """Domination number; the witness is the 0/1 indicator of a minimum
    dominating set (the first one found, deterministic)."""
    if g.n == 0:
        raise ValueError("the graph must have at least one vertex")
    start = time.perf_counter()
    counter = _Counter(budget, time_limit)
    closed = [m | 1 << v for v, m in enumerate(g.masks)]
    chosen_all: list[int] = []
    total = 0
    try:
        for comp in g.components:
            universe = 0
            for v in comp:
                universe |= 1 << v
            cands = [(closed[v], 1) for v in comp]
            size = max(c.bit_count() for c, _ in cands)
            res = _cover_search(
                universe, cands, len(comp), lambda u: -(-u.bit_count() // size), counter
            )
            assert res is not None
            cost, chosen = res
            total += cost
            chosen_all.extend(comp[k] for k in chosen)
    except BudgetExhausted:
        elapsed = time.perf_counter() - start
        return SolveResult(DOMINATION, None, None, counter.nodes, elapsed,
                           "incomplete", len(g.components), g.n)
    labels = [0] * g.n
    for v in chosen_all:
        labels[v] = 1
    elapsed = time.perf_counter() - start
    return SolveResult(DOMINATION, total, Labeling(labels), counter.nodes, elapsed,
                       "optimal", total, total)


def minimal_cost_for_zero_set(g: Graph, zero_set) -> tuple[int, Labeling] | None:
    """Cheapest strong Roman labeling whose zero set is exactly ``zero_set``.

    Returns None when some zero vertex has no neighbour outside the set.
    """
    zmask = 0
    for v in zero_set:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
        zmask |= 1 << v
    for v in _bits(zmask):
        if not g.masks[v] & ~zmask:
            return None
    ids, cands = _strdf_candidates(g, zmask)
    counter = _Counter(DEFAULT_BUDGET, None)
    base = g.n - zmask.bit_count()
    res = _cover_search(zmask, cands, g.n, _half_up, counter)
    if res is None:
        return None
    extra, chosen = res
    f = [0 if zmask >> v & 1 else 1 for v in range(g.n)]
    for k in chosen:
        w = ids[k]
        f[w] = defense_threshold((g.masks[w] & zmask).bit_count())
    return base + extra, Labeling(f)


def gamma_strdf(g: Graph, **kwargs) -> int:
    res = solve_strdf_exact(g, lexicographic=False, **kwargs)
    if res.value is None:
        raise BudgetExhausted(f"search stopped with bounds {res.lower_bound}..{res.upper_bound}")
    return res.value


def gamma_roman(g: Graph, **kwargs) -> int:
    res = solve_roman_exact(g, lexicographic=False, **kwargs)
    if res.value is None:
        raise BudgetExhausted(f"search stopped with bounds {res.lower_bound}..{res.upper_bound}")
    return res.value


def gamma(g: Graph, **kwargs) -> int:
    res = solve_domination_exact(g, **kwargs)
    if res.value is None:
        raise BudgetExhausted("domination search stopped early")
    return res.value
