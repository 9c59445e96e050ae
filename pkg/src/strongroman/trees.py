"""Constructive labelings of weight at most floor(6n/7) on trees, and trees
with a prescribed strong Roman domination number."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .families import FamilySpec, closed_form_gamma_str, generate
from .graph import Graph, GraphError, path_graph, star_graph
from .labeling import Labeling, defense_threshold, verify_strdf
from .solvers import solve_strdf_exact

# Trees up to this order may fall back to the exact solver if the
# construction ever produced a bad labeling.
FALLBACK_LIMIT = 18

Adj = dict[int, set[int]]


class ConstructionAuditError(RuntimeError):
    def __init__(self, message: str, case_trace: list[str]):
        super().__init__(f"{message} (cases: {' > '.join(case_trace)})")
        self.case_trace = case_trace


@dataclass(frozen=True)
class TreeWitness:
    labeling: Labeling
    weight_bound: int
    case_trace: list[str] = field(default_factory=list)

    @property
    def weight(self) -> int:
        return self.labeling.weight

    @property
    def used_fallback(self) -> bool:
        return "fallback-exact" in self.case_trace

    def to_dict(self) -> dict:
        return {
            "labeling": list(self.labeling.values),
            "weight": self.weight,
            "weight_bound": self.weight_bound,
            "case_trace": list(self.case_trace),
        }


# --- small helpers on adjacency dicts -----------------------------------------


def _bfs(adj: Adj, source: int) -> tuple[dict[int, int], dict[int, int]]:
    dist = {source: 0}
    parent = {source: -1}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                parent[w] = v
                queue.append(w)
    return dist, parent


def _remove(adj: Adj, drop) -> Adj:
    drop = set(drop)
    return {v: nb - drop for v, nb in adj.items() if v not in drop}


def _normalize(adj: Adj, f: dict[int, int]) -> dict[int, int]:
    """Drop every label to the least value that keeps validity (zero set fixed)."""
    out = {}
    for v, x in f.items():
        if x == 0:
            out[v] = 0
            continue
        zeros = sum(1 for w in adj[v] if f[w] == 0)
        t = defense_threshold(zeros)
        out[v] = t if zeros and x >= t else 1
    return out


def _exact(adj: Adj) -> dict[int, int]:
    ids = sorted(adj)
    index = {v: i for i, v in enumerate(ids)}
    g = Graph(len(ids), ((index[u], index[w]) for u in ids for w in adj[u] if u < w))
    res = solve_strdf_exact(g, lexicographic=False)
    return {v: res.witness[index[v]] for v in ids}


def _path_order(adj: Adj) -> list[int]:
    start = min(v for v in adj if len(adj[v]) <= 1)
    order, prev = [start], -1
    while len(order) < len(adj):
        cur = order[-1]
        nxt = next(w for w in adj[cur] if w != prev)
        prev = cur
        order.append(nxt)
    return order


# --- base cases -----------------------------------------------------------------


def _label_star(adj: Adj) -> dict[int, int]:
    center = max(adj, key=lambda v: (len(adj[v]), -v))
    f = {v: 0 for v in adj}
    f[center] = 1 + (len(adj[center]) + 1) // 2
    return f


def _label_double_star(adj: Adj) -> dict[int, int]:
    u, v = sorted((x for x in adj if len(adj[x]) > 1), key=lambda x: (len(adj[x]), x))
    p, q = len(adj[u]) - 1, len(adj[v]) - 1  # p <= q leaves
    f = {x: 0 for x in adj}
    if p == 1:
        # v defends its q leaves and u; u's leaf keeps label 1
        f[v] = 1 + (q + 2) // 2
        (leaf,) = adj[u] - {v}
        f[leaf] = 1
    else:
        f[u] = 1 + (p + 1) // 2
        f[v] = 1 + (q + 1) // 2
    return f


def _label_path(adj: Adj) -> dict[int, int]:
    order = _path_order(adj)
    n = len(order)
    f = {v: 0 for v in order}
    for i in range(1, n, 3):
        f[order[i]] = 2
    if n % 3 == 1:
        f[order[-1]] = 1
    return f


# --- the recursion ----------------------------------------------------------------


class _Builder:
    def __init__(self):
        self.trace: list[str] = []

    def build(self, adj: Adj) -> dict[int, int]:
        return _normalize(adj, self._build(adj))

    def _small(self, adj: Adj) -> dict[int, int]:
        if len(adj) > 8:
            raise ConstructionAuditError(
                f"unexpected small-case request on {len(adj)} vertices", self.trace
            )
        self.trace.append("small-exact")
        return _exact(adj)

    def _build(self, adj: Adj) -> dict[int, int]:
        n = len(adj)
        if n <= 2:
            return self._small(adj)
        far = max(_bfs(adj, next(iter(adj)))[0].items(), key=lambda kv: (kv[1], -kv[0]))[0]
        diam = max(_bfs(adj, far)[0].values())
        if diam == 2:
            self.trace.append("star")
            return _label_star(adj)
        if diam == 3:
            self.trace.append("double-star")
            return _label_double_star(adj)
        if max(len(nb) for nb in adj.values()) <= 2:
            self.trace.append("path")
            return _label_path(adj)
        return self._general(adj, diam)

    def _choose_path(self, adj: Adj, diam: int) -> list[int]:
        deg = {v: len(nb) for v, nb in adj.items()}

        def leaf_count(x: int) -> int:
            return sum(1 for w in adj[x] if deg[w] == 1)

        best_key, best_path = None, None
        for a in sorted(v for v in adj if deg[v] == 1):
            dist, parent = _bfs(adj, a)
            if max(dist.values()) != diam:
                continue
            for b in sorted(v for v, d in dist.items() if d == diam):
                path = [b]
                while path[-1] != a:
                    path.append(parent[path[-1]])
                path.reverse()  # v1 .. vk
                v2, v3 = path[1], path[2]
                key = (deg[v2], leaf_count(v3), deg[v3])
                if best_key is None or key > best_key:
                    best_key, best_path = key, path
        return best_path

    def _general(self, adj: Adj, diam: int) -> dict[int, int]:
        path = self._choose_path(adj, diam)
        v = [None] + path  # 1-based: v[1] .. v[k]
        root = path[-1]
        _, parent = _bfs(adj, root)
        children = {x: [w for w in sorted(adj[x]) if w != parent[x]] for x in adj}
        deg = {x: len(nb) for x, nb in adj.items()}

        def subtree(x: int) -> list[int]:
            out, stack = [], [x]
            while stack:
                y = stack.pop()
                out.append(y)
                stack.extend(children[y])
            return out

        def is_leaf(x: int) -> bool:
            return deg[x] == 1

        v1, v2, v3, v4 = v[1], v[2], v[3], v[4]
        t = deg[v2]

        def extend(drop, case: str, ext) -> dict[int, int]:
            """Recurse on adj minus ``drop``; ``ext(f_prime)`` returns the new labels."""
            self.trace.append(case)
            sub = _remove(adj, drop)
            if len(sub) < 3:
                self.trace[-1] = case + ":small"
                return self._small(adj)
            fp = self.build(sub)
            f = dict(fp)
            f.update(ext(fp))
            return f

        # Case 1: v2 carries at least three leaves
        if t >= 4:
            return self._reduce_stem(adj, v2, "1", extend)

        if t == 3:
            u = next(w for w in children[v2] if w != v1)
            # 2.1
            if deg[v3] == 2:
                return extend(subtree(v3), "2.1",
                              lambda fp: {v3: 1, v2: 2, v1: 0, u: 0})
            # 2.2: another degree-3 end-stem next to v3
            for w in sorted(adj[v3]):
                if w == v2 or deg[w] != 3:
                    continue
                wl = [x for x in adj[w] if x != v3 and is_leaf(x)]
                if len(wl) == 2:
                    def ext22(fp, w=w, wl=wl):
                        return {v3: fp[v3] + 1, v2: 2, w: 2, v1: 0, u: 0, wl[0]: 0, wl[1]: 0}
                    return extend([v2, v1, u, w, *wl], "2.2", ext22)
            others = [c for c in children[v3] if c != v2]
            stems2 = [c for c in others if deg[c] == 2]
            if diam == 4:
                self.trace.append("2.diam4")
                f = {x: 0 for x in adj}
                f[v2] = 2
                f[v3] = 1 + (deg[v3] - 1 + 1) // 2
                for x in adj[v3]:
                    if x != v2 and deg[x] == 2:
                        (leaf,) = adj[x] - {v3}
                        f[leaf] = 1
                return f
            d3 = deg[v3]
            leaves2 = [children[c][0] for c in stems2]
            if d3 >= 4 and d3 % 2 == 0:
                def ext23(fp):
                    out = {x: 0 for x in subtree(v3) if x != v3}
                    out[v3] = fp[v3] + d3 // 2
                    out[v2] = 2
                    out.update({x: 1 for x in leaves2})
                    return out
                return extend([x for x in subtree(v3) if x != v3], "2.3", ext23)
            if d3 >= 5:
                def ext24(fp):
                    out = {x: 0 for x in subtree(v3)}
                    out[v3] = (d3 + 1) // 2
                    out[v2] = 2
                    out.update({x: 1 for x in leaves2})
                    return out
                return extend(subtree(v3), "2.4", ext24)
            (w,) = others
            if deg[w] == 2:
                (wl,) = children[w]
                return extend(subtree(v3), "2.5",
                              lambda fp: {v3: 2, v2: 2, wl: 1, w: 0, v1: 0, u: 0})
            return extend(subtree(v3), "2.6",
                          lambda fp: {v3: 2, v2: 2, v1: 0, u: 0, w: 0})

        # Case 3: every diametral end-stem has degree 2
        d = deg[v3]
        if diam == 4:
            self.trace.append("3.diam4")
            f = {x: 1 for x in adj}
            f[v3] = 1 + (d + 1) // 2
            for x in adj[v3]:
                f[x] = 0
            return f
        kids3 = children[v3]
        dist2_leaves = [children[c][0] for c in kids3 if deg[c] == 2]
        if d >= 3:
            if d % 2 == 0 or d >= 7:
                case = "3.1a" if d % 2 == 0 else "3.1b"
                def ext31(fp):
                    out = {x: 0 for x in kids3}
                    out.update({x: 1 for x in dist2_leaves})
                    out[v3] = 1 + (d + 1) // 2
                    return out
                return extend(subtree(v3), case, ext31)
            if d == 5:
                rest = [c for c in kids3 if c != v2]
                keep = sorted(rest, key=lambda c: (deg[c] != 1, c))[:2]
                x, y = keep
                drop = [x_ for x_ in subtree(v3) if x_ not in (v3, x, y)]
                drop += [c for k in keep for c in children[k]]
                def ext31c(fp):
                    out = {z: 1 for z in drop}
                    out.update({z: 0 for z in kids3})
                    out[v3] = fp[v3] + fp[x] + fp[y] + 1
                    return out
                return extend(drop, "3.1c", ext31c)
            # d == 3: v3 has v2 and one more child c
            (c,) = [k for k in kids3 if k != v2]
            sub3 = subtree(v3)
            def ext31d(fp):
                if fp[v4] != 0:
                    out = {z: 0 for z in sub3}
                    out[v3] = 2
                    out.update({z: 1 for z in dist2_leaves})
                    return out
                out = {z: 0 for z in sub3}
                out[v2] = 2
                if deg[c] == 2:
                    out[c] = 2
                else:
                    out[c] = 1
                return out
            return extend(sub3, "3.1d", ext31d)

        # 3.2: deg(v3) == 2
        for w in children[v4]:
            if w != v3 and deg[w] >= 4 and all(is_leaf(x) for x in children[w]):
                return self._reduce_stem(adj, w, "3.2-stem", extend)
        v5 = v[5]
        if deg[v4] == 2:
            def ext32a(fp):
                if fp[v5] == 0:
                    return {v4: 0, v2: 0, v3: 2, v1: 1}
                return {v3: 0, v1: 0, v2: 2, v4: 1}
            return extend(subtree(v4), "3.2a", ext32a)
        others = [w for w in children[v4] if w != v3]
        for w in others:
            if deg[w] == 3 and all(is_leaf(x) for x in children[w]):
                w1, w2 = children[w]
                def ext32b(fp, w=w, w1=w1, w2=w2):
                    if fp[v4] == 0:
                        return {w2: 1, w1: 2, v2: 2, w: 0, v3: 0, v1: 0}
                    return {v1: 1, v3: 2, w: 2, w1: 0, w2: 0, v2: 0}
                return extend([v1, v2, v3, w, w1, w2], "3.2b", ext32b)
        for w in others:
            if deg[w] == 2 and is_leaf(children[w][0]):
                (wl,) = children[w]
                def ext32c(fp, w=w, wl=wl):
                    if fp[v4] <= 1:
                        return {wl: 2, v2: 2, w: 0, v3: 0, v1: 0}
                    return {v4: fp[v4] + 1, wl: 1, v2: 2, w: 0, v3: 0, v1: 0}
                return extend([v1, v2, v3, w, wl], "3.2c", ext32c)
        for w3 in others:
            if deg[w3] == 2 and not is_leaf(children[w3][0]):
                (w2,) = children[w3]
                (w1,) = children[w2]
                # both three-vertex arms go; v4 pays at most one more
                def ext32d(fp, w3=w3, w2=w2, w1=w1):
                    out = {w2: 2, v2: 2, w3: 0, v3: 0, v1: 0, w1: 0}
                    if fp[v4] >= 2:
                        out[v4] = fp[v4] + 1
                    return out
                return extend([v1, v2, v3, w1, w2, w3], "3.2d", ext32d)
        leaf_kids = [w for w in others if is_leaf(w)]
        sub4 = subtree(v4)
        if deg[v4] == 3:
            (w,) = leaf_kids
            def ext32e(fp):
                if fp[v5] >= 1:
                    return {v4: 2, v2: 2, w: 0, v3: 0, v1: 0}
                return {w: 2, v2: 2, v4: 0, v3: 0, v1: 0}
            return extend(sub4, "3.2e", ext32e)
        def ext32f(fp):
            out = {z: 0 for z in sub4}
            out[v4] = 1 + (deg[v4] + 1) // 2
            out[v2] = 2
            return out
        return extend(sub4, "3.2f", ext32f)

    def _reduce_stem(self, adj: Adj, w: int, case: str, extend) -> dict[int, int]:
        # w is a stem whose subtree is w plus its leaves
        leaves = [x for x in adj[w] if len(adj[x]) == 1]
        def ext(fp):
            out = {x: 0 for x in leaves}
            # the parent may be a zero vertex of f' as well
            out[w] = defense_threshold(len(adj[w]))
            return out
        return extend([w, *leaves], case, ext)


def construct_tree_strdf(t: Graph) -> TreeWitness:
    """Strong Roman dominating function of weight at most floor(6n/7) on a
    tree, built by peeling a few vertices at the end of a diametral path and
    recursing. The result is always checked; trees of order at most
    ``FALLBACK_LIMIT`` fall back to the exact solver on a failed check."""
    if not t.is_tree:
        raise GraphError("construct_tree_strdf needs a tree")
    if t.n < 3:
        raise GraphError(f"construct_tree_strdf needs n >= 3, got {t.n}")
    adj: Adj = {v: set(t.adj[v]) for v in range(t.n)}
    builder = _Builder()
    bound = 6 * t.n // 7
    problem = None
    try:
        f = builder.build(adj)
        labels = Labeling(f[v] for v in range(t.n))
        report = verify_strdf(t, labels)
        if not report.valid:
            problem = f"invalid labeling at vertices {[x.vertex for x in report.violations]}"
        elif labels.weight > bound:
            problem = f"weight {labels.weight} exceeds {bound}"
    except ConstructionAuditError as exc:
        problem = str(exc)
    if problem is None:
        return TreeWitness(labels, bound, builder.trace)
    if t.n <= FALLBACK_LIMIT:
        builder.trace.append("fallback-exact")
        res = solve_strdf_exact(t)
        return TreeWitness(res.witness, bound, builder.trace)
    raise ConstructionAuditError(problem, builder.trace)


# --- realizability ----------------------------------------------------------------


@dataclass(frozen=True)
class RealizedTree:
    tree: Graph
    value: int
    spec: FamilySpec | None
    certified_by: str

    def to_dict(self) -> dict:
        return {
            "order": self.tree.n,
            "value": self.value,
            "family": None if self.spec is None else str(self.spec),
            "certified_by": self.certified_by,
        }


def feasible_band(n: int) -> tuple[int, int]:
    return (n + 2) // 2, 6 * n // 7


def realize_parameters(n: int, p: int) -> tuple[int, int, int] | None:
    """(q, j, l) with G_n(q, j, l) of order n and value p, or None."""
    for offset in (1, 2):  # even system first, then odd
        for j in range(5):
            rhs = 2 * p - n - j - offset
            if rhs < 0 or rhs % 5:
                continue
            q = rhs // 5
            l = n - 7 * q - 2 * j - 1
            if l < 0 or j + l < 3:
                continue
            if closed_form_gamma_str(FamilySpec("gnqjl", (q, j, l))) == p:
                return q, j, l
    return None


def realize_tree(n: int, p: int, certify: str = "closed-form") -> RealizedTree:
    """A tree of order ``n`` whose strong Roman domination number is ``p``.

    ``certify`` is ``"closed-form"`` or ``"solver"``; the latter runs the
    exact solver on the result and raises if it disagrees.
    """
    if n < 3:
        raise ValueError(f"realizability needs n >= 3, got n={n}")
    lo, hi = feasible_band(n)
    if not lo <= p <= hi:
        raise ValueError(
            f"no tree of order {n} has value {p}: every tree lies in "
            f"[ceil((n+1)/2), floor(6n/7)] = [{lo}, {hi}]"
        )
    if n == 3:
        tree, spec = path_graph(3), FamilySpec("path", (3,))
    elif n == 4:
        tree, spec = star_graph(4), FamilySpec("star", (4,))
    else:
        params = realize_parameters(n, p)
        if params is None:
            raise ValueError(f"no G_n(q,j,l) parameters found for n={n}, p={p}")
        spec = FamilySpec("gnqjl", params)
        tree = generate(spec)
    value = closed_form_gamma_str(spec)
    assert tree.n == n and value == p
    if certify == "solver":
        got = solve_strdf_exact(tree, lexicographic=False).value
        if got != p:
            raise AssertionError(f"solver gives {got} for the tree realizing ({n}, {p})")
    elif certify != "closed-form":
        raise ValueError(f"unknown certification mode {certify!r}")
    return RealizedTree(tree, p, spec, certify)
