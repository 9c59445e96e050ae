"""Simple undirected graphs on dense vertex ids ``0..n-1``.

Besides the :class:`Graph` container this module holds the metric helpers
(diameter, girth, components), the rooted product combinator, labeled tree
enumeration through Pruefer sequences, a canonical form for trees and the
edge-list text format.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed vertex ids, self-loops or bad combinator input."""


class ParseError(ValueError):
    """Raised when a text document does not follow its grammar."""


class Graph:
    """Immutable simple graph.

    Vertices are ``0..n-1``. Edges are stored once as ``(u, v)`` with
    ``u < v``; duplicates in the input are dropped.
    """

    __slots__ = ("_n", "_edges", "_adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        seen: set[Edge] = set()
        for pair in edges:
            u, v = (int(x) for x in pair)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop {(u, v)} is not allowed")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                continue
            seen.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._edges = tuple(sorted(seen))
        self._adj = tuple(frozenset(a) for a in adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open neighbourhoods as integer bitmasks."""
        out = []
        for nb in self._adj:
            mask = 0
            for w in nb:
                mask |= 1 << w
            out.append(mask)
        return tuple(out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            stack = [s]
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @property
    def is_tree(self) -> bool:
        return self._n >= 1 and self.m == self._n - 1 and self.is_connected

    def bfs_distances(self, source: int) -> list[int]:
        """Hop distances from ``source``; unreachable vertices get -1."""
        dist = [-1] * self._n
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    @cached_property
    def distance_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.bfs_distances(v)) for v in range(self._n))

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph and the list mapping new ids to old ids."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [
            (index[u], index[v]) for u, v in self._edges if u in index and v in index
        ]
        return Graph(len(old), edges), old

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self._n, ((perm[u], perm[v]) for u, v in self._edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph(n, edges)


@dataclass(frozen=True)
class GraphMetrics:
    max_degree: int
    min_degree: int
    diameter: float  # math.inf when disconnected
    girth: float  # math.inf when acyclic
    component_count: int

    def to_dict(self) -> dict:
        def enc(x):
            return None if x == math.inf else int(x)

        return {
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
            "diameter": enc(self.diameter),
            "girth": enc(self.girth),
            "component_count": self.component_count,
        }


def diameter(g: Graph) -> float:
    if g.n == 0:
        return 0
    if not g.is_connected:
        return math.inf
    return max(max(row) for row in g.distance_matrix)


def girth(g: Graph) -> float:
    """Length of a shortest cycle via one BFS per vertex."""
    best = math.inf
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in g.adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def metrics(g: Graph) -> GraphMetrics:
    return GraphMetrics(
        max_degree=g.max_degree,
        min_degree=g.min_degree,
        diameter=diameter(g),
        girth=girth(g),
        component_count=len(g.components),
    )


# --- small standard graphs -------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(order: int) -> Graph:
    """Star with centre 0 and ``order - 1`` leaves."""
    return Graph(order, ((0, i) for i in range(1, order)))


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges)


def rooted_product(base: Graph, attachments: Sequence[tuple[Graph, int]]) -> Graph:
    """Identify the root of the i-th attached graph with base vertex i.

    Base vertex ``i`` keeps id ``i``; the non-root vertices of attachment
    ``i`` follow in attachment order, each block in the attachment's own
    vertex order.
    """
    if len(attachments) != base.n:
        raise GraphError(
            f"rooted product needs {base.n} attachments, got {len(attachments)}"
        )
    edges = list(base.edges)
    next_id = base.n
    for i, (h, root) in enumerate(attachments):
        if not 0 <= root < h.n:
            raise GraphError(f"attachment {i}: root {root} not in 0..{h.n - 1}")
        ids = {}
        for v in range(h.n):
            if v == root:
                ids[v] = i
            else:
                ids[v] = next_id
                next_id += 1
        edges.extend((ids[u], ids[v]) for u, v in h.edges)
    return Graph(next_id, edges)


# --- trees -----------------------------------------------------------------


def prufer_decode(seq: Sequence[int]) -> Graph:
    """Labeled tree on ``len(seq) + 2`` vertices from its Pruefer sequence."""
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    # pointer/leaf trick: linear time decoding
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return Graph(n, edges)


EXHAUSTIVE_TREE_LIMIT = 8


def labeled_trees(n: int) -> Iterator[Graph]:
    """All ``n**(n-2)`` labeled trees on ``n`` vertices (n <= 8)."""
    if n > EXHAUSTIVE_TREE_LIMIT:
        raise GraphError(
            f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_TREE_LIMIT}, got {n}"
        )
    if n < 1:
        raise GraphError("trees need at least one vertex")
    if n == 1:
        yield Graph(1)
        return
    if n == 2:
        yield Graph(2, [(0, 1)])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield prufer_decode(seq)


def random_trees(n: int, count: int, seed: int | None = None) -> Iterator[Graph]:
    """Uniformly random labeled trees, reproducible by ``seed``."""
    if n < 2:
        raise GraphError(f"random trees need n >= 2, got {n}")
    rng = random.Random(seed)
    for _ in range(count):
        if n == 2:
            yield Graph(2, [(0, 1)])
        else:
            yield prufer_decode([rng.randrange(n) for _ in range(n - 2)])


def enumerate_trees(
    n: int, mode: str = "exhaustive", count: int = 0, seed: int | None = None
) -> Iterator[Graph]:
    if mode == "exhaustive":
        return labeled_trees(n)
    if mode == "random":
        return random_trees(n, count, seed)
    raise ValueError(f"unknown enumeration mode {mode!r}")


def tree_centers(g: Graph) -> list[int]:
    degree = list(g.degrees)
    remaining = g.n
    layer = [v for v in range(g.n) if degree[v] <= 1]
    removed = [False] * g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            removed[v] = True
            for w in g.adj[v]:
                if not removed[w]:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(v for v in range(g.n) if not removed[v])


def _rooted_code(g: Graph, root: int, parent: int) -> str:
    kids = sorted(_rooted_code(g, w, root) for w in g.adj[root] if w != parent)
    return "(" + "".join(kids) + ")"


def tree_canonical_form(g: Graph) -> str:
    """Isomorphism-invariant string for a tree (AHU encoding at the centre)."""
    if not g.is_tree:
        raise GraphError("canonical form is only defined for trees")
    return min(_rooted_code(g, c, -1) for c in tree_centers(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test; intended for small graphs."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    n = g.n
    order = sorted(range(n), key=lambda v: -g.degree(v))
    mapping = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or h.degree(w) != g.degree(v):
                continue
            ok = True
            for u in order[:k]:
                if g.has_edge(u, v) != h.has_edge(mapping[u], w):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if extend(k + 1):
                return True
            used[w] = False
        mapping[v] = -1
        return False

    return extend(0)


# --- edge-list text format --------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    Grammar: ``#`` starts a comment; an optional first content line
    ``p <n> <m>``; then one ``u v`` pair per line. With a header the
    tokens are integer ids in ``0..n-1`` and exactly ``m`` pair lines must
    follow. Without a header tokens are arbitrary names mapped to ids in
    first-seen order.
    """
    header: tuple[int, int] | None = None
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None or pairs:
                raise ParseError(f"line {lineno}: header must be the first content line")
            if len(tokens) != 3:
                raise ParseError(f"line {lineno}: header must read 'p <n> <m>'")
            try:
                header = (int(tokens[1]), int(tokens[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer header fields") from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError(f"line {lineno}: negative header fields")
            continue
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        pairs.append((tokens[0], tokens[1]))

    if header is not None:
        n, m = header
        if len(pairs) != m:
            raise ParseError(f"header announces {m} edges, found {len(pairs)}")
        try:
            edges = [(int(a), int(b)) for a, b in pairs]
        except ValueError:
            raise ParseError("vertex ids must be integers when a header is present") from None
        try:
            return Graph(n, edges)
        except GraphError as exc:
            raise ParseError(str(exc)) from None

    ids: dict[str, int] = {}
    edges = []
    for a, b in pairs:
        for name in (a, b):
            if name not in ids:
                ids[name] = len(ids)
        edges.append((ids[a], ids[b]))
    try:
        return Graph(len(ids), edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
