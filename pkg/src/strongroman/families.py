"""Parametric graph families, their known strong Roman domination numbers,
and membership tests for the two extremal tree families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .graph import (
    Graph,
    GraphError,
    ParseError,
    cycle_graph,
    parse_edge_list,
    path_graph,
    rooted_product,
    star_graph,
    tree_canonical_form,
)

TAGS = ("path", "cycle", "star", "dstar", "spider", "gnqjl", "fpm", "tmember")
_ARITY = {"path": 1, "cycle": 1, "star": 1, "dstar": 2, "spider": 2, "gnqjl": 3, "tmember": 1}


class FamilySpecError(ValueError):
    pass


def _ceil_half(x: int) -> int:
    return (x + 1) // 2


@dataclass(frozen=True)
class FamilySpec:
    """A named family member, e.g. ``FamilySpec("spider", (5, 2))``.

    ``fpm`` carries its base tree in ``base`` instead of integer parameters.
    """

    tag: str
    params: tuple[int, ...] = ()
    base: Graph | None = None

    def __post_init__(self):
        _validate(self)

    def __str__(self) -> str:
        if self.tag == "fpm":
            edges = ";".join(f"{u}-{v}" for u, v in self.base.edges)
            return f"fpm:<tree n={self.base.n} {edges}>"
        return f"{self.tag}:" + ",".join(str(p) for p in self.params)

    @property
    def order(self) -> int:
        tag, p = self.tag, self.params
        if tag in ("path", "cycle", "star"):
            return p[0]
        if tag == "dstar":
            return p[0] + p[1] + 2
        if tag == "spider":
            return p[0] + p[1] + 1
        if tag == "gnqjl":
            q, j, l = p
            return 7 * q + 2 * j + l + 1
        if tag == "fpm":
            return 7 * self.base.n
        return len(T_MEMBER_EDGES[p[0] - 1][1]) + 1


def _validate(spec: FamilySpec) -> None:
    tag, p = spec.tag, spec.params
    if tag not in TAGS:
        raise FamilySpecError(f"unknown family tag {tag!r}; expected one of {', '.join(TAGS)}")
    if tag == "fpm":
        if spec.base is None or p:
            raise FamilySpecError("fpm takes a base tree and no integer parameters")
        if not spec.base.is_tree:
            raise FamilySpecError("fpm base must be a tree")
        return
    if len(p) != _ARITY[tag]:
        raise FamilySpecError(f"{tag} takes {_ARITY[tag]} parameter(s), got {len(p)}")

    def need(cond: bool, message: str) -> None:
        if not cond:
            raise FamilySpecError(f"{tag}: {message}")

    if tag == "path":
        need(p[0] >= 1, f"n must be >= 1, got n={p[0]}")
    elif tag == "cycle":
        need(p[0] >= 3, f"n must be >= 3, got n={p[0]}")
    elif tag == "star":
        need(p[0] >= 2, f"order must be >= 2, got order={p[0]}")
    elif tag == "dstar":
        need(1 <= p[0] <= p[1], f"need 1 <= p <= q, got p={p[0]}, q={p[1]}")
    elif tag == "spider":
        t, q = p
        need(t >= 2, f"t must be >= 2, got t={t}")
        need(0 <= q <= t, f"q must lie in 0..t, got q={q}")
    elif tag == "gnqjl":
        q, j, l = p
        need(q >= 0, f"q must be >= 0, got q={q}")
        need(0 <= j <= 4, f"j must lie in 0..4, got j={j}")
        need(l >= 0, f"l must be >= 0, got l={l}")
        need(j + l >= 3, f"j + l must be >= 3, got j={j}, l={l}")
    elif tag == "tmember":
        need(1 <= p[0] <= 7, f"index must lie in 1..7, got index={p[0]}")


def parse_family_spec(text: str) -> FamilySpec:
    """Parse ``tag:a,b,...``; ``fpm:<path>`` reads the base tree from a file."""
    tag, sep, rest = text.strip().partition(":")
    tag = tag.strip().lower()
    if not sep:
        raise ParseError(f"family spec {text!r} must look like 'tag:args'")
    if tag == "fpm":
        try:
            base = parse_edge_list(Path(rest).read_text())
        except OSError as exc:
            raise ParseError(f"cannot read fpm base tree: {exc}") from None
        return FamilySpec("fpm", (), base)
    try:
        params = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise ParseError(f"family parameters must be integers: {rest!r}") from None
    return FamilySpec(tag, params)


def looks_like_family_spec(text: str) -> bool:
    tag, sep, _ = text.partition(":")
    return bool(sep) and tag.lower() in TAGS


# --- generators -------------------------------------------------------------


def spider(t: int, q: int) -> Graph:
    """Star K_{1,t} with q of its edges subdivided; centre 0, arms 1..t."""
    edges = [(0, i) for i in range(1, t + 1)]
    edges += [(i, t + i) for i in range(1, q + 1)]
    return Graph(t + q + 1, edges)


def double_star(p: int, q: int) -> Graph:
    """Centres 0 and 1 carrying p and q leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(p)]
    edges += [(1, 2 + p + i) for i in range(q)]
    return Graph(p + q + 2, edges)


def gnqjl(q: int, j: int, l: int) -> Graph:
    """Base path on q+1 vertices; vertex 0 carries the spider S_{j+l,j},
    the other q vertices carry healthy spiders S_{3,3}, all rooted at
    their centres."""
    base = path_graph(q + 1)
    attachments = [(spider(j + l, j), 0)] + [(spider(3, 3), 0)] * q
    return rooted_product(base, attachments)


def fpm(base: Graph) -> Graph:
    return rooted_product(base, [(spider(3, 3), 0)] * base.n)


# The seven trees with value n - 1: three paths, K_{1,3} and three spiders.
T_MEMBER_EDGES: tuple[tuple[str, tuple[tuple[int, int], ...]], ...] = (
    ("P3", ((0, 1), (1, 2))),
    ("P4", ((0, 1), (1, 2), (2, 3))),
    ("P5", ((0, 1), (1, 2), (2, 3), (3, 4))),
    ("K13", ((0, 1), (0, 2), (0, 3))),
    ("S31", ((0, 1), (0, 2), (0, 3), (1, 4))),
    ("S32", ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5))),
    ("S33", ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6))),
)


def t_member(index: int) -> Graph:
    edges = T_MEMBER_EDGES[index - 1][1]
    return Graph(len(edges) + 1, edges)


def generate(spec: FamilySpec) -> Graph:
    tag, p = spec.tag, spec.params
    if tag == "path":
        return path_graph(p[0])
    if tag == "cycle":
        return cycle_graph(p[0])
    if tag == "star":
        return star_graph(p[0])
    if tag == "dstar":
        return double_star(*p)
    if tag == "spider":
        return spider(*p)
    if tag == "gnqjl":
        return gnqjl(*p)
    if tag == "fpm":
        return fpm(spec.base)
    return t_member(p[0])


def closed_form_gamma_str(spec: FamilySpec) -> int:
    tag, p = spec.tag, spec.params
    if tag in ("path", "cycle"):
        return -(-2 * p[0] // 3)
    if tag == "star":
        return _ceil_half(p[0] + 1)
    if tag == "dstar":
        a, b = p
        if a == 1 and b == 1:
            return 3  # P4
        if a == 1:
            return _ceil_half(spec.order + 2)
        return 2 + _ceil_half(a) + _ceil_half(b)
    if tag == "spider":
        t, q = p
        return 1 + q + _ceil_half(t)
    if tag == "gnqjl":
        q, j, l = p
        return 6 * q + _ceil_half(j + l) + j + 1
    if tag == "fpm":
        return 6 * spec.base.n
    return spec.order - 1


# --- membership tests -------------------------------------------------------


@lru_cache(maxsize=None)
def _t_forms() -> frozenset[str]:
    return frozenset(tree_canonical_form(t_member(i)) for i in range(1, 8))


def _require_tree(t: Graph) -> None:
    if not t.is_tree:
        raise GraphError("membership tests are defined for trees only")


def membership_family_T(t: Graph) -> bool:
    _require_tree(t)
    if not 3 <= t.n <= 7:
        return False
    return tree_canonical_form(t) in _t_forms()


@dataclass(frozen=True)
class Unit:
    """One S(K_{1,3}) block: centre, its three stems, and their leaves."""

    center: int
    stems: tuple[int, int, int]
    leaves: tuple[int, int, int]

    def vertices(self) -> frozenset[int]:
        return frozenset((self.center, *self.stems, *self.leaves))


def membership_F_pm(t: Graph) -> tuple[bool, list[Unit] | None]:
    """Decide whether ``t`` is a rooted product of a tree with S(K_{1,3}).

    A unit centre is a vertex with three pendant paths of length two;
    everything else in a unit is forced, so units are read off directly.
    """
    _require_tree(t)
    n = t.n
    if n % 7:
        return False, None
    deg = t.degrees
    units = []
    for c in range(n):
        arms = []
        for s in sorted(t.adj[c]):
            if deg[s] != 2:
                continue
            (leaf,) = t.adj[s] - {c}
            if deg[leaf] == 1:
                arms.append((s, leaf))
        if len(arms) > 3:
            return False, None
        if len(arms) == 3:
            units.append(Unit(c, tuple(a for a, _ in arms), tuple(b for _, b in arms)))
    if len(units) != n // 7:
        return False, None
    owner = {}
    for k, u in enumerate(units):
        for v in u.vertices():
            if v in owner:
                return False, None
            owner[v] = k
    if len(owner) != n:
        return False, None
    centers = {u.center for u in units}
    for a, b in t.edges:
        if owner[a] != owner[b] and not (a in centers and b in centers):
            return False, None
    return True, units
