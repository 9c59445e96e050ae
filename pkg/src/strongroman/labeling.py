"""Vertex labelings and the (strong) Roman domination checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, ParseError


class OrderMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    """Non-negative integer label per vertex, indexed by vertex id."""

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(x) for x in values)
        if any(x < 0 for x in vals):
            raise ValueError("labels must be non-negative")
        object.__setattr__(self, "values", vals)

    @property
    def graph_order(self) -> int:
        return len(self.values)

    @property
    def weight(self) -> int:
        return sum(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __iter__(self):
        return iter(self.values)

    def zeros(self) -> frozenset[int]:
        return frozenset(v for v, x in enumerate(self.values) if x == 0)

    def ones(self) -> frozenset[int]:
        return frozenset(v for v, x in enumerate(self.values) if x == 1)

    def strong(self) -> frozenset[int]:
        return frozenset(v for v, x in enumerate(self.values) if x >= 2)

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def to_text(self) -> str:
        return "".join(f"{v} {x}\n" for v, x in enumerate(self.values))


def weight(f: Sequence[int] | Labeling) -> int:
    return sum(f)


def _as_labeling(f) -> Labeling:
    return f if isinstance(f, Labeling) else Labeling(f)


def parse_labeling(text: str, order: int | None = None) -> Labeling:
    """Read either a JSON integer array or ``v label`` lines."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON labeling: {exc}") from None
        if not all(isinstance(x, int) and x >= 0 for x in data):
            raise ParseError("JSON labeling must be an array of non-negative integers")
        lab = Labeling(data)
    else:
        assigned: dict[int, int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'v label'")
            try:
                v, x = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer field") from None
            if v < 0 or x < 0:
                raise ParseError(f"line {lineno}: negative value")
            if v in assigned:
                raise ParseError(f"line {lineno}: vertex {v} labeled twice")
            assigned[v] = x
        size = order if order is not None else (max(assigned) + 1 if assigned else 0)
        if any(v >= size for v in assigned):
            raise ParseError(f"labeling mentions a vertex outside 0..{size - 1}")
        missing = [v for v in range(size) if v not in assigned]
        if missing:
            raise ParseError(f"vertices without a label: {missing[:10]}")
        lab = Labeling(assigned[v] for v in range(size))
    if order is not None and len(lab) != order:
        raise ParseError(f"labeling has {len(lab)} entries, graph has {order} vertices")
    return lab


@dataclass(frozen=True)
class Violation:
    vertex: int
    reason: str
    # Smallest shortfall f(w) - t(w) over neighbours w; None without neighbours.
    gap: int | None = None

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "reason": self.reason, "gap": self.gap}


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    weight: int
    violations: tuple[Violation, ...]
    thresholds: tuple[int, ...]
    cap_warnings: tuple[Violation, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "weight": self.weight,
            "violations": [v.to_dict() for v in self.violations],
            "thresholds": list(self.thresholds),
            "cap_warnings": [v.to_dict() for v in self.cap_warnings],
        }


def defense_threshold(zero_neighbors: int) -> int:
    """Label a vertex needs to defend ``zero_neighbors`` weak neighbours."""
    return 1 + (zero_neighbors + 1) // 2


def label_caps(g: Graph) -> list[int]:
    """Per-vertex cap ``ceil(Delta/2) + 1`` using the component's max degree."""
    caps = [1] * g.n
    for comp in g.components:
        delta = max(g.degree(v) for v in comp)
        for v in comp:
            caps[v] = 1 + (delta + 1) // 2
    return caps


def thresholds(g: Graph, f: Sequence[int]) -> list[int]:
    return [
        defense_threshold(sum(1 for w in g.adj[v] if f[w] == 0)) for v in range(g.n)
    ]


def _check_order(g: Graph, f: Labeling) -> None:
    if len(f) != g.n:
        raise OrderMismatchError(
            f"labeling covers {len(f)} vertices but the graph has {g.n}"
        )


def verify_strdf(g: Graph, f) -> ValidityReport:
    f = _as_labeling(f)
    _check_order(g, f)
    vals = f.values
    t = thresholds(g, vals)
    violations = []
    for v in range(g.n):
        if vals[v] != 0:
            continue
        nbrs = g.adj[v]
        if not nbrs:
            violations.append(Violation(v, "zero vertex has no neighbours"))
            continue
        gap = max(vals[w] - t[w] for w in nbrs)
        if gap < 0:
            if all(vals[w] < 2 for w in nbrs):
                reason = "no neighbour labeled 2 or more"
            else:
                reason = "no neighbour reaches its defense threshold"
            violations.append(Violation(v, reason, gap))
    caps = label_caps(g)
    cap_warnings = tuple(
        Violation(v, f"label {vals[v]} exceeds cap {caps[v]}", caps[v] - vals[v])
        for v in range(g.n)
        if vals[v] > caps[v]
    )
    return ValidityReport(
        valid=not violations,
        weight=f.weight,
        violations=tuple(violations),
        thresholds=tuple(t),
        cap_warnings=cap_warnings,
    )


def verify_rdf(g: Graph, f) -> ValidityReport:
    f = _as_labeling(f)
    _check_order(g, f)
    vals = f.values
    bad = [v for v, x in enumerate(vals) if x > 2]
    if bad:
        raise ValueError(f"Roman labels must lie in {{0,1,2}}; vertex {bad[0]} has {vals[bad[0]]}")
    violations = tuple(
        Violation(v, "no neighbour labeled 2")
        for v in range(g.n)
        if vals[v] == 0 and not any(vals[w] == 2 for w in g.adj[v])
    )
    return ValidityReport(
        valid=not violations,
        weight=f.weight,
        violations=violations,
        thresholds=tuple(2 for _ in range(g.n)),
    )


def is_strdf(g: Graph, f) -> bool:
    return verify_strdf(g, f).valid


def is_rdf(g: Graph, f) -> bool:
    return verify_rdf(g, f).valid


def normalize_strdf(g: Graph, f: Sequence[int]) -> list[int]:
    """Lower every label as far as validity allows, keeping the zero set.

    A vertex with a zero neighbour that it actually defends keeps exactly
    its threshold; every other non-zero vertex drops to 1. Valid input
    stays valid and the weight never grows.
    """
    vals = list(f)
    t = thresholds(g, vals)
    out = []
    for v, x in enumerate(vals):
        if x == 0:
            out.append(0)
        elif x >= t[v] and any(vals[w] == 0 for w in g.adj[v]):
            out.append(t[v])
        else:
            out.append(1)
    return out
