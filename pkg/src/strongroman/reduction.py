"""Gadget graphs built from 1-negative 3-SAT formulas.

Each variable i becomes a K_{2,3} with parts {a_i, not-a_i} and
{x_i, y_i, z_i}, plus the edge a_i not-a_i; each clause becomes a vertex
joined to the literal vertices it contains. A formula is satisfiable
exactly when the graph has strong Roman domination number 4n.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field

from .graph import Graph, ParseError
from .labeling import Labeling

log = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[frozenset[int], ...]
    warnings: tuple[str, ...] = ()

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        for c in self.clauses:
            lits = sorted(c, key=lambda x: (abs(x), x < 0))
            lines.append(" ".join(map(str, lits)) + " 0")
        return "\n".join(lines) + "\n"


def make_formula(num_vars: int, clauses) -> CnfFormula:
    """Build a formula from literal lists, dropping repeated clauses."""
    seen: list[frozenset[int]] = []
    warnings = []
    for c in clauses:
        fc = frozenset(c)
        if fc in seen:
            warnings.append(f"dropped duplicate clause {sorted(fc)}")
            continue
        seen.append(fc)
    for w in warnings:
        log.warning(w)
    return CnfFormula(num_vars, tuple(seen), tuple(warnings))


def parse_cnf(text: str) -> CnfFormula:
    """Read DIMACS CNF: ``c`` comment lines, a ``p cnf <vars> <clauses>``
    header, then zero-terminated clauses that may span lines."""
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: header must read 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer header fields") from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError(f"line {lineno}: negative header fields")
            continue
        if header is None:
            raise ParseError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise ParseError(f"line {lineno}: empty clause")
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"line {lineno}: variable {abs(lit)} exceeds {header[0]}")
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return make_formula(header[0], clauses)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...]
    planarity: str = "unchecked"

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": list(self.violations),
            "planarity": self.planarity,
        }


def _clause_matching(f: CnfFormula) -> dict[int, int] | None:
    """Assign every variable its own clause that mentions it.

    Variables take the first free clause in index order; augmenting paths
    are only searched when no clause is free.
    """
    mentions = {
        i: [j for j, c in enumerate(f.clauses) if i in c or -i in c]
        for i in range(1, f.num_vars + 1)
    }
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in mentions[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(1, f.num_vars + 1):
        free = next((j for j in mentions[i] if j not in owner), None)
        if free is not None:
            owner[free] = i
        elif not augment(i, set()):
            return None
    return {i: j for j, i in owner.items()}


def validate_1neg3sat(f: CnfFormula) -> ValidationReport:
    problems = []
    pos: Counter[int] = Counter()
    neg: Counter[int] = Counter()
    for idx, c in enumerate(f.clauses):
        variables = {abs(x) for x in c}
        if len(variables) != len(c):
            problems.append(f"clause {idx} repeats a variable")
        if not 2 <= len(c) <= 3:
            problems.append(f"clause {idx} has {len(c)} literals, expected 2 or 3")
        if len(c) == 3 and all(x > 0 for x in c):
            problems.append(f"clause {idx} has three literals but none is negative")
        for x in c:
            (pos if x > 0 else neg)[abs(x)] += 1
    for i in range(1, f.num_vars + 1):
        if neg[i] != 1:
            problems.append(f"variable {i} occurs negatively {neg[i]} times, expected 1")
        if pos[i] not in (1, 2):
            problems.append(f"variable {i} occurs positively {pos[i]} times, expected 1 or 2")
    if f.num_clauses < f.num_vars:
        problems.append(f"{f.num_clauses} clauses for {f.num_vars} variables, expected m >= n")
    if not problems and _clause_matching(f) is None:
        problems.append("no assignment of a distinct clause to every variable exists")
    return ValidationReport(not problems, tuple(problems))


@dataclass(frozen=True)
class ReductionGraph:
    graph: Graph
    formula: CnfFormula
    literal_vertices: dict[int, tuple[int, int]]
    b_vertices: dict[int, tuple[int, int, int]]
    clause_vertices: tuple[int, ...]
    partition: dict[int, tuple[int, ...]]
    residual: tuple[int, ...] = field(default=())

    def literal_vertex(self, lit: int) -> int:
        pos, neg = self.literal_vertices[abs(lit)]
        return pos if lit > 0 else neg

    def role_map(self) -> dict:
        roles = []
        for i, (p, q) in self.literal_vertices.items():
            roles.append({"vertex": p, "role": "literal", "variable": i, "positive": True})
            roles.append({"vertex": q, "role": "literal", "variable": i, "positive": False})
            for v in self.b_vertices[i]:
                roles.append({"vertex": v, "role": "b-vertex", "variable": i})
        for j, v in enumerate(self.clause_vertices):
            lits = sorted(self.formula.clauses[j], key=lambda x: (abs(x), x < 0))
            roles.append({"vertex": v, "role": "clause", "clause": j, "literals": lits})
        roles.sort(key=lambda r: r["vertex"])
        return {
            "order": self.graph.n,
            "size": self.graph.m,
            "vertices": roles,
            "partition": {str(i): list(s) for i, s in self.partition.items()},
            "residual": list(self.residual),
        }

    def part_weights(self, f) -> dict[int, int]:
        return {i: sum(f[v] for v in s) for i, s in self.partition.items()}


def build_reduction_graph(f: CnfFormula) -> ReductionGraph:
    report = validate_1neg3sat(f)
    if not report.valid:
        raise ValueError("not a 1-negative 3-SAT formula: " + "; ".join(report.violations))
    n, m = f.num_vars, f.num_clauses
    literal, bverts, edges = {}, {}, []
    for i in range(1, n + 1):
        base = 5 * (i - 1)
        a, na, x, y, z = range(base, base + 5)
        literal[i] = (a, na)
        bverts[i] = (x, y, z)
        edges.append((a, na))
        edges.extend((s, b) for s in (a, na) for b in (x, y, z))
    clause_vertices = tuple(5 * n + j for j in range(m))
    for j, c in enumerate(f.clauses):
        for lit in c:
            a, na = literal[abs(lit)]
            edges.append((clause_vertices[j], a if lit > 0 else na))
    g = Graph(5 * n + m, edges)
    for i, (a, na) in literal.items():
        # label 4 must defend every neighbour of a literal vertex
        if g.degree(a) not in (5, 6) or g.degree(na) != 5:
            raise AssertionError(
                f"variable {i}: literal degrees {g.degree(a)}, {g.degree(na)}"
            )
    match = _clause_matching(f)
    partition = {
        i: (*literal[i], *bverts[i], clause_vertices[match[i]]) for i in range(1, n + 1)
    }
    used = set(match.values())
    residual = tuple(clause_vertices[j] for j in range(m) if j not in used)
    return ReductionGraph(g, f, literal, bverts, clause_vertices, partition, residual)


def satisfiable_bruteforce(f: CnfFormula) -> tuple[bool, dict[int, bool] | None]:
    if f.num_vars > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_LIMIT} variables")
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if all(any(bits[abs(x) - 1] == (x > 0) for x in c) for c in f.clauses):
            return True, {i + 1: b for i, b in enumerate(bits)}
    return False, None


def assignment_labeling(rg: ReductionGraph, assignment: dict[int, bool]) -> Labeling:
    """Label 4 on the true literal vertex of each variable, 0 elsewhere."""
    f = [0] * rg.graph.n
    for i, (a, na) in rg.literal_vertices.items():
        f[a if assignment[i] else na] = 4
    return Labeling(f)


FIGURE5_DIMACS = """c (a1 or a2 or not a3) and (not a1 or a3) and (a1 or not a2 or a3)
p cnf 3 3
1 2 -3 0
-1 3 0
1 -2 3 0
"""

SAMPLE_DIMACS = """p cnf 2 3
1 2 0
-1 2 0
1 -2 0
"""
