"""Command-line interface: ``strongroman <subcommand> ...``.

Exit status: 0 success, 1 domain rejection (including an invalid labeling
under ``verify``), 2 unreadable input, 3 solver budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import bounds_report
from .families import (
    FamilySpecError,
    closed_form_gamma_str,
    generate,
    looks_like_family_spec,
    membership_F_pm,
    membership_family_T,
    parse_family_spec,
)
from .graph import Graph, GraphError, ParseError, format_edge_list, parse_edge_list, random_trees
from .labeling import OrderMismatchError, parse_labeling, verify_rdf, verify_strdf
from .reduction import build_reduction_graph, parse_cnf, validate_1neg3sat
from .solvers import (
    DEFAULT_BUDGET,
    solve_domination_exact,
    solve_roman_exact,
    solve_strdf_exact,
)
from .trees import realize_tree

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3
WITNESS_LIMIT = 50
SOLVER_CERTIFY_LIMIT = 14


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {source}: {exc.strerror}", EXIT_PARSE) from None


def load_graph(source: str) -> tuple[Graph, str | None]:
    """A family spec such as ``path:7`` or an edge-list file (``-`` for stdin)."""
    if looks_like_family_spec(source):
        spec = parse_family_spec(source)
        return generate(spec), str(spec)
    return parse_edge_list(_read_text(source)), None


def _graph_info(g: Graph, spec: str | None) -> dict:
    return {"n": g.n, "m": g.m, "family": spec}


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def _want_witness(args, n: int) -> bool:
    if args.no_witness:
        return False
    return args.with_witness or n <= WITNESS_LIMIT


# --- subcommands ------------------------------------------------------------------


def cmd_solve(args) -> int:
    g, spec = load_graph(args.graph)
    problems = []
    if args.domination:
        problems.append(("domination", "gamma", solve_domination_exact))
    if args.roman:
        problems.append(("roman", "gammaR", solve_roman_exact))
    if args.strdf or not problems:
        problems.append(("strdf", "gammaStR", solve_strdf_exact))
    problems.sort(key=lambda p: ("domination", "roman", "strdf").index(p[0]))
    witness = _want_witness(args, g.n)
    results, lines, code = {}, [], EXIT_OK
    for name, label, solver in problems:
        res = solver(g, budget=args.budget, time_limit=args.time_limit)
        results[name] = res.to_dict(include_witness=witness)
        if res.optimal:
            lines.append(f"{label} = {res.value}")
        else:
            code = EXIT_BUDGET
            lines.append(f"{label}: budget exhausted, {res.lower_bound} <= value <= {res.upper_bound}")
        if witness and res.witness is not None:
            lines.append("  witness: " + " ".join(map(str, res.witness.values)))
        lines.append(f"  nodes: {res.nodes_explored}, time: {res.elapsed:.3f}s")
    payload = {"command": "solve", "graph": _graph_info(g, spec), "results": results}
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_verify(args) -> int:
    g, spec = load_graph(args.graph)
    text = args.labeling if args.labeling.lstrip().startswith("[") else _read_text(args.labeling)
    f = parse_labeling(text, order=g.n)
    report = verify_rdf(g, f) if args.roman else verify_strdf(g, f)
    payload = {
        "command": "verify",
        "graph": _graph_info(g, spec),
        "kind": "roman" if args.roman else "strdf",
        "report": report.to_dict(),
    }
    lines = [f"{'valid' if report.valid else 'invalid'}, weight {report.weight}"]
    for v in report.violations:
        gap = "" if v.gap is None else f" (gap {v.gap})"
        lines.append(f"  vertex {v.vertex}: {v.reason}{gap}")
    for v in report.cap_warnings:
        lines.append(f"  warning, vertex {v.vertex}: {v.reason}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.valid else EXIT_DOMAIN


def cmd_bounds(args) -> int:
    g, spec = load_graph(args.graph)
    rep = bounds_report(g, gamma_value=args.gamma, gamma_r_value=args.gamma_r)
    data = rep.to_dict()
    payload = {"command": "bounds", "graph": _graph_info(g, spec), "bounds": data}
    lines = []
    for key, value in data.items():
        if key in ("reasons", "n_minus_2_witness", "n"):
            continue
        if value is None:
            lines.append(f"{key}: n/a ({data['reasons'].get(key, 'not computed')})")
        else:
            lines.append(f"{key}: {value}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.random_tree is not None:
        (g,) = random_trees(args.random_tree, 1, args.seed)
        spec_text, closed = f"random-tree:{args.random_tree}", None
    elif args.spec:
        spec = parse_family_spec(args.spec)
        g, spec_text, closed = generate(spec), str(spec), closed_form_gamma_str(spec)
    else:
        raise CliError("gen needs a family spec or --random-tree N", EXIT_DOMAIN)
    text = format_edge_list(g)
    if args.output:
        Path(args.output).write_text(text)
    payload = {
        "command": "gen",
        "family": spec_text,
        "graph": {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges]},
        "closed_form": closed,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    elif not args.output:
        sys.stdout.write(text)
    else:
        print(f"wrote {spec_text} (n={g.n}, m={g.m}) to {args.output}")
    return EXIT_OK


def cmd_realize(args) -> int:
    certify = args.certify
    if certify == "auto":
        certify = "solver" if args.n <= SOLVER_CERTIFY_LIMIT else "closed-form"
    r = realize_tree(args.n, args.p, certify=certify)
    text = format_edge_list(r.tree)
    if args.output:
        Path(args.output).write_text(text)
    payload = {
        "command": "realize",
        "n": args.n,
        "p": args.p,
        "result": r.to_dict(),
        "graph": {"n": r.tree.n, "m": r.tree.m, "edges": [list(e) for e in r.tree.edges]},
    }
    human = f"# {r.spec}, certified value {r.value} ({r.certified_by})\n" + text.rstrip("\n")
    _emit(args, payload, human)
    return EXIT_OK


def cmd_reduce(args) -> int:
    formula = parse_cnf(_read_text(args.cnf))
    report = validate_1neg3sat(formula)
    if not report.valid:
        payload = {"command": "reduce", "validation": report.to_dict(), "graph": None, "roles": None}
        _emit(args, payload, "invalid formula:\n  " + "\n  ".join(report.violations))
        return EXIT_DOMAIN
    rg = build_reduction_graph(formula)
    roles = rg.role_map()
    text = format_edge_list(rg.graph)
    roles_path = args.roles
    if args.output:
        Path(args.output).write_text(text)
        roles_path = roles_path or args.output + ".roles.json"
    if roles_path:
        Path(roles_path).write_text(json.dumps(roles, indent=2) + "\n")
    payload = {
        "command": "reduce",
        "validation": report.to_dict(),
        "graph": {"n": rg.graph.n, "m": rg.graph.m, "edges": [list(e) for e in rg.graph.edges]},
        "roles": roles,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    elif args.output:
        print(f"wrote gadget graph (n={rg.graph.n}, m={rg.graph.m}) to {args.output}, roles to {roles_path}")
    else:
        sys.stdout.write(text)
    for w in formula.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_check_family(args) -> int:
    g, spec = load_graph(args.graph)
    if not g.is_tree:
        raise CliError("check-family needs a tree", EXIT_DOMAIN)
    in_t = g.n >= 3 and membership_family_T(g)
    in_f, units = membership_F_pm(g)
    payload = {
        "command": "check-family",
        "graph": _graph_info(g, spec),
        "family_T": in_t,
        "F_pm": in_f,
        "decomposition": None if units is None else [
            {"center": u.center, "stems": list(u.stems), "leaves": list(u.leaves)} for u in units
        ],
    }
    lines = [f"family T: {'yes' if in_t else 'no'}", f"F_pm: {'yes' if in_f else 'no'}"]
    for u in units or []:
        lines.append(f"  unit centre {u.center}: stems {list(u.stems)}, leaves {list(u.leaves)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strongroman",
        description="Exact strong Roman domination toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    graph_help = "family spec (e.g. path:7, spider:5,2) or edge-list file, '-' for stdin"

    p = sub.add_parser("solve", help="exact gamma, gamma_R and gamma_StR")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--strdf", action="store_true", help="strong Roman domination number (default)")
    p.add_argument("--roman", action="store_true", help="Roman domination number")
    p.add_argument("--domination", action="store_true", help="domination number")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit")
    p.add_argument("--time-limit", type=float, default=None, help="seconds before giving up")
    p.add_argument("--with-witness", action="store_true", help="print witnesses for any order")
    p.add_argument("--no-witness", action="store_true", help="never print witnesses")
    add_json(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a labeling")
    p.add_argument("graph", help=graph_help)
    p.add_argument("labeling", help="labeling file ('v label' lines or JSON array) or inline JSON")
    p.add_argument("--roman", action="store_true", help="check the Roman condition instead")
    add_json(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate lower and upper bounds")
    p.add_argument("graph", help=graph_help)
    p.add_argument("--gamma", type=int, default=None, help="known domination number")
    p.add_argument("--gamma-r", type=int, default=None, help="known Roman domination number")
    add_json(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen", help="generate a family member as an edge list")
    p.add_argument("spec", nargs="?", help="family spec, e.g. gnqjl:3,2,3")
    p.add_argument("--random-tree", type=int, metavar="N", help="uniform random labeled tree")
    p.add_argument("-o", "--output", help="write the edge list here")
    add_json(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("realize", help="tree of order N with value P")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    p.add_argument("--certify", choices=("auto", "closed-form", "solver"), default="auto",
                   help="auto uses the exact solver up to order 14")
    p.add_argument("-o", "--output", help="write the edge list here")
    add_json(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("reduce", help="gadget graph of a 1-negative 3-SAT formula")
    p.add_argument("cnf", help="DIMACS CNF file, '-' for stdin")
    p.add_argument("-o", "--output", help="write the edge list here")
    p.add_argument("--roles", help="write the vertex role map here")
    add_json(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-family", help="membership in the extremal tree families")
    p.add_argument("graph", help=graph_help)
    add_json(p)
    p.set_defaults(func=cmd_check_family)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FamilySpecError, GraphError, OrderMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
