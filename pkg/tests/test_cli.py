import json
from importlib import resources

import jsonschema
import pytest

from strongroman.cli import main
from strongroman.families import closed_form_gamma_str, parse_family_spec
from strongroman.graph import parse_edge_list
from strongroman.reduction import FIGURE5_DIMACS, SAMPLE_DIMACS

SCHEMA = json.loads(
    resources.files("strongroman").joinpath("schemas/output.schema.json").read_text()
)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


def test_solve_path4(capsys):
    code, out, _ = run(capsys, "solve", "--strdf", "path:4")
    assert code == 0 and "gammaStR = 3" in out
    code, payload = run_json(capsys, "solve", "--strdf", "--roman", "--domination", "path:4")
    assert code == 0
    res = payload["results"]
    assert (res["strdf"]["value"], res["roman"]["value"], res["domination"]["value"]) == (3, 3, 2)
    assert res["strdf"]["witness"] == [0, 2, 0, 1]


def test_solve_witness_flags(capsys):
    _, payload = run_json(capsys, "solve", "path:4", "--no-witness")
    assert "witness" not in payload["results"]["strdf"]
    _, payload = run_json(capsys, "solve", "star:51", "--budget", "1000000")
    assert "witness" not in payload["results"]["strdf"]
    _, payload = run_json(capsys, "solve", "star:51", "--with-witness")
    assert len(payload["results"]["strdf"]["witness"]) == 51


def test_solve_budget_exit(capsys):
    code, payload = run_json(capsys, "solve", "gnqjl:3,2,3", "--budget", "3")
    assert code == 3
    assert payload["results"]["strdf"]["status"] == "incomplete"


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "10", "6")
    assert code == 0 and "certified value 6" in out
    g = parse_edge_list(out)
    assert g.n == 10 and g.is_tree
    code, payload = run_json(capsys, "realize", "10", "6")
    assert payload["result"]["certified_by"] == "solver"
    code, payload = run_json(capsys, "realize", "20", "15")
    assert payload["result"]["certified_by"] == "closed-form"
    code, _, err = run(capsys, "realize", "10", "9")
    assert code == 1 and "error" in err


def test_reduce_then_solve(tmp_path, capsys):
    cnf = tmp_path / "sample.cnf"
    cnf.write_text(SAMPLE_DIMACS)
    out = tmp_path / "sample.txt"
    code, _, _ = run(capsys, "reduce", cnf, "-o", out)
    assert code == 0
    roles = json.loads((tmp_path / "sample.txt.roles.json").read_text())
    assert roles["order"] == 13
    code, payload = run_json(capsys, "solve", "--strdf", out)
    assert code == 0 and payload["results"]["strdf"]["value"] == 8


def test_reduce_json_and_invalid(tmp_path, capsys):
    cnf = tmp_path / "f5.cnf"
    cnf.write_text(FIGURE5_DIMACS)
    code, payload = run_json(capsys, "reduce", cnf)
    assert code == 0 and payload["graph"]["n"] == 18 and payload["graph"]["m"] == 29
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 2\n1 0\n-1 0\n")
    code, payload = run_json(capsys, "reduce", bad)
    assert code == 1 and not payload["validation"]["valid"]
    garbage = tmp_path / "garbage.cnf"
    garbage.write_text("1 2 0\n")
    code, _, err = run(capsys, "reduce", garbage)
    assert code == 2 and "parse error" in err


def test_verify(tmp_path, capsys):
    code, payload = run_json(capsys, "verify", "path:3", "[0, 2, 0]")
    assert code == 0 and payload["report"]["valid"]
    code, payload = run_json(capsys, "verify", "path:3", "[0, 1, 0]")
    assert code == 1 and len(payload["report"]["violations"]) == 2
    lab = tmp_path / "lab.txt"
    lab.write_text("0 0\n1 2\n2 0\n")
    code, payload = run_json(capsys, "verify", "--roman", "path:3", lab)
    assert code == 0 and payload["kind"] == "roman"
    code, _, _ = run(capsys, "verify", "path:3", "[0, 2]")
    assert code == 2


def test_bounds(capsys):
    code, payload = run_json(capsys, "bounds", "path:7")
    b = payload["bounds"]
    assert code == 0 and b["lower_order"] == 4 and b["upper_diameter"] == 5
    assert b["n_minus_2_witness"]["condition"] == 1
    code, payload = run_json(capsys, "bounds", "cycle:5")
    assert payload["bounds"]["upper_girth"] == 4


def test_gen_and_check_family(tmp_path, capsys):
    out = tmp_path / "s.txt"
    code, payload = run_json(capsys, "gen", "spider:3,3", "-o", out)
    assert code == 0 and payload["closed_form"] == 6 and out.exists()
    code, payload = run_json(capsys, "check-family", out)
    assert payload["family_T"] and payload["F_pm"] and len(payload["decomposition"]) == 1
    code, payload = run_json(capsys, "check-family", "path:7")
    assert not payload["F_pm"] and payload["decomposition"] is None
    code, _, _ = run(capsys, "check-family", "cycle:5")
    assert code == 1


def test_gen_random_tree_seeded(capsys):
    _, a, _ = run(capsys, "--seed", "5", "gen", "--random-tree", "12")
    _, b, _ = run(capsys, "--seed", "5", "gen", "--random-tree", "12")
    assert a == b and parse_edge_list(a).is_tree


def test_parse_and_domain_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "solve", tmp_path / "missing.txt")
    assert code == 2
    code, _, _ = run(capsys, "solve", "spider:3,9")
    assert code == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("p 3 5\n0 1\n")
    code, _, _ = run(capsys, "solve", bad)
    assert code == 2


ROUND_TRIP = [
    "path:3", "path:9", "path:14", "cycle:3", "cycle:11", "star:2", "star:14",
    "dstar:1,1", "dstar:2,5", "dstar:4,8", "spider:2,0", "spider:4,3", "spider:6,6",
    "gnqjl:0,1,2", "gnqjl:1,2,1", "gnqjl:0,4,5", "tmember:1", "tmember:7",
]


@pytest.mark.parametrize("spec", ROUND_TRIP)
def test_gen_round_trip(spec, tmp_path, capsys):
    s = parse_family_spec(spec)
    assert s.order <= 14
    out = tmp_path / "g.txt"
    run(capsys, "gen", spec, "-o", out)
    code, payload = run_json(capsys, "solve", out)
    assert code == 0
    assert payload["results"]["strdf"]["value"] == closed_form_gamma_str(s)
