"""pentctl end to end: exit codes, JSON schemas, stdin/stdout plumbing."""

import io
import json

import pytest
from conftest import fixture_text

from pentgeo import develop, geometry, geometry_to_json, parse_pent_file, verify
from pentgeo.cli import _exit_code, _report_dict, main
from pentgeo.errors import (
    ClimbFailed,
    NoConstructionAvailable,
    ParameterDomain,
    PentSyntaxError,
)
from pentgeo.graphs import generalized_petersen, petersen, write_graph_file

ORBIT_SEED_FILE = "20\n0 4\n1 5\n2 6\n0 3\n1 3\n2 3\n"


@pytest.fixture
def cli(capsys, monkeypatch):
    def run(argv, stdin=""):
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


@pytest.fixture
def fix18(tmp_path):
    path = tmp_path / "pent_3_18_3.pent"
    path.write_text(fixture_text("pent_3_18_3"))
    return str(path)


@pytest.fixture
def fix33(tmp_path):
    path = tmp_path / "pent_3_3_3.pent"
    path.write_text(fixture_text("pent_3_3_3"))
    return str(path)


def broken_geometry_json(pent33):
    return geometry_to_json(geometry(pent33.params, sorted(pent33.lines)[1:]))


def test_verify_text(cli, fix18):
    code, out, err = cli(["verify", fix18])
    assert code == 0
    assert "PENT(3,18,3)" in out
    assert "type: A" in out
    assert err == ""


def test_verify_json_schema(cli, fix18):
    code, out, _ = cli(["verify", fix18, "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["valid"] is True
    assert payload["type"] == "A"
    assert (payload["k"], payload["r"], payload["w"]) == (3, 18, 3)
    assert (payload["v"], payload["b"]) == (40, 240)
    assert set(payload["axioms"]) == {
        "partial_linear",
        "uniform",
        "regular",
        "opposite_designs",
    }
    assert payload["deficiency"] == {
        "regular_degree": 3,
        "girth": 5,
        "connected": True,
        "components": 1,
    }
    assert payload["line_split"] == {"opposite": 40, "non_opposite": 200, "e": 15}


def test_verify_stdin(cli):
    code, out, _ = cli(["verify", "-"], stdin=fixture_text("pent_3_3_3"))
    assert code == 0
    assert "type: A" in out


def test_verify_invalid_exits_1(cli, tmp_path, pent33):
    path = tmp_path / "broken.json"
    path.write_text(broken_geometry_json(pent33))
    code, out, _ = cli(["verify", str(path)])
    assert code == 1
    assert "FAIL" in out


def test_verify_missing_file_exits_2(cli, tmp_path):
    code, _, err = cli(["verify", str(tmp_path / "absent.pent")])
    assert code == 2
    assert "pentctl:" in err


def test_verify_garbage_exits_2(cli, tmp_path):
    path = tmp_path / "noise.pent"
    path.write_text("not a header\n")
    code, _, err = cli(["verify", str(path)])
    assert code == 2
    assert "pentctl:" in err


def test_develop_writes_geometry_json(cli, fix18, tmp_path):
    out_path = tmp_path / "geom.json"
    code, out, _ = cli(["develop", fix18, "-o", str(out_path)])
    assert code == 0
    assert out == ""
    payload = json.loads(out_path.read_text())
    assert payload["v"] == 40
    assert len(payload["lines"]) == 240
    assert payload["provenance"]["source"] == "base-blocks"


def test_develop_verify_pipeline_matches_in_process(cli, fix18):
    code, developed, _ = cli(["develop", fix18])
    assert code == 0
    code, out, _ = cli(["verify", "-", "--json"], stdin=developed)
    assert code == 0
    in_process = _report_dict(verify(develop(parse_pent_file(fixture_text("pent_3_18_3")))))
    assert json.loads(out) == json.loads(json.dumps(in_process))


def test_classify(cli, fix18):
    code, out, _ = cli(["classify", fix18])
    assert code == 0
    assert out == "A\n"


def test_classify_invalid(cli, tmp_path, pent33):
    path = tmp_path / "broken.json"
    path.write_text(broken_geometry_json(pent33))
    code, out, err = cli(["classify", str(path)])
    assert code == 1
    assert out == ""
    assert "invalid:" in err


def test_graph_petersen_report(cli):
    code, out, _ = cli(["graph", "petersen", "--report"])
    assert code == 0
    assert out == "n 10  edges 15  degree 3  girth 5  connected\n"


def test_graph_petersen_file_round_trip(cli):
    code, out, _ = cli(["graph", "petersen"])
    assert code == 0
    assert out == write_graph_file(petersen())


def test_graph_gp_requires_n(cli):
    code, _, err = cli(["graph", "gp"])
    assert code == 2
    assert "pentctl:" in err


def test_graph_gp(cli):
    code, out, _ = cli(["graph", "gp", "15", "--report"])
    assert code == 0
    assert out.startswith("n 30  edges 45  degree 3  girth 5")


def test_graph_hs(cli):
    code, out, _ = cli(["graph", "hs", "--report"])
    assert code == 0
    assert out == "n 50  edges 175  degree 7  girth 5  connected\n"


def test_graph_orbit(cli, tmp_path):
    path = tmp_path / "seed.graph"
    path.write_text(ORBIT_SEED_FILE)
    code, out, _ = cli(["graph", "orbit", "--file", str(path), "--step", "4", "--report"])
    assert code == 0
    assert out == "n 20  edges 30  degree 3  girth 5  connected\n"


def test_graph_orbit_needs_file_and_step(cli, tmp_path):
    code, _, _ = cli(["graph", "orbit", "--step", "4"])
    assert code == 2
    path = tmp_path / "seed.graph"
    path.write_text(ORBIT_SEED_FILE)
    code, _, _ = cli(["graph", "orbit", "--file", str(path)])
    assert code == 2


def test_sts_direct(cli):
    code, out, _ = cli(["sts", "9"])
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 3 and payload["w"] == 9
    assert len(payload["lines"]) == 12


def test_sts_climb_deterministic(cli):
    runs = [cli(["sts", "13", "--climb", "--seed", "4"]) for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0][0] == 0
    assert len(json.loads(runs[0][1])["lines"]) == 26


def test_sts_inadmissible_exits_2(cli):
    code, _, err = cli(["sts", "11"])
    assert code == 2
    assert "pentctl:" in err


def test_gdd_direct(cli):
    code, out, _ = cli(["gdd", "3", "4"])
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 3
    assert len(payload["groups"]) == 3
    assert len(payload["lines"]) == 16


def test_gdd_climb(cli):
    code, out, _ = cli(["gdd", "3", "4", "--climb"])
    assert code == 0
    assert len(json.loads(out)["lines"]) == 16


def test_gdd_extra_groups(cli):
    code, out, _ = cli(["gdd", "3", "2", "--groups", "4"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["groups"]) == 4
    assert len(payload["lines"]) == 8


def test_gdd_k4(cli):
    code, out, _ = cli(["gdd", "4", "4"])
    assert code == 0
    assert len(json.loads(out)["lines"]) == 16


def test_gdd_no_recipe_exits_1(cli):
    code, _, err = cli(["gdd", "4", "6"])
    assert code == 1
    assert "pentctl:" in err


def test_gdd_climb_rejects_k4(cli):
    code, _, err = cli(["gdd", "4", "5", "--climb"])
    assert code == 2
    assert "only 3-GDDs" in err


def test_construct_tripling(cli, fix33):
    code, out, _ = cli(["construct", "tripling", fix33])
    assert code == 0
    payload = json.loads(out)
    assert (payload["k"], payload["r"], payload["w"]) == (3, 10, 9)
    assert len(payload["lines"]) == 100
    assert payload["provenance"]["construction"] == "tripling"


def test_construct_product(cli, fix33):
    code, out, _ = cli(["construct", "product", fix33, "--h", "7"])
    assert code == 0
    payload = json.loads(out)
    assert (payload["r"], payload["w"]) == (24, 21)
    assert len(payload["lines"]) == 560


def test_construct_product_needs_h(cli, fix33):
    code, _, _ = cli(["construct", "product", fix33])
    assert code == 2


def test_construct_girth5(cli, tmp_path):
    path = tmp_path / "gp15.graph"
    path.write_text(write_graph_file(generalized_petersen(15)))
    code, out, _ = cli(["construct", "girth5", str(path)])
    assert code == 0
    payload = json.loads(out)
    assert (payload["r"], payload["w"]) == (13, 3)
    assert len(payload["lines"]) == 130


def test_construct_c36(cli, tmp_path):
    path = tmp_path / "petersen.graph"
    path.write_text(write_graph_file(petersen()))
    code, out, _ = cli(["construct", "c36", str(path), "--h", "3"])
    assert code == 0
    payload = json.loads(out)
    assert (payload["r"], payload["w"]) == (10, 9)
    assert len(payload["lines"]) == 100


def test_construct_c36_needs_h(cli, tmp_path):
    path = tmp_path / "petersen.graph"
    path.write_text(write_graph_file(petersen()))
    code, _, _ = cli(["construct", "c36", str(path)])
    assert code == 2


def test_construct_threads_validated(cli, fix33):
    code, _, _ = cli(["construct", "tripling", fix33, "--threads", "0"])
    assert code == 2


def test_construct_gdd_fill(cli, tmp_path, fix33):
    from pentgeo.designs import gdd_to_json_dict, uniform_gdd

    spec = {
        "gdd": gdd_to_json_dict(uniform_gdd(3, 10)),
        "ingredients": {"10": "pent_3_3_3.pent"},
    }
    (tmp_path / "pent_3_3_3.pent").write_text(fixture_text("pent_3_3_3"))
    spec_path = tmp_path / "fill.json"
    spec_path.write_text(json.dumps(spec))
    code, out, _ = cli(["construct", "gdd-fill", str(spec_path)])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["lines"]) == 130

    code, out, _ = cli(["verify", "-", "--json"], stdin=out)
    assert code == 0
    assert json.loads(out)["type"] == "B"


def test_construct_gdd_fill_bad_spec(cli, tmp_path):
    path = tmp_path / "fill.json"
    path.write_text(json.dumps({"gdd": {}}))
    code, _, err = cli(["construct", "gdd-fill", str(path)])
    assert code == 2
    assert "pentctl:" in err


def test_plan_pent3(cli):
    code, out, _ = cli(["plan", "pent3", "72", "25", "28", "9", "30000"])
    assert code == 0
    payload = json.loads(out)
    assert payload["reachable"] is True
    assert payload["target_r"] == 30000
    assert payload["r3"] in (72, 25)


def test_plan_pent3_unreachable(cli):
    code, out, _ = cli(["plan", "pent3", "72", "25", "28", "9", "5003"])
    assert code == 1
    assert json.loads(out) == {"reachable": False}


def test_plan_pent3_bad_triple(cli):
    code, _, err = cli(["plan", "pent3", "73", "25", "28", "9", "30000"])
    assert code == 2
    assert "pentctl:" in err


def test_plan_pent5(cli):
    code, out, _ = cli(["plan", "pent5", "200000"])
    assert code == 0
    payload = json.loads(out)
    assert payload["reachable"] is True
    assert payload["h"] == 86
    assert payload["q"] % 11 == 0
    assert sum(int(s) * n for s, n in payload["part_counts"].items()) == payload["m"]


def test_plan_pent5_unreachable(cli):
    code, out, _ = cli(["plan", "pent5", "200002"])
    assert code == 1
    assert json.loads(out) == {"reachable": False}


def test_usage_errors(cli):
    assert cli([])[0] == 2
    assert cli(["frobnicate"])[0] == 2
    assert cli(["plan"])[0] == 2


def test_exit_code_mapping():
    assert _exit_code(ClimbFailed("x")) == 3
    assert _exit_code(PentSyntaxError("x")) == 2
    assert _exit_code(ParameterDomain("x")) == 2
    assert _exit_code(OSError("x")) == 2
    assert _exit_code(NoConstructionAvailable("x")) == 1
    with pytest.raises(ValueError):
        _exit_code(ValueError("x"))
