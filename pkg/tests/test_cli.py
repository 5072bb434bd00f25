import json

import pytest

from kopt_adversary import cli
from kopt_adversary.core import Tour
from kopt_adversary.serialize import tour_to_json


def run(*args):
    return cli.run_cli([str(a) for a in args])


def test_gen_maxcut(tmp_path):
    out = tmp_path / "a.json"
    assert run("gen", "maxcut", "--family", "hprime", "--n", 2, "--p", 7, "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["kind"] == "maxcut" and doc["params"]["n"] == 2
    assert "v[2][1]" in doc["index"]


def test_flip_trace_is_byte_identical(tmp_path):
    inst = tmp_path / "a.json"
    run("gen", "maxcut", "--family", "hprime", "--n", 1, "--p", 7, "--out", inst)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for f in (a, b):
        assert run("run", "flip", "--instance", inst, "--pivot", "random", "--seed", 3, "--trace", f) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "step,move_kind,detail,delta_num,delta_den,objective_num,objective_den"


def test_gen_tsp_and_run_kopt(tmp_path, capsys):
    inst = tmp_path / "t.json"
    tsp = tmp_path / "t.tsp"
    assert run("gen", "tsp", "--k", 3, "--n", 1, "--p", 15, "--out", inst, "--tsplib", tsp) == 0
    doc = json.loads(inst.read_text())
    assert len(doc["registry"]) > 0 and doc["initial"]["start"] == "standard"
    lines = tsp.read_text().splitlines()
    assert "EDGE_WEIGHT_FORMAT: FULL_MATRIX" in lines and lines[-1] == "EOF"
    assert len(lines[7].split()) == 732
    capsys.readouterr()
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for f in (a, b):
        assert run("run", "kopt", "--instance", inst, "--k", 3, "--trace", f) == 0
    assert json.loads(capsys.readouterr().out.splitlines()[0])["steps"] == 154
    assert a.read_bytes() == b.read_bytes()


def test_run_kopt_from_file_and_wrong_start(tmp_path):
    inst = tmp_path / "t.json"
    run("gen", "tsp", "--k", "2.5", "--n", 1, "--p", 7, "--out", inst)
    doc = json.loads(inst.read_text())
    start = tmp_path / "s.json"
    start.write_text(json.dumps(doc["initial"]["tour"]))
    assert run("run", "kopt", "--instance", inst, "--k", "2.5", "--start", start, "--max-steps", 3) == 0
    assert run("run", "kopt", "--instance", inst, "--k", "2.5", "--start", "standard") == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(tour_to_json(Tour.from_order([0, 1, 2]))))
    assert run("run", "kopt", "--instance", inst, "--k", "2.5", "--start", bad) == 2


def test_tsplib_refuses_overflow():
    from fractions import Fraction as F
    from kopt_adversary.core import WeightedGraph
    from kopt_adversary.kopt import TSPInstance
    g = WeightedGraph(["a", "b", "c"], [(0, 1, F(1, 3)), (1, 2, 2 ** 62)])
    with pytest.raises(Exception):
        cli.tsplib_text("x", TSPInstance(g, F(2 ** 63)))


def test_verify_exit_codes(tmp_path):
    rep = tmp_path / "r.json"
    assert run("verify", "gadgets", "--report", rep) == 0
    assert json.loads(rep.read_text())["ok"] is True
    assert run("verify", "scaling", "--n", "1..2", "--p", 7, "--k", "flip") == 1


def test_report_scaling(tmp_path):
    out = tmp_path / "s.csv"
    assert run("report", "scaling", "--n", "1..2", "--p", 7, "--k", "2.5", "--out", out) == 0
    rows = out.read_text().splitlines()
    assert rows[1].startswith("1,7,2.5,steepest,77,77,True")
    assert rows[2].startswith("2,7,2.5,steepest,284,285,True")


@pytest.mark.parametrize("argv", [["--bogus"], ["gen", "maxcut", "--family", "x", "--n", "1", "--p", "3"],
                                  ["gen"], ["run", "kopt", "--instance", "nope.json", "--k", "3"],
                                  ["gen", "tsp", "--k", "1", "--n", "1", "--p", "15"],
                                  ["gen", "maxcut", "--family", "h", "--n", "1", "--p", "4"]])
def test_usage_errors(argv):
    assert cli.run_cli(argv) == 2


def test_help_exits_zero():
    assert cli.run_cli(["--help"]) == 0
