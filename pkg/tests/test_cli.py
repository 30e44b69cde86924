import json

import pytest

from bvformality import cli


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_dims_example(capsys):
    code, doc = run_json(capsys, "dims", "--n", "3", "--W", "4")
    assert code == 0
    assert doc["schema"] == 1 and doc["status"] == "pass"
    assert doc["report"]["t_tilde"] == {"1": 6, "2": 1, "3": 2, "4": 3}


def test_ce_homology_example(capsys):
    code, doc = run_json(capsys, "ce-homology", "--n", "2", "--W", "3")
    assert code == 0 and doc["report"]["total"] == 8


def test_verify_identity_example(capsys):
    code, doc = run_json(capsys, "verify-identity", "--N", "1")
    assert code == 0
    assert sum(c["passed"] for c in doc["report"]["checks"]) == 3


def test_verify_bv_reports_failure_with_payload(capsys):
    code, doc = run_json(capsys, "verify-bv", "--n", "3", "--W", "4")
    assert code == 1 and doc["status"] == "fail"
    assert doc["report"]["outside_window"]


def test_braid_nf(capsys):
    code, doc = run_json(capsys, "braid-nf", "--word", "s1 s2 s1 s2^-1 s1^-1 s2^-1")
    assert code == 0 and doc["report"]["trivial"]
    code, doc = run_json(capsys, "braid-nf", "--samples", "50")
    assert code == 0 and doc["report"]["agree"] == 50


def test_csv(capsys):
    assert cli.run(["bar-homology", "--n", "2", "--W", "2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "degree,weight,rank"
    assert "2,2,3" in lines


@pytest.mark.parametrize("argv", [
    ["dims", "--n", "6"],
    ["dims", "--W", "7"],
    ["solve-associator", "--N", "5"],
    ["verify-phi", "--format", "csv"],
    ["nonsense"],
    ["dims", "--word", "s1"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(argv)
    assert exc.value.code == 2


def test_out_file_and_timing_sidecar(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.run(["solve-associator", "--N", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["report"]["coefficient_AB"] == "-1/24"
    assert "seconds" in json.loads((tmp_path / "r.json.timing.json").read_text())
    assert capsys.readouterr().out == ""
