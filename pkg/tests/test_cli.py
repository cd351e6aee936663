import json
import shutil
import subprocess

import pytest

from sbrep.catalog import Representation, burau, homog_rho, sb2_family, sb3_ext_dim2
from sbrep.cli import main
from sbrep.linalg import Matrix
from sbrep.presentations import sigma


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_construct_and_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--family", "burau", "--n", "4")
    assert code == 0
    path = write(tmp_path, "b4.json", json.loads(out))
    code, out, _ = run(capsys, "verify", "--rep", path, "--group", "bn", "--n", "4")
    assert code == 0 and json.loads(out) == {"violations": []}


def test_construct_with_params(capsys):
    code, out, _ = run(capsys, "construct", "--family", "sb3_ext2",
                       "--params", '{"l1": 1, "l2": -1, "a1": 1, "b1": 1}')
    assert code == 0
    rep = Representation.from_json(json.loads(out))
    assert rep.images == sb3_ext_dim2(1, -1, 1, 1).images


def test_verify_reports_violation(capsys, tmp_path):
    obj = burau(3).evaluate(2).to_json()
    obj["images"]["s2"] = Matrix.identity(3).to_json()
    rep_path = write(tmp_path, "bad.json", obj)
    code, out, _ = run(capsys, "verify", "--rep", rep_path)
    report = json.loads(out)
    assert code == 1
    assert report["violations"] and report["violations"][0]["family"] == 1
    assert "residual" in report["violations"][0]


def test_verify_wrong_n(capsys, tmp_path):
    path = write(tmp_path, "b3.json", burau(3).to_json())
    code, _, err = run(capsys, "verify", "--rep", path, "--n", "4")
    assert code == 2 and "s3" in err


def test_constraint_error_exit_code(capsys):
    code, _, err = run(capsys, "construct", "--family", "sb3_ext3", "--params",
                       '{"l1": 1, "l2": -1, "l3": 1, "c1": 1, "e1": 1, "f1": 1}')
    assert code == 2 and "λ_2 ≠ −λ_3" in err


def test_malformed_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "irreducible", "--rep", str(bad))
    assert code == 2 and "cannot read JSON" in err


@pytest.mark.parametrize("oracle", ["burnside", "witness", "predicate", "exhaustive"])
def test_irreducible_oracles(capsys, tmp_path, oracle):
    rep = homog_rho("rho3", {"b": 1, "c": 1, "x": 0, "y": 1}, 3)
    path = write(tmp_path, "r.json", rep.to_json())
    code, out, _ = run(capsys, "irreducible", "--rep", path, "--oracle", oracle)
    verdict = json.loads(out)
    assert code == 0
    assert set(verdict) >= {"status", "witness", "oracle", "notes"}
    assert verdict["status"] == "Reducible"


def test_irreducible_laurent_at_point(capsys, tmp_path):
    path = write(tmp_path, "r.json", burau(3).to_json())
    code, out, _ = run(capsys, "irreducible", "--rep", path, "--at", "t=1+i")
    verdict = json.loads(out)
    assert code == 0 and verdict["status"] == "Reducible"
    code, _, err = run(capsys, "irreducible", "--rep", path, "--oracle", "predicate")
    assert code == 2 and "no closed-form predicate" in err


def test_global_flags_before_subcommand(capsys, tmp_path):
    path = write(tmp_path, "r.json", burau(3).to_json())
    out_path = tmp_path / "v.json"
    code, out, _ = run(capsys, "--at", "2", "--output", str(out_path),
                       "irreducible", "--rep", path)
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["status"] == "Reducible"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify-sb2",
                       "--sigma", json.dumps(Matrix.diag([1, 2]).to_json()),
                       "--tau", json.dumps(Matrix.diag([3, 4]).to_json()))
    assert code == 0 and json.loads(out)["family"] == "sb2_rho4"


def test_classify_plain_rows(capsys):
    code, out, _ = run(capsys, "classify-sb2", "--sigma", "[[2, 0], [0, 2]]",
                       "--tau", '[["1/2", 1], [0, "i"]]')
    assert code == 0 and json.loads(out)["family"] == "sb2_rho3"


def test_classify_not_commuting(capsys):
    code, _, _ = run(capsys, "classify-sb2",
                     "--sigma", json.dumps(Matrix([[1, 1], [0, 1]]).to_json()),
                     "--tau", json.dumps(Matrix([[1, 0], [1, 1]]).to_json()))
    assert code == 2


def test_audit_sb2_rho3_pool(capsys):
    code, out, _ = run(capsys, "audit", "--family", "sb2_rho3", "--sweep", "pool",
                       "--samples", "60")
    report = json.loads(out)
    assert code == 3
    assert report["discrepancies"]
    assert {d["predicate_name"] for d in report["discrepancies"]} == {"sb2_predicate"}
    assert report["skipped"] and all("constraint" in s for s in report["skipped"])


def test_audit_single_rep(capsys, tmp_path):
    rep = sb2_family("rho3", {"w": 2, "a": 0, "b": 1, "c": 1, "d": 0})
    path = write(tmp_path, "r.json", rep.to_json())
    code, out, _ = run(capsys, "audit", "--rep", path)
    assert code == 3 and len(json.loads(out)["discrepancies"]) == 1


def test_sweep_clean_and_deterministic(capsys):
    args = ("sweep", "--family", "local_rho3", "--n", "3", "--samples", "40")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["summary"]["discrepant"] == 0


def test_sweep_seeded_reproducible(capsys):
    args = ("sweep", "--family", "mu3", "--n", "3", "--samples", "15", "--seed", "7")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    _, out3, _ = run(capsys, "sweep", "--family", "mu3", "--n", "3", "--samples", "15",
                     "--seed", "8")
    assert out1 == out2 and out1 != out3


def test_sweep_config_file(capsys, tmp_path):
    cfg = write(tmp_path, "cfg.json", {
        "family": "mu3", "n": [3, 4], "grid": {"b": ["1", "2"], "c": ["1", "1/2"]}})
    code, out, _ = run(capsys, "sweep", "--config", cfg)
    report = json.loads(out)
    assert code == 0 and report["summary"]["valid"] == 8


def test_list_families(capsys):
    code, out, _ = run(capsys, "list-families")
    tags = {f["tag"] for f in json.loads(out)}
    assert code == 0 and {"burau", "sb2_rho3", "local_rho3", "phi"} <= tags


@pytest.mark.skipif(shutil.which("sbrep") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["sbrep", "construct", "--family", "standard", "--n", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    rep = Representation.from_json(json.loads(res.stdout))
    assert rep.images[sigma(1)].size == 3
