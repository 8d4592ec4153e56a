import json
import os

import pytest

from schottky_lab.cli import main
from conftest import FIXTURES

F1 = str(FIXTURES / "f1.json")


def run(args):
    return main(args)


def test_validate_ok(tmp_path, capsys):
    code = run(["validate", F1, "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "valid" in out
    report = json.loads((tmp_path / "validation.json").read_text())
    assert report["ok"] is True
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == "validate"
    assert "validation.json" in manifest["artifacts"]
    assert F1 in manifest["inputs"]


def test_validate_overlap_exit_1(tmp_path, capsys):
    code = run(["validate", str(FIXTURES / "f1_overlap.json"), "--out", str(tmp_path)])
    assert code == 1
    assert "disjointness" in capsys.readouterr().out


def test_validate_malformed_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code = run(["validate", str(bad), "--out", str(tmp_path)])
    assert code == 2
    assert "parse error" in capsys.readouterr().err


def test_dim_command(tmp_path, capsys):
    code = run(["dim", F1, "--tol", "1e-8", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "delta = 0.3438" in out
    payload = json.loads((tmp_path / "dim.json").read_text())
    assert payload["residual"] < 1e-8
    assert 0.0 < payload["delta"] < 1.0
    assert len(payload["bracket"]) == 2


def test_scan_halfplane_refusal(tmp_path, capsys):
    code = run([
        "scan", F1, "--re-min", "-0.2", "--re-max", "0.4", "--out", str(tmp_path),
    ])
    assert code == 3
    assert "half-plane" in capsys.readouterr().err


def test_scan_writes_contract_columns(tmp_path):
    code = run([
        "scan", F1,
        "--re-min", "0.31", "--re-max", "0.38",
        "--im-min", "-0.05", "--im-max", "0.05",
        "--grid", "3x4", "--out", str(tmp_path),
    ])
    assert code == 0
    scan_lines = (tmp_path / "scan.csv").read_text().splitlines()
    assert scan_lines[0] == "s_re,s_im,det_re,det_im"
    assert len(scan_lines) == 1 + 4 * 5  # (n_re+1)(n_im+1) nodes
    zeros_lines = (tmp_path / "zeros.csv").read_text().splitlines()
    assert zeros_lines[0] == "s_re,s_im,mult,residual"
    assert len(zeros_lines) == 2  # the base zero at delta
    mult = int(zeros_lines[1].split(",")[2])
    assert mult == 1


def test_cover_replay_byte_identical(tmp_path):
    args = [
        "cover", F1,
        "--re-min", "0.272", "--re-max", "0.444",
        "--im-min", "-0.8", "--im-max", "0.8",
        "--n", "4", "--trials", "2", "--seed", "11",
        "--truncation", "8", "--ell", "8",
    ]
    code = run(args + ["--out", str(tmp_path / "a")])
    assert code == 0
    code = run(args + ["--out", str(tmp_path / "b")])
    assert code == 0
    csv_a = (tmp_path / "a" / "experiment.csv").read_bytes()
    csv_b = (tmp_path / "b" / "experiment.csv").read_bytes()
    assert csv_a == csv_b
    header = csv_a.decode().splitlines()[0]
    assert header == "n,trial,seed,certified,ell,max_norm,new_zero_count"


def test_cover_halfplane_refusal(tmp_path, capsys):
    code = run([
        "cover", F1, "--re-min", "0.05", "--re-max", "0.4",
        "--n", "2", "--trials", "1", "--out", str(tmp_path),
    ])
    assert code == 3
    assert "halfplane" in capsys.readouterr().err


def test_norm_decay_csv(tmp_path):
    code = run([
        "norm-decay", F1, "--s-re", "0.37", "--ell-max", "3",
        "--cover-n", "6", "--seed", "3", "--truncation", "8",
        "--out", str(tmp_path),
    ])
    assert code == 0
    lines = (tmp_path / "norm_decay.csv").read_text().splitlines()
    assert lines[0] == "ell,s_re,s_im,norm,bound"
    assert len(lines) == 4


def test_bounds_csv(tmp_path):
    code = run([
        "bounds", F1, "--s-re", "0.45", "--ell-min", "2", "--ell-max", "3",
        "--radius", "4", "--truncation", "8", "--out", str(tmp_path),
    ])
    assert code == 0
    lines = (tmp_path / "bounds.csv").read_text().splitlines()
    assert lines[0] == "ell,s_re,s_im,bound,lhs_compressed,fallback_flag"
    assert len(lines) == 3


def test_out_dir_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SCHOTTKY_LAB_OUT", str(tmp_path / "envout"))
    code = run(["validate", F1])
    assert code == 0
    assert (tmp_path / "envout" / "validation.json").exists()


def test_no_writes_outside_out_dir(tmp_path, monkeypatch):
    workdir = tmp_path / "cwd"
    workdir.mkdir()
    monkeypatch.chdir(workdir)
    code = run(["dim", F1, "--out", str(tmp_path / "only")])
    assert code == 0
    assert os.listdir(workdir) == []
