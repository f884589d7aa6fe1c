"""CLI surface: file formats, sidecars, exit codes, round trips."""

import csv
import json
import os

import numpy as np
import pytest

from g2mono.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_writes_csv_and_sidecar(tmp_path, capsys):
    out = str(tmp_path / "bps.csv")
    code, stdout, _ = run(capsys, "solve", "--metric", "euclidean",
                          "--mass", "1", "--tol", "1e-10", "--out", out)
    assert code == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0].keys()) == ["r", "a", "phi", "v"]
    assert len(rows) > 100
    with open(str(tmp_path / "bps.json")) as fh:
        side = json.load(fh)
    assert side["schema"] == 1
    assert abs(side["mass"] - 1.0) <= 1e-8
    assert abs(side["beta"] + 1.0 / 3.0) <= 1e-8
    assert "stats" in side and "timestamp" in side


def test_solve_beta_zero_flat(tmp_path, capsys):
    out = str(tmp_path / "flat.csv")
    code, stdout, _ = run(capsys, "solve", "--metric", "bs_s4",
                          "--beta", "0", "--out", out)
    assert code == 0
    assert json.loads(stdout)["mass"] == 0.0


def test_solve_positive_beta_exit1(tmp_path, capsys):
    code, _, err = run(capsys, "solve", "--metric", "bs_cp2",
                       "--beta", "0.1", "--out", str(tmp_path / "x.csv"))
    assert code == 1
    assert "no solutions" in err


def test_solve_usage_error_exit2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--metric", "euclidean",
              "--out", str(tmp_path / "x.csv")])
    assert exc.value.code == 2


def test_energy_roundtrip(tmp_path, capsys):
    out = str(tmp_path / "bps.csv")
    run(capsys, "solve", "--metric", "euclidean", "--mass", "1",
        "--out", out)
    code, stdout, _ = run(capsys, "energy", "--profile", out)
    assert code == 0
    rep = json.loads(stdout)
    assert abs(rep["E_I"] - 0.5) <= 1e-6
    assert rep["metric"] == "euclidean"


def test_sweep_table_and_plot(tmp_path, capsys):
    out = str(tmp_path / "sweep.csv")
    svg = str(tmp_path / "sweep.svg")
    code, _, _ = run(capsys, "sweep", "--metric", "euclidean",
                     "--mass-min", "0.5", "--mass-max", "2",
                     "--steps", "4", "--out", out, "--plot", svg)
    assert code == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert [r["mass"] for r in rows] == ["0.5", "1", "1.5", "2"]
    betas = [float(r["beta"]) for r in rows]
    masses = [float(r["mass"]) for r in rows]
    for b, m in zip(betas, masses):
        assert abs(b + m * m / 3.0) <= 1e-6     # BPS relation
    assert all(b2 < b1 for b1, b2 in zip(betas, betas[1:]))
    assert os.path.exists(svg)
    assert open(svg).read().startswith("<svg")


def test_sweep_empty_range_exit2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--metric", "euclidean", "--mass-min", "2",
              "--mass-max", "1", "--steps", "3",
              "--out", str(tmp_path / "s.csv")])
    assert exc.value.code == 2


def test_verify_su3(capsys):
    code, stdout, _ = run(capsys, "verify", "--oracle", "su3_instanton",
                          "--c", "2", "--r-min", "0.01", "--r-max", "50")
    assert code == 0
    assert json.loads(stdout)["sup_residual"] <= 1e-10


def test_verify_bps(capsys):
    code, stdout, _ = run(capsys, "verify", "--oracle", "bps_mass",
                          "--mass", "1")
    assert code == 0
    assert json.loads(stdout)["sup_residual"] <= 1e-12


def test_green_command(capsys):
    code, stdout, _ = run(capsys, "green", "--metric", "bs_s4",
                          "--charge", "1", "--mass", "1", "--r", "50")
    assert code == 0
    rep = json.loads(stdout)
    assert abs(rep["fit"]["exponent"] + 5.0) <= 0.05
    assert abs(rep["phi_D"] + 1.0 + rep["G"]) <= 1e-12


def test_series_command(capsys):
    code, stdout, _ = run(capsys, "series", "--metric", "euclidean",
                          "--beta=-1/3", "--order", "6")
    assert code == 0
    rep = json.loads(stdout)
    assert rep["coeffs_exact"][2] == "-1/3"
    assert rep["coeffs_exact"][4] == "1/90"


def test_deterministic_outputs(tmp_path, capsys):
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    run(capsys, "solve", "--metric", "hyperbolic", "--mass", "1", "--out", a)
    run(capsys, "solve", "--metric", "hyperbolic", "--mass", "1", "--out", b)
    assert open(a).read() == open(b).read()


def test_threads_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("G2MONO_THREADS", "1")
    out = str(tmp_path / "s.csv")
    code, _, _ = run(capsys, "sweep", "--metric", "euclidean",
                     "--mass-min", "1", "--mass-max", "1", "--steps", "1",
                     "--out", out)
    assert code == 0
    with open(str(tmp_path / "s.json")) as fh:
        assert json.load(fh)["threads"] == 1
