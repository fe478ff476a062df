"""End-to-end CLI tests run through subprocess, matching real usage."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "qbrach.cli"]


def run_cli(*args, cwd=None):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, cwd=cwd
    )


def test_verify_algebra_majorana(tmp_path):
    out = tmp_path / "va.json"
    res = run_cli("verify-algebra", "--rep", "majorana", "--out", str(out))
    assert res.returncode == 0, res.stderr
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == "1"
    assert payload["verdict"] == "PASS"
    assert payload["max_residual"] == 0


def test_verify_algebra_all_reps():
    for rep in ("majorana", "dirac", "gamma"):
        res = run_cli("verify-algebra", "--rep", rep)
        assert res.returncode == 0, (rep, res.stderr)
        assert "PASS" in res.stdout


def test_classify_mass_verdicts(tmp_path):
    out = tmp_path / "cm.json"
    res = run_cli(
        "classify-mass", "--rep", "majorana", "--m", "1",
        "--px", "1", "--py", "1", "--pz", "1", "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "ROTATING"
    assert payload["expected_rate"] == pytest.approx(4.0)

    res = run_cli(
        "classify-mass", "--rep", "dirac", "--m", "1",
        "--px", "1", "--py", "1", "--pz", "1",
    )
    assert res.returncode == 0
    assert "CONSTANT" in res.stdout


def test_missing_required_flag_exits_2():
    res = run_cli("classify-mass", "--rep", "majorana", "--px", "1",
                  "--py", "1", "--pz", "1")
    assert res.returncode == 2
    assert res.stderr


def test_unknown_command_exits_2():
    res = run_cli("no-such-command")
    assert res.returncode == 2


def test_invalid_theta_grid_exits_2(tmp_path):
    res = run_cli("compton", "--rep", "gamma", "--m", "1", "--omega1", "1",
                  "--theta-grid", "bogus", "--out", str(tmp_path / "x.csv"))
    assert res.returncode == 2
    assert "error" in res.stderr


def test_compton_csv(tmp_path):
    out = tmp_path / "compton.csv"
    res = run_cli("compton", "--rep", "gamma", "--m", "1", "--omega1", "1",
                  "--theta-grid", "0:pi:16", "--out", str(out))
    assert res.returncode == 0, res.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == "theta,omega2,residual_energy,residual_matrix_max"
    assert len(lines) == 17  # header + end-inclusive 16-point grid
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0
    last = lines[-1].split(",")
    assert float(last[0]) == pytest.approx(3.141592653589793)


def test_compton_reps_agree(tmp_path):
    """Both representation back ends produce the same omega2 column."""
    out_g = tmp_path / "g.csv"
    out_m = tmp_path / "m.csv"
    for rep, out in (("gamma", out_g), ("majorana", out_m)):
        res = run_cli("compton", "--rep", rep, "--m", "1.5", "--omega1", "0.8",
                      "--theta-grid", "0:pi:32", "--out", str(out))
        assert res.returncode == 0, res.stderr
    col_g = [ln.split(",")[1] for ln in out_g.read_text().splitlines()[1:]]
    col_m = [ln.split(",")[1] for ln in out_m.read_text().splitlines()[1:]]
    assert col_g == col_m


def test_evolve_csv(tmp_path):
    out = tmp_path / "traj.csv"
    res = run_cli("evolve", "--system", "majorana", "--m", "1", "--px", "1",
                  "--py", "1", "--pz", "1", "--t-end", "0.05", "--step", "1e-3",
                  "--out", str(out))
    assert res.returncode == 0, res.stderr
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "t"
    assert len(header) == 1 + 15 + 4
    assert len(lines) == 52  # header + 51 samples


def test_frames_json(tmp_path):
    out = tmp_path / "frames.json"
    res = run_cli("frames", "--m", "1", "--px", "1", "--py", "1", "--pz", "1",
                  "--t", "0.7", "--seed", "11", "--out", str(out))
    assert res.returncode == 0, res.stderr
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "PASS"
    assert payload["klein_gordon_residual"] < 1e-10


def test_angmom_json(tmp_path):
    out = tmp_path / "u.json"
    res = run_cli("angmom", "--nx", "1", "--lyz", "2", "--t", "0.5",
                  "--out", str(out))
    assert res.returncode == 0, res.stderr
    payload = json.loads(out.read_text())
    assert payload["orthogonality_residual"] < 1e-12


def test_angmom_conserve(tmp_path):
    out = tmp_path / "ac.json"
    res = run_cli("angmom-conserve", "--seed", "7", "--t-end", "1",
                  "--step", "1e-3", "--out", str(out))
    assert res.returncode == 0, res.stderr
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "PASS"


def test_out_dir_environment_variable(tmp_path):
    env_dir = tmp_path / "reports"
    env_dir.mkdir()
    res = subprocess.run(
        CLI + ["verify-algebra", "--rep", "dirac", "--out", "va.json"],
        capture_output=True, text=True,
        env={"QBRACH_OUT_DIR": str(env_dir), "PATH": "/usr/bin:/bin"},
    )
    assert res.returncode == 0, res.stderr
    assert (env_dir / "va.json").exists()
