"""CLI subcommands: reports, exit codes, determinism."""

import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "puccikit.cli"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("PUCCI_THREADS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env
    )


def test_ops_properties_pass(tmp_path):
    out = tmp_path / "r.json"
    res = run_cli("ops-properties", "--samples", "300", "--out", str(out))
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["ok"] and report["max_violation"] <= 1e-9


def test_ops_properties_zero_samples_usage_error():
    res = run_cli("ops-properties", "--samples", "0")
    assert res.returncode == 2
    assert "error" in res.stderr


def test_ops_properties_asymmetric_include(tmp_path):
    bad = tmp_path / "m.json"
    bad.write_text('{"matrix": [[1.0, 2.0], [0.0, 1.0]]}')
    res = run_cli(
        "ops-properties", "--samples", "10", "--include", str(bad)
    )
    assert res.returncode == 2
    assert "symmetric" in res.stderr


def test_ops_properties_valid_include(tmp_path):
    good = tmp_path / "m.json"
    good.write_text('{"matrix": [[1.0, 0.5], [0.5, -1.0]]}')
    out = tmp_path / "r.json"
    res = run_cli(
        "ops-properties", "--samples", "10", "--include", str(good),
        "--out", str(out),
    )
    assert res.returncode == 0
    assert json.loads(out.read_text())["included_matrix"]["accepted"]


def test_radial_suite(tmp_path):
    out = tmp_path / "r.json"
    res = run_cli("radial-suite", "--radii", "50", "--out", str(out))
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["fundamental"]["ok"] and report["counterexample"]["ok"]


def test_radial_suite_eps_out_of_range():
    res = run_cli("radial-suite", "--eps-list", "0.8")
    assert res.returncode == 2


def test_capacity_suite_point(tmp_path):
    out = tmp_path / "r.json"
    res = run_cli(
        "capacity-suite", "--set", "point", "--alpha", "1.0",
        "--n-list", "16,32,64", "--out", str(out),
    )
    assert res.returncode == 0
    assert json.loads(out.read_text())["divergence_signature"]


def test_capacity_suite_segment_with_weights(tmp_path):
    out = tmp_path / "r.json"
    csv = tmp_path / "w.csv"
    res = run_cli(
        "capacity-suite", "--set", "segment", "--alpha", "0.0",
        "--n-list", "50,100", "--weights-csv", str(csv), "--out", str(out),
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["cauchy_signature"] and "capacity" in report
    assert csv.read_text().startswith("x,y,weight")


def test_capacity_suite_alpha_too_large():
    res = run_cli("capacity-suite", "--set", "point", "--alpha", "2.5")
    assert res.returncode == 2


def test_potential_check(tmp_path):
    out = tmp_path / "r.json"
    res = run_cli(
        "potential-check", "--atoms", "40", "--points", "100",
        "--out", str(out),
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["max_residual"] <= report["tolerance"]


def test_potential_check_inadmissible_alpha():
    res = run_cli("potential-check", "--alpha", "2.0", "--p", "4", "--b", "1")
    assert res.returncode == 2


def test_solve_malformed_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("lambda = 1\nLambda = 1\np = 2\nh = 0.125\nwhat = 1\n")
    res = run_cli("solve", "--config", str(cfg))
    assert res.returncode == 2
    assert "what" in res.stderr


def test_solve_small_disk(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(
        "lambda = 1\nLambda = 1\np = 2\ndelta = 1\nh = 0.0625\n"
        "f_const = -1\ntol = 1e-8\n"
    )
    out = tmp_path / "r.json"
    field = tmp_path / "f.csv"
    res = run_cli(
        "solve", "--config", str(cfg), "--out", str(out),
        "--field-csv", str(field),
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["bound_ok"] and report["solve"]["converged"]
    assert field.read_text().startswith("x,y,value,mask")


def test_bundled_counterexample_config(tmp_path):
    from importlib import resources

    cfg_dir = resources.files("puccikit") / "configs"
    ce = tmp_path / "ce.json"
    res = run_cli(
        "solve", "--config", str(cfg_dir / "counterexample.cfg"),
        "--out", str(ce),
    )
    assert res.returncode == 0
    report = json.loads(ce.read_text())
    assert report["profile"]["mp_violated"]
    assert report["profile"]["subsolution_ok"]
    assert report["profile"]["mp_violation_margin"] > 0.0


def test_bundled_mp_disk_config(tmp_path):
    from importlib import resources

    cfg_dir = resources.files("puccikit") / "configs"
    out = tmp_path / "mp.json"
    res = run_cli(
        "solve", "--config", str(cfg_dir / "mp_disk.cfg"), "--out", str(out)
    )
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["bound_ok"] and report["solve"]["converged"]
    # C = 1/4 at b = 0: the discrete sup saturates it from below
    assert abs(report["solve"]["interior_max"] - 0.25) <= 10.0 * 0.015625


def test_emp_subcommand(tmp_path):
    out = tmp_path / "r.json"
    res = run_cli("emp", "--h", "0.0625", "--out", str(out))
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["checks_ok"] and report["slack_monotone"]


def test_removability_subcommand(tmp_path):
    out = tmp_path / "r.json"
    res = run_cli(
        "removability", "--h", "0.03125", "--radii", "0.2,0.1,0.05",
        "--out", str(out),
    )
    assert res.returncode == 0
    assert json.loads(out.read_text())["decreasing"]


SMALL_RUNS = [
    ("ops-properties", "--samples", "200"),
    ("radial-suite", "--radii", "40"),
    ("capacity-suite", "--set", "point", "--alpha", "1.0",
     "--n-list", "16,32"),
    ("potential-check", "--atoms", "25", "--points", "50"),
    ("emp", "--h", "0.0625"),
    ("removability", "--h", "0.0625", "--radii", "0.3,0.15"),
]


@pytest.mark.parametrize("args", SMALL_RUNS, ids=lambda a: a[0])
def test_determinism_across_runs_and_threads(args, tmp_path):
    outs = []
    for tag, env in (
        ("a", None),
        ("b", None),
        ("t1", {"PUCCI_THREADS": "1"}),
        ("t4", {"PUCCI_THREADS": "4"}),
    ):
        out = tmp_path / f"{tag}.json"
        res = run_cli(*args, "--out", str(out), env_extra=env)
        assert res.returncode in (0, 1)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2] == outs[3]


def test_solve_determinism(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text(
        "lambda = 1\nLambda = 1\np = 2\ndelta = 1\nh = 0.125\nf_const = -1\n"
    )
    payloads = []
    for tag, env in (("a", None), ("b", {"PUCCI_THREADS": "4"})):
        out = tmp_path / f"{tag}.json"
        res = run_cli("solve", "--config", str(cfg), "--out", str(out),
                      env_extra=env)
        assert res.returncode == 0
        payloads.append(out.read_bytes())
    assert payloads[0] == payloads[1]
