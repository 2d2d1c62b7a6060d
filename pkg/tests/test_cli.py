import json

import numpy as np
import pytest

from qginibre import cli, io
from qginibre.experiments import CHECKS

REPORT_KEYS = {"test_name", "group", "n", "replicas", "ks", "value", "tolerance", "pass",
               "runtime_s", "detail"}


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_spectrum_full_size(tmp_path):
    assert run("spectrum", "--n", 300, "--replicas", 20, "--seed", 7, "--out", tmp_path) == 0
    header, data = io.read_csv(tmp_path / "eigenvalues.csv")
    assert header == ["replica", "index", "re", "im"]
    assert data.shape == (20 * 600, 4)
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert len(summary["empirical_energy"]) == 20
    assert abs(summary["mean_energy"] - 0.75) <= 0.02
    assert summary["failures"] == []


def test_spectrum_deterministic_and_parallel_safe(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    run("spectrum", "--n", 30, "--replicas", 4, "--seed", 11, "--out", a)
    run("spectrum", "--n", 30, "--replicas", 4, "--seed", 11, "--out", b)
    run("spectrum", "--n", 30, "--replicas", 4, "--seed", 11, "--out", c, "--jobs", 3)
    first = (a / "eigenvalues.csv").read_bytes()
    assert first == (b / "eigenvalues.csv").read_bytes() == (c / "eigenvalues.csv").read_bytes()
    assert (a / "summary.json").read_bytes() == (c / "summary.json").read_bytes()


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("QG_SEED", "11")
    run("spectrum", "--n", 10, "--replicas", 2, "--out", tmp_path / "env")
    run("spectrum", "--n", 10, "--replicas", 2, "--seed", 11, "--out", tmp_path / "flag")
    run("spectrum", "--n", 10, "--replicas", 2, "--seed", 12, "--out", tmp_path / "other")
    env = (tmp_path / "env" / "eigenvalues.csv").read_bytes()
    assert env == (tmp_path / "flag" / "eigenvalues.csv").read_bytes()
    assert env != (tmp_path / "other" / "eigenvalues.csv").read_bytes()


def test_all_replicas_failing_exits_nonzero(tmp_path, monkeypatch):
    from qginibre import eig
    monkeypatch.setattr(eig, "MAX_ITS_PER_EIG", 0)
    assert run("spectrum", "--n", 5, "--replicas", 2, "--out", tmp_path) == 1
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert [f["replica"] for f in summary["failures"]] == [0, 1]


def test_custom_potential(tmp_path):
    assert run("spectrum", "--n", 10, "--replicas", 1, "--potential", "0,0.5,1", "--out", tmp_path) == 0
    assert json.loads((tmp_path / "summary.json").read_text())["V"] == "0,0.5,1"
    with pytest.raises(SystemExit):
        run("spectrum", "--potential", "1,2")
    with pytest.raises(SystemExit):
        run("spectrum", "--n", 0)


def test_mcmc(tmp_path):
    assert run("mcmc", "--n", 16, "--steps", 200000, "--out", tmp_path) == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert set(summary) == {"n", "V", "steps", "acceptance_rate", "mean_energy"}
    assert 0.1 < summary["acceptance_rate"] < 0.9
    header, data = io.read_csv(tmp_path / "trace.csv")
    assert header == ["step", "point_index", "re", "im", "accepted"]
    assert data.shape == (200000, 5)
    assert data[0, 0] == 100000 and np.all(data[:, 3] > 0)
    assert data[:, 4].mean() == pytest.approx(summary["acceptance_rate"])


def test_mcmc_small_is_deterministic(tmp_path):
    for d in ("a", "b"):
        run("mcmc", "--n", 3, "--steps", 500, "--burnin", 50, "--thin", 5, "--seed", 4, "--out", tmp_path / d)
    assert (tmp_path / "a" / "trace.csv").read_bytes() == (tmp_path / "b" / "trace.csv").read_bytes()
    assert run("mcmc", "--burnin", "-1", "--out", tmp_path / "c") == 2


def test_potential_table(tmp_path):
    assert run("potential-table", "--measure", "nu", "--grid", 64, "--out", tmp_path) == 0
    header, data = io.read_csv(tmp_path / "potential_nu.csv")
    assert header == ["re", "im", "U_closed", "U_quad", "abs_err"]
    assert data.shape == (64 * 64, 5)
    assert data[:, 4].max() <= 1e-5


def test_potential_table_on_circle(tmp_path):
    # a 3-point grid with extent 1 puts (+-1, 0) and (0, +-1) on the circle
    assert run("potential-table", "--measure", "haar", "--grid", 3, "--extent", 1, "--out", tmp_path) == 0
    _, data = io.read_csv(tmp_path / "potential_haar.csv")
    assert data.shape == (9, 5) and data[:, 4].max() <= 1e-5


def test_classes(tmp_path):
    assert run("classes", "--n", 300, "--replicas", 2, "--out", tmp_path) == 0
    header, data = io.read_csv(tmp_path / "classes.csv")
    assert header == ["re", "im", "w", "x", "y", "z", "canon_re", "canon_im", "weight"]
    assert data.shape == (600, 9)
    assert np.allclose(data[:, 6], data[:, 0], atol=1e-10)
    assert np.allclose(data[:, 7], data[:, 1], atol=1e-10)
    assert np.array_equal(data[:, 2], data[:, 0])
    assert data[:, 8].sum() == pytest.approx(1.0)


def test_verify_only_potentials(tmp_path, capsys):
    assert run("verify", "--only", "potentials", "--out", tmp_path) == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert isinstance(report, list) and report
    assert {r["group"] for r in report} == {"potentials"}
    for r in report:
        assert set(r) == REPORT_KEYS
        assert isinstance(r["pass"], bool) and isinstance(r["value"], float)
    assert "[PASS]" in capsys.readouterr().out


def test_verify_unknown_group(tmp_path):
    assert run("verify", "--only", "nope", "--out", tmp_path) == 2
    assert set(CHECKS) >= {"potentials", "mcmc", "solver"}


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "qginibre", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "potential-table" in out.stdout
