import json

import numpy as np
import pytest

from dirac1d.cli import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG,
    EXIT_DOMAIN,
    EXIT_OK,
    cmd_run,
    cmd_verify,
    load_config,
    main,
)

GOOD_CONFIG = """\
[model]
name = "thirring"
coefficient = 1.0

[grid]
x_min = -8.0
x_max = 8.0
n_cells = 128

[initial.u]
profile = "bump"
amplitude = 0.5
center = 0.0
radius = 1.0

[initial.v]
profile = "bump"
amplitude = [0.0, 0.5]
center = 0.0
radius = 1.0

[run]
t_final = 2.0
snapshot_stride = 4
windows = [[-1.0, 1.0]]
"""


def _write(tmp_path, text, name="run.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_run_writes_artifacts(tmp_path):
    cfg = _write(tmp_path, GOOD_CONFIG)
    out = tmp_path / "out"
    assert cmd_run(cfg, out_override=str(out)) == EXIT_OK
    assert (out / "diagnostics.csv").exists()
    assert (out / "report.json").exists()
    snaps = sorted((out / "snapshots").iterdir())
    assert snaps and snaps[0].name == "step_000000.csv"

    header = (out / "diagnostics.csv").read_text().splitlines()[0]
    assert header == "t,L,Q,D,glimm,linf,cumD,window_0"

    data = np.loadtxt(out / "diagnostics.csv", delimiter=",", skiprows=1)
    L = data[:, 1]
    assert np.max(np.abs(L - L[0])) / L[0] <= 1e-12  # no coupling: L constant

    report = json.loads((out / "report.json").read_text())
    assert report["model"] == "thirring"
    assert report["constants"]["c"] == 0.0
    assert report["constants"]["K"] == 5.0
    assert report["constants"]["delta"] is None  # unbounded
    assert report["hypothesis_met"] is True
    assert "max_violation" in report["monotonicity"]
    assert report["linf_bound"]["holds"] is True
    assert report["window_bounds"]["[-1.0,1.0]"] is True


def test_run_is_deterministic(tmp_path):
    cfg = _write(tmp_path, GOOD_CONFIG)
    assert cmd_run(cfg, out_override=str(tmp_path / "a")) == EXIT_OK
    assert cmd_run(cfg, out_override=str(tmp_path / "b")) == EXIT_OK
    assert (tmp_path / "a" / "diagnostics.csv").read_bytes() == (
        tmp_path / "b" / "diagnostics.csv"
    ).read_bytes()


def test_malformed_toml_exits_2(tmp_path, capsys):
    cfg = _write(tmp_path, "[model\nname=")
    assert cmd_run(cfg) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_unknown_key_rejected(tmp_path):
    bad = GOOD_CONFIG + "\n[solver]\nflux_limiter = true\n"
    assert cmd_run(_write(tmp_path, bad)) == EXIT_CONFIG


def test_missing_file_exits_2(tmp_path):
    assert cmd_run(tmp_path / "nope.toml") == EXIT_CONFIG


def test_support_reaching_boundary_exits_4(tmp_path, capsys):
    cfg = GOOD_CONFIG.replace("t_final = 2.0", "t_final = 10.0")
    assert cmd_run(_write(tmp_path, cfg)) == EXIT_DOMAIN
    assert "domain violation" in capsys.readouterr().err


def test_custom_model_config(tmp_path):
    cfg = GOOD_CONFIG.replace(
        '[model]\nname = "thirring"\ncoefficient = 1.0',
        '[model]\nname = "custom"\nw = [[1, 1, 0.5]]\ngamma = 0.25',
    )
    model, *_ = load_config(_write(tmp_path, cfg))
    assert model.w_coeffs == {(1, 1): 0.5}
    assert model.gn_coupling == 0.25


def test_preset_rejects_custom_keys(tmp_path):
    cfg = GOOD_CONFIG.replace("coefficient = 1.0", "gamma = 1.0")
    with pytest.raises(ValueError, match="custom"):
        load_config(_write(tmp_path, cfg))


def test_invalid_window_rejected(tmp_path):
    cfg = GOOD_CONFIG.replace("windows = [[-1.0, 1.0]]", "windows = [[1.0, -1.0]]")
    assert cmd_run(_write(tmp_path, cfg)) == EXIT_CONFIG


def test_verify_functionals_passes(capsys):
    assert cmd_verify("functionals") == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out and "bony-q" in out


def test_verify_unknown_suite():
    assert cmd_verify("spectra") == EXIT_CONFIG


def test_verify_env_override_forces_failure(monkeypatch, capsys):
    monkeypatch.setenv("DIRAC1D_Q_ORACLE_RTOL", "0")
    assert cmd_verify("functionals") == EXIT_CHECK_FAILED
    assert "FAIL" in capsys.readouterr().out


def test_main_entrypoint(tmp_path):
    cfg = _write(tmp_path, GOOD_CONFIG)
    code = main(["run", str(cfg), "--out", str(tmp_path / "o"), "--snapshots", "8"])
    assert code == EXIT_OK
    assert (tmp_path / "o" / "diagnostics.csv").exists()
