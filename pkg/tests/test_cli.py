"""Command-line front-end tests: subcommands, CSV schemas, metadata, exit codes."""

import csv
import json

import numpy as np
import pytest

from spdcsim.cli import main
from spdcsim.pump import PumpSpec, analytic_profile

@pytest.fixture()
def fast_config(tmp_path):
    path = tmp_path / "fast.toml"
    path.write_text(
        "[detectors]\nstep_um = 12.0\nhalfwidth_um = 130.0\n"
        "[pump]\ngrid_step_um = 4.0\n"
        "[phasematch]\nn_z_planes = 5\nsinc_convention = 'half'\n"
        "[stats]\nn_resamples = 200\ncounts_total = 1e5\n"
    )
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, list(reader)


def test_phasematch_reports_angle(capsys):
    assert main(["phasematch"]) == 0
    out = capsys.readouterr().out
    assert "collinear angle" in out
    angle = float(out.split("collinear angle")[1].split("deg")[0])
    assert 28.56 <= angle <= 29.06
    assert "Kato" in out  # coefficient provenance label


def test_phasematch_both_processes(capsys):
    assert main(["phasematch", "--both"]) == 0
    out = capsys.readouterr().out
    assert "type1" in out and "type2" in out
    angles = [float(seg.split("deg")[0]) for seg in out.split("collinear angle")[1:]]
    assert angles[1] > angles[0]


def test_phasematch_invalid_wavelength_exits_nonzero(capsys):
    assert main(["phasematch", "--wavelength-nm", "2000"]) != 0
    assert "error" in capsys.readouterr().err


def test_pump_writes_profile(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["pump", "--output-dir", str(out)]) == 0
    header, rows = read_csv(out / "pump_profile.csv")
    assert header == ["x_um", "re", "im"]
    x = np.array([float(r[0]) for r in rows])
    re = np.array([float(r[1]) for r in rows])
    assert re.max() == pytest.approx(1.0)
    assert re[np.argmin(np.abs(x))] == pytest.approx(1.0)
    meta = json.loads((out / "pump_profile.csv.meta.json").read_text())
    assert meta["config"]["pump"]["source"] == "analytic"
    assert "config_hash" in meta


def test_pump_measured_roundtrip(tmp_path):
    profile = analytic_profile(PumpSpec(), np.arange(-400, 401) * 1e-6)
    src = tmp_path / "measured.csv"
    lines = ["x_um,intensity"] + [
        f"{x*1e6},{i}" for x, i in zip(profile.x, profile.intensity())
    ]
    src.write_text("\n".join(lines) + "\n")
    out = tmp_path / "out"
    assert main(["pump", "--source", "measured", "--profile", str(src),
                 "--output-dir", str(out)]) == 0
    _, rows = read_csv(out / "pump_profile.csv")
    written = {float(r[0]): float(r[1]) for r in rows}
    for x, v in zip(profile.x, np.abs(profile.values)):
        assert written[round(x * 1e6, 6)] == pytest.approx(v, abs=1e-9)


def test_simulate_outputs_and_schemas(tmp_path, fast_config, capsys):
    out = tmp_path / "out"
    assert main(["simulate", "--config", fast_config, "--output-dir", str(out)]) == 0
    header, rows = read_csv(out / "coincidence_map.csv")
    assert header == ["x1_um", "x2_um", "rate"]
    n = int(np.sqrt(len(rows)))
    assert n * n == len(rows)
    # row-major over x1 then x2
    assert rows[0][0] == rows[1][0]
    assert rows[0][1] != rows[1][1]
    assert all(float(r[2]) >= 0 for r in rows)

    header, srows = read_csv(out / "singles_signal.csv")
    assert header == ["x_um", "rate"]
    assert len(srows) == n

    header, rrows = read_csv(out / "result.csv")
    assert header == ["rho", "sigma_rho", "n_resamples", "seed", "counts_total",
                      "config_hash"]
    rho = float(rrows[0][0])
    assert -1.0 <= rho <= 1.0
    assert "rho =" in capsys.readouterr().out


def test_simulate_bootstrap_deterministic(tmp_path, fast_config):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert main(["simulate", "--config", fast_config, "--bootstrap", "200",
                     "--seed", "7", "--output-dir", str(out)]) == 0
    _, r1 = read_csv(out1 / "result.csv")
    _, r2 = read_csv(out2 / "result.csv")
    assert r1[0][1] == r2[0][1]
    assert r1[0][1] != ""


def test_sweep_csv_schema_and_trend(tmp_path, fast_config):
    out = tmp_path / "out"
    assert main(["sweep", "--config", fast_config, "--param", "crystal_Lz",
                 "--values", "5,10", "--output-dir", str(out)]) == 0
    header, rows = read_csv(out / "sweep.csv")
    assert header == ["param", "value", "rho", "sigma_rho", "seconds"]
    assert [r[0] for r in rows] == ["crystal_Lz", "crystal_Lz"]
    rhos = [float(r[2]) for r in rows]
    assert rhos[0] > rhos[1]  # shorter crystal correlates better


def test_sweep_empty_values_usage_error(tmp_path, fast_config, capsys):
    code = main(["sweep", "--config", fast_config, "--param", "slit_pitch",
                 "--values", ",", "--output-dir", str(tmp_path / "o")])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bootstrap_command(tmp_path, fast_config, capsys):
    out = tmp_path / "out"
    assert main(["bootstrap", "--config", fast_config, "--resamples", "300",
                 "--seed", "5", "--output-dir", str(out)]) == 0
    _, rows = read_csv(out / "bootstrap.csv")
    assert rows[0][2] == "300"
    sigma = float(rows[0][1])
    assert sigma > 0
    assert "+-" in capsys.readouterr().out


def test_flags_override_config(tmp_path, fast_config):
    out = tmp_path / "out"
    assert main(["simulate", "--config", fast_config, "--pitch-um", "200",
                 "--output-dir", str(out)]) == 0
    meta = json.loads((out / "coincidence_map.csv.meta.json").read_text())
    assert meta["config"]["slits"]["pitch_um"] == 200.0


def test_env_var_config(tmp_path, fast_config, monkeypatch):
    monkeypatch.setenv("SPDCSIM_CONFIG", fast_config)
    out = tmp_path / "out"
    assert main(["simulate", "--output-dir", str(out)]) == 0
    meta = json.loads((out / "coincidence_map.csv.meta.json").read_text())
    assert meta["config"]["detectors"]["step_um"] == 12.0


def test_unknown_config_key_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("[crystal]\nlenght_z_mm = 10\n")
    assert main(["phasematch", "--config", str(bad)]) == 2
    assert "unknown" in capsys.readouterr().err
