"""Configuration loading, defaults, overrides and hashing."""

import dataclasses

import numpy as np
import pytest

from spdcsim.config import (
    CONFIG_ENV_VAR,
    ConfigError,
    RunConfig,
    config_from_dict,
    load_config,
)


def test_defaults_match_experiment_values():
    cfg = RunConfig()
    assert cfg.pump.wavelength_nm == 405.0
    assert cfg.pump.sigma_um == 300.0
    assert cfg.slits.width_um == 30.0
    assert cfg.slits.pitch_um == 100.0
    assert cfg.slits.count == 3
    assert cfg.crystal.theta_cut_deg == 29.3
    assert cfg.crystal.length_z_mm == 10.0
    assert cfg.crystal.length_x_mm == 5.0
    assert cfg.crystal.process == "type1"
    assert cfg.detectors.step_um == 3.0
    assert cfg.detectors.aperture_halfwidth_um == 0.0
    assert cfg.lens.focal_length_mm == 146.0
    assert cfg.lens.aperture_radius_mm == 12.7
    assert cfg.phasematch.sinc_convention == "full"
    assert cfg.stats.n_resamples == 100_000


def test_domain_object_builders():
    cfg = RunConfig()
    crystal = cfg.crystal_spec()
    assert crystal.theta_cut == pytest.approx(np.deg2rad(29.3))
    assert crystal.length_z == pytest.approx(10e-3)
    pump = cfg.pump_spec()
    assert pump.wavelength == pytest.approx(405e-9)
    assert pump.slits.pitch == pytest.approx(100e-6)
    scan = cfg.detector_scan()
    assert scan.x_signal[1] - scan.x_signal[0] == pytest.approx(3e-6)
    # default window covers the outer slits with margin
    assert scan.x_signal[-1] >= 115e-6


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError):
        config_from_dict({"crystall": {}})
    with pytest.raises(ConfigError):
        config_from_dict({"crystal": {"length_q_mm": 1.0}})


def test_invalid_enums_rejected():
    with pytest.raises(ConfigError):
        config_from_dict({"crystal": {"process": "type9"}})
    with pytest.raises(ConfigError):
        config_from_dict({"phasematch": {"sinc_convention": "double"}})
    with pytest.raises(ConfigError):
        config_from_dict({"pump": {"source": "guess"}})


def test_toml_roundtrip(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(
        "output_dir = 'results'\n"
        "[slits]\n"
        "pitch_um = 200.0\n"
        "[crystal]\n"
        "length_z_mm = 5.0\n"
    )
    cfg = load_config(str(path))
    assert cfg.slits.pitch_um == 200.0
    assert cfg.crystal.length_z_mm == 5.0
    assert cfg.output_dir == "results"
    # untouched sections keep their defaults
    assert cfg.pump.sigma_um == 300.0


def test_env_var_fallback(tmp_path, monkeypatch):
    path = tmp_path / "env.toml"
    path.write_text("[detectors]\nstep_um = 6.0\n")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert load_config().detectors.step_um == 6.0
    monkeypatch.delenv(CONFIG_ENV_VAR)
    assert load_config().detectors.step_um == 3.0


def test_hash_changes_with_content():
    base = RunConfig()
    other = dataclasses.replace(
        base, slits=dataclasses.replace(base.slits, pitch_um=50.0)
    )
    assert base.hash() == RunConfig().hash()
    assert base.hash() != other.hash()


def test_scan_halfwidth_override():
    cfg = config_from_dict({"detectors": {"halfwidth_um": 250.0}})
    scan = cfg.detector_scan()
    assert scan.x_signal[-1] == pytest.approx(249e-6)
