"""Sweep harness tests: row/direct-run equality, ordering, error capture."""

import numpy as np
import pytest

from spdcsim.config import ConfigError
from spdcsim.pipeline import simulate
from spdcsim.sweeps import SweepSpec, patch_config, run_sweep

from conftest import config_with


def quick_base(convention="half"):
    # a coarse, fast configuration for harness-level tests
    return config_with(
        convention,
        detectors__step_um=12.0,
        detectors__halfwidth_um=130.0,
        pump__grid_step_um=4.0,
        phasematch__n_z_planes=5,
    )


def test_sweep_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec(param="voltage", values=(1.0,))
    with pytest.raises(ConfigError):
        SweepSpec(param="slit_pitch", values=())


def test_patch_config_units():
    base = quick_base()
    patched = patch_config(base, "slit_pitch", 200e-6)
    assert patched.slits.pitch_um == pytest.approx(200.0)
    patched = patch_config(base, "crystal_Lz", 5e-3)
    assert patched.crystal.length_z_mm == pytest.approx(5.0)
    patched = patch_config(base, "process", "type2")
    assert patched.crystal.process == "type2"


def test_single_value_sweep_equals_direct_run():
    base = quick_base()
    sweep = run_sweep(SweepSpec(param="crystal_Lz", values=(8e-3,), base=base))
    _, direct = simulate(patch_config(base, "crystal_Lz", 8e-3))
    assert sweep.rows[0].rho == direct.rho  # bit-for-bit
    assert sweep.rows[0].error is None
    assert sweep.rows[0].seconds > 0


def test_sweep_rows_in_input_order():
    base = quick_base()
    values = (200e-6, 50e-6, 100e-6)
    result = run_sweep(SweepSpec(param="slit_pitch", values=values, base=base))
    assert tuple(row.value for row in result.rows) == values


def test_sweep_captures_per_value_failures():
    base = quick_base()
    result = run_sweep(SweepSpec(param="slit_pitch", values=(100e-6, -5e-6), base=base))
    assert result.rows[0].error is None
    assert result.rows[1].error is not None
    assert result.rows[1].rho is None


def test_sigma_sweep_is_insensitive_at_wide_beam():
    # the Gaussian width barely matters once it dwarfs the slit pattern
    base = quick_base()
    result = run_sweep(SweepSpec(param="sigma", values=(250e-6, 300e-6, 400e-6),
                                 base=base))
    rhos = [row.rho for row in result.rows]
    assert max(rhos) - min(rhos) < 0.01


def test_process_sweep_runs_both_types():
    base = quick_base("full")
    result = run_sweep(SweepSpec(param="process", values=("type1", "type2"),
                                 base=base))
    assert all(row.error is None for row in result.rows)
    assert all(-1.0 <= row.rho <= 1.0 for row in result.rows)
