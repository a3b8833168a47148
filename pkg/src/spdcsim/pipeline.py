"""End-to-end runs: config -> pump field -> coincidence map -> correlation."""

from __future__ import annotations

import numpy as np

from .biphoton import CoincidenceMap, coincidence_map
from .config import RunConfig
from .imaging import transfer_field
from .pump import SampledField, analytic_profile, load_measured_profile
from .stats import CorrelationResult, bootstrap_sigma, pearson


def _symmetric_grid(halfwidth: float, step: float) -> np.ndarray:
    n = int(np.ceil(halfwidth / step - 1e-9))
    return np.arange(-n, n + 1) * step


def build_pump(config: RunConfig) -> SampledField:
    """Pump amplitude on a grid covering both the slits and the crystal width.

    source "analytic" is the ideal box-times-Gaussian profile; "imaged"
    pushes that profile through the configured 2f-2f lens first; "measured"
    loads a profile file and zero-pads it to the crystal width.
    """
    crystal = config.crystal_spec()
    spec = config.pump_spec()
    step = config.pump.grid_step_um * 1e-6
    half = max(crystal.length_x / 2.0, spec.slits.count * spec.slits.pitch)
    grid = _symmetric_grid(half, step)
    if config.pump.source == "analytic":
        return analytic_profile(spec, grid)
    if config.pump.source == "imaged":
        at_slits = analytic_profile(spec, grid)
        imaged = transfer_field(at_slits, config.lens_spec(), grid,
                                nodes=config.lens.quadrature_nodes)
        peak = np.abs(imaged.values).max()
        return SampledField(x=grid, values=imaged.values / peak)
    calibration = config.pump.profile_calibration_um * 1e-6 or None
    measured = load_measured_profile(config.pump.profile_path, calibration)
    if measured.x[0] <= -half and measured.x[-1] >= half:
        return measured
    # zero-pad on the file's own grid step out to the crystal width
    dx = measured.dx
    n_lo = int(np.ceil((measured.x[0] + half) / dx))
    n_hi = int(np.ceil((half - measured.x[-1]) / dx))
    x = np.concatenate([
        measured.x[0] - dx * np.arange(n_lo, 0, -1),
        measured.x,
        measured.x[-1] + dx * np.arange(1, n_hi + 1),
    ])
    values = np.concatenate([
        np.zeros(n_lo, dtype=complex), measured.values, np.zeros(n_hi, dtype=complex)
    ])
    return SampledField(x=x, values=values)


def simulate(
    config: RunConfig,
    pump_field: SampledField | None = None,
    bootstrap: bool = False,
) -> tuple[CoincidenceMap, CorrelationResult]:
    """Run the full pipeline for one configuration."""
    if pump_field is None:
        pump_field = build_pump(config)
    crystal = config.crystal_spec()
    scan = config.detector_scan()
    metadata = {"config": config.to_dict(), "config_hash": config.hash()}
    threads = config.threads if config.threads > 1 else None
    coin = coincidence_map(
        pump_field, crystal, scan,
        lambda_pump=config.pump.wavelength_nm * 1e-9,
        convention=config.phasematch.sinc_convention,
        n_z_planes=config.phasematch.n_z_planes,
        threads=threads,
        metadata=metadata,
    )
    st = config.stats
    if bootstrap:
        result = bootstrap_sigma(
            coin, n_resamples=st.n_resamples, seed=st.seed,
            counts_total=st.counts_total, centered=st.centered,
        )
    else:
        result = CorrelationResult(rho=pearson(coin, centered=st.centered), seed=st.seed)
    return coin, result
