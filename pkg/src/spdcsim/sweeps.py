"""One-parameter sweeps of the Pearson coefficient.

Each sweep value patches a copy of the base configuration, rebuilds the
pump grid from scratch and runs the full pipeline, so rows are identical
to independent direct runs.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field

from .config import ConfigError, RunConfig
from .pipeline import simulate

#: sweepable parameter -> (config section, field, config unit per SI unit)
SWEEP_PARAMS = {
    "slit_width": ("slits", "width_um", 1e6),
    "slit_pitch": ("slits", "pitch_um", 1e6),
    "crystal_Lz": ("crystal", "length_z_mm", 1e3),
    "sigma": ("pump", "sigma_um", 1e6),
    "process": ("crystal", "process", None),
}


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter, its values (SI units, or strings for process)."""

    param: str
    values: tuple
    base: RunConfig = field(default_factory=RunConfig)
    bootstrap: bool = False

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ConfigError(
                f"unknown sweep parameter {self.param!r}, "
                f"expected one of {sorted(SWEEP_PARAMS)}"
            )
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 1:
            raise ConfigError("sweep needs at least one value")


@dataclass(frozen=True)
class SweepRow:
    value: object
    rho: float | None
    sigma_rho: float | None
    seconds: float
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    param: str
    rows: tuple


def patch_config(base: RunConfig, param: str, value) -> RunConfig:
    """Return a copy of base with one swept parameter replaced."""
    section, name, scale = SWEEP_PARAMS[param]
    if scale is not None:
        value = float(value) * scale
    sub = dataclasses.replace(getattr(base, section), **{name: value})
    return dataclasses.replace(base, **{section: sub})


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Run the pipeline once per value; failures are recorded per row."""
    rows = []
    for value in spec.values:
        start = time.perf_counter()
        try:
            config = patch_config(spec.base, spec.param, value)
            _, result = simulate(config, bootstrap=spec.bootstrap)
            rows.append(SweepRow(
                value=value, rho=result.rho, sigma_rho=result.sigma_rho,
                seconds=time.perf_counter() - start,
            ))
        except Exception as exc:  # per-value failure: flag and continue
            rows.append(SweepRow(
                value=value, rho=None, sigma_rho=None,
                seconds=time.perf_counter() - start, error=str(exc),
            ))
    return SweepResult(param=spec.param, rows=tuple(rows))
