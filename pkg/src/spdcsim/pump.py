"""Pump amplitude profiles at the crystal: analytic triple-box x Gaussian
or an externally measured intensity profile."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np


class ResolutionError(ValueError):
    """Grid too coarse for the features it must resolve."""


class ProfileFileError(ValueError):
    """Malformed or inconsistent measured-profile file."""


SIGMA_AMPLITUDE = "amplitude"
SIGMA_INTENSITY = "intensity"


@dataclass(frozen=True)
class SlitSpec:
    """Multi-slit aperture geometry (center-to-center pitch)."""

    width: float = 30e-6
    pitch: float = 100e-6
    count: int = 3
    height: float = 300e-6  # recorded, unused in the 2D reduction

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("slit width must be positive")
        if self.count < 1:
            raise ValueError("slit count must be >= 1")
        if self.count > 1 and self.pitch <= self.width:
            raise ValueError("pitch must exceed slit width for multiple slits")

    def centers(self) -> np.ndarray:
        j = np.arange(self.count) - (self.count - 1) / 2.0
        return j * self.pitch


@dataclass(frozen=True)
class PumpSpec:
    """Pump beam parameters at the slit/crystal plane."""

    wavelength: float = 405e-9
    sigma: float = 300e-6
    slits: SlitSpec = field(default_factory=SlitSpec)
    source: str = "analytic"  # analytic | imaged | measured
    sigma_convention: str = SIGMA_AMPLITUDE

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("Gaussian width must be positive")
        if self.sigma_convention not in (SIGMA_AMPLITUDE, SIGMA_INTENSITY):
            raise ValueError(f"unknown sigma convention {self.sigma_convention!r}")


@dataclass(frozen=True)
class SampledField:
    """Complex amplitude sampled on a uniform spatial grid.

    1D fields have values of shape (len(x),); 2D fields carry a z axis and
    values of shape (len(x), len(z)).
    """

    x: np.ndarray
    values: np.ndarray
    z: np.ndarray | None = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if x.ndim != 1 or x.size < 2:
            raise ValueError("x grid must be 1D with at least 2 points")
        dx = np.diff(x)
        if np.any(dx <= 0) or not np.allclose(dx, dx[0], rtol=1e-9, atol=0.0):
            raise ValueError("x grid must be strictly increasing and uniform")
        if self.z is None:
            if self.values.shape != x.shape:
                raise ValueError("values shape must match the x grid")
        else:
            z = np.asarray(self.z, dtype=float)
            object.__setattr__(self, "z", z)
            if self.values.shape != (x.size, z.size):
                raise ValueError("values shape must be (len(x), len(z))")

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def gaussian_envelope(x, sigma: float, convention: str = SIGMA_AMPLITUDE):
    """Amplitude envelope exp(-x^2 / (2 sigma^2)), or its intensity-width variant."""
    x = np.asarray(x, dtype=float)
    if convention == SIGMA_AMPLITUDE:
        return np.exp(-(x**2) / (2.0 * sigma**2))
    return np.exp(-(x**2) / (4.0 * sigma**2))


def analytic_profile(spec: PumpSpec, x) -> SampledField:
    """Box-function slits weighted by a Gaussian, peak amplitude 1 at x = 0.

    Each grid sample carries the fractional overlap of its dx-wide cell with
    the slit boxes (applied to intensity, i.e. sqrt on the amplitude), so a
    box edge landing exactly on a grid point contributes half a cell from
    either side. This keeps the sampled profile symmetric in x and avoids
    double counting. The grid must resolve each slit with >= 2 samples and
    span at least +-(count * pitch).
    """
    x = np.asarray(x, dtype=float)
    slits = spec.slits
    dx = x[1] - x[0]
    if dx > slits.width / 2.0:
        raise ResolutionError(
            f"grid spacing {dx*1e6:.2f} um gives fewer than 2 samples per "
            f"{slits.width*1e6:.1f} um slit"
        )
    span = slits.count * slits.pitch
    if x[0] > -span or x[-1] < span:
        raise ResolutionError(
            f"grid [{x[0]*1e6:.0f}, {x[-1]*1e6:.0f}] um must span at least "
            f"+-{span*1e6:.0f} um"
        )
    coverage = np.zeros_like(x)
    for c in slits.centers():
        lo = np.maximum(x - dx / 2.0, c - slits.width / 2.0)
        hi = np.minimum(x + dx / 2.0, c + slits.width / 2.0)
        coverage += np.clip((hi - lo) / dx, 0.0, 1.0)
    coverage = np.minimum(coverage, 1.0)
    amp = np.sqrt(coverage) * gaussian_envelope(x, spec.sigma, spec.sigma_convention)
    return SampledField(x=x, values=amp.astype(complex))


def load_measured_profile(path, calibration: float | None = None) -> SampledField:
    """Read a measured intensity profile (CSV: x_um,intensity).

    Amplitude is the square root of intensity, normalized to peak 1. If
    calibration is given it overrides the sample spacing: the grid becomes
    index * calibration, centered on the intensity-weighted middle sample.
    """
    if calibration is not None and calibration <= 0:
        raise ProfileFileError("calibration must be positive")
    xs, intens = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["x_um", "intensity"]:
            raise ProfileFileError(f"{path}: expected header 'x_um,intensity'")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                xs.append(float(row[0]))
                intens.append(float(row[1]))
            except (ValueError, IndexError) as exc:
                raise ProfileFileError(f"{path}:{lineno}: malformed row {row!r}") from exc
    if len(xs) < 2:
        raise ProfileFileError(f"{path}: need at least 2 samples")
    x = np.asarray(xs) * 1e-6
    intensity = np.asarray(intens)
    if np.any(intensity < 0):
        raise ProfileFileError(f"{path}: negative intensity value")
    steps = np.diff(x)
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-6, atol=0.0):
        raise ProfileFileError(f"{path}: x samples must be uniform and increasing")
    if calibration is not None:
        x = (np.arange(x.size) - (x.size - 1) / 2.0) * calibration
    amp = np.sqrt(intensity)
    peak = amp.max()
    if peak == 0:
        raise ProfileFileError(f"{path}: profile is identically zero")
    return SampledField(x=x, values=(amp / peak).astype(complex))
