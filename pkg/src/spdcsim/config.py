"""Run configuration: defaults, TOML loading, and construction of domain objects.

Config files use human-scale units (nm, um, mm, degrees); the builders
convert to SI. Unknown keys are rejected so typos fail loudly. The
SPDCSIM_CONFIG environment variable supplies a default config path.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .biphoton import DetectorScan, GEOMETRIES, GEOMETRY_IMAGE
from .imaging import LensSpec
from .phasematch import CrystalSpec, PROCESSES, SINC_CONVENTIONS, SINC_FULL
from .pump import PumpSpec, SlitSpec, SIGMA_AMPLITUDE, SIGMA_INTENSITY

CONFIG_ENV_VAR = "SPDCSIM_CONFIG"

PUMP_SOURCES = ("analytic", "imaged", "measured")


class ConfigError(ValueError):
    """Invalid or unknown configuration content."""


@dataclass(frozen=True)
class CrystalConfig:
    theta_cut_deg: float = 29.3
    length_x_mm: float = 5.0
    length_y_mm: float = 5.0
    length_z_mm: float = 10.0
    process: str = "type1"
    pump_tilt_deg: float = 0.0


@dataclass(frozen=True)
class SlitConfig:
    width_um: float = 30.0
    pitch_um: float = 100.0
    count: int = 3
    height_um: float = 300.0


@dataclass(frozen=True)
class PumpConfig:
    wavelength_nm: float = 405.0
    sigma_um: float = 300.0
    sigma_convention: str = SIGMA_AMPLITUDE
    source: str = "analytic"
    profile_path: str = ""
    profile_calibration_um: float = 0.0  # 0 = use the file's own x column
    grid_step_um: float = 1.0


@dataclass(frozen=True)
class LensConfig:
    focal_length_mm: float = 146.0
    aperture_radius_mm: float = 12.7
    quadrature_nodes: int = 2048


@dataclass(frozen=True)
class DetectorConfig:
    step_um: float = 3.0
    halfwidth_um: float = 0.0  # 0 = derive from the slit geometry
    aperture_halfwidth_um: float = 0.0
    distance_mm: float = 600.0
    subaperture_points: int = 1
    geometry: str = GEOMETRY_IMAGE


@dataclass(frozen=True)
class PhasematchConfig:
    sinc_convention: str = SINC_FULL
    n_z_planes: int = 21


@dataclass(frozen=True)
class StatsConfig:
    centered: bool = True
    n_resamples: int = 100_000
    counts_total: float = 1e6
    seed: int = 0


@dataclass(frozen=True)
class RunConfig:
    crystal: CrystalConfig = field(default_factory=CrystalConfig)
    slits: SlitConfig = field(default_factory=SlitConfig)
    pump: PumpConfig = field(default_factory=PumpConfig)
    lens: LensConfig = field(default_factory=LensConfig)
    detectors: DetectorConfig = field(default_factory=DetectorConfig)
    phasematch: PhasematchConfig = field(default_factory=PhasematchConfig)
    stats: StatsConfig = field(default_factory=StatsConfig)
    output_dir: str = "out"
    threads: int = 0  # 0 = serial

    def __post_init__(self):
        if self.crystal.process not in PROCESSES:
            raise ConfigError(f"crystal.process must be one of {PROCESSES}")
        if self.phasematch.sinc_convention not in SINC_CONVENTIONS:
            raise ConfigError(f"phasematch.sinc_convention must be one of {SINC_CONVENTIONS}")
        if self.detectors.geometry not in GEOMETRIES:
            raise ConfigError(f"detectors.geometry must be one of {GEOMETRIES}")
        if self.pump.source not in PUMP_SOURCES:
            raise ConfigError(f"pump.source must be one of {PUMP_SOURCES}")
        if self.pump.sigma_convention not in (SIGMA_AMPLITUDE, SIGMA_INTENSITY):
            raise ConfigError("pump.sigma_convention must be 'amplitude' or 'intensity'")

    # ---- domain-object builders ------------------------------------

    def crystal_spec(self) -> CrystalSpec:
        c = self.crystal
        return CrystalSpec(
            theta_cut=np.deg2rad(c.theta_cut_deg),
            length_x=c.length_x_mm * 1e-3,
            length_y=c.length_y_mm * 1e-3,
            length_z=c.length_z_mm * 1e-3,
            process=c.process,
            pump_tilt=np.deg2rad(c.pump_tilt_deg),
        )

    def slit_spec(self) -> SlitSpec:
        s = self.slits
        return SlitSpec(width=s.width_um * 1e-6, pitch=s.pitch_um * 1e-6,
                        count=s.count, height=s.height_um * 1e-6)

    def pump_spec(self) -> PumpSpec:
        p = self.pump
        return PumpSpec(
            wavelength=p.wavelength_nm * 1e-9,
            sigma=p.sigma_um * 1e-6,
            slits=self.slit_spec(),
            source=p.source,
            sigma_convention=p.sigma_convention,
        )

    def lens_spec(self) -> LensSpec:
        l = self.lens
        return LensSpec(
            focal_length=l.focal_length_mm * 1e-3,
            aperture_radius=l.aperture_radius_mm * 1e-3,
            wavelength=self.pump.wavelength_nm * 1e-9,
        )

    def scan_halfwidth(self) -> float:
        d = self.detectors
        if d.halfwidth_um > 0:
            return d.halfwidth_um * 1e-6
        s = self.slit_spec()
        return (s.count - 1) / 2.0 * s.pitch + s.width / 2.0 + 50e-6

    def detector_scan(self) -> DetectorScan:
        d = self.detectors
        return DetectorScan.symmetric(
            self.scan_halfwidth(),
            step=d.step_um * 1e-6,
            aperture_halfwidth=d.aperture_halfwidth_um * 1e-6,
            distance=d.distance_mm * 1e-3,
            subaperture_points=d.subaperture_points,
            geometry=d.geometry,
        )

    # ---- serialization ----------------------------------------------

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


_SECTIONS = {
    "crystal": CrystalConfig,
    "slits": SlitConfig,
    "pump": PumpConfig,
    "lens": LensConfig,
    "detectors": DetectorConfig,
    "phasematch": PhasematchConfig,
    "stats": StatsConfig,
}
_TOP_LEVEL_SCALARS = ("output_dir", "threads")


def _build_section(cls, data: dict, section: str):
    valid = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - valid
    if unknown:
        raise ConfigError(f"unknown key(s) in [{section}]: {sorted(unknown)}")
    return cls(**data)


def config_from_dict(data: dict) -> RunConfig:
    """Build a RunConfig from a nested dict, rejecting unknown keys."""
    unknown = set(data) - set(_SECTIONS) - set(_TOP_LEVEL_SCALARS)
    if unknown:
        raise ConfigError(f"unknown top-level config key(s): {sorted(unknown)}")
    kwargs = {}
    for name, cls in _SECTIONS.items():
        section = data.get(name, {})
        if not isinstance(section, dict):
            raise ConfigError(f"[{name}] must be a table")
        kwargs[name] = _build_section(cls, section, name)
    for name in _TOP_LEVEL_SCALARS:
        if name in data:
            kwargs[name] = data[name]
    return RunConfig(**kwargs)


def load_config(path: str | None = None) -> RunConfig:
    """Load a TOML config file; fall back to SPDCSIM_CONFIG, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return RunConfig()
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    try:
        return config_from_dict(data)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
