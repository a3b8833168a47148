"""Joint signal-idler coincidence maps from a structured pump.

Each crystal point (x_c, z_c) is treated as an independent down-conversion
source. Its contribution to a detector-position pair (x1, x2) is the pump
intensity at that point times the sinc phase-matching weight evaluated for
the straight rays from the point to the two detectors; the map is the
incoherent sum of these contributions over a uniform crystal grid.

Two detector geometries are provided. In "image" geometry the detector
plane is optically conjugate to the crystal center, so a pair born at depth
z_c reaches the detectors defocused by |z_c| and the ray endpoints sit at
that blur distance. In "far_field" geometry the rays run all the way to a
physical plane at distance D from the crystal center.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dispersion import (
    BBO,
    SellmeierSet,
    n_e_angle,
    n_extraordinary_principal,
    n_ordinary,
)
from .phasematch import (
    SINC_CONVENTIONS,
    SINC_FULL,
    TYPE1,
    CrystalSpec,
    delta_k,
    find_collinear_angle,
    sinc_weight,
)

GEOMETRY_IMAGE = "image"
GEOMETRY_FAR_FIELD = "far_field"
GEOMETRIES = (GEOMETRY_IMAGE, GEOMETRY_FAR_FIELD)

#: floor on the ray distance so the crystal-center plane (z_c = 0) stays finite
MIN_BLUR_DISTANCE = 1e-9

#: crystal points per vectorized block (bounds peak memory of the 3D weight array)
CRYSTAL_BLOCK = 512


class PumpCoverageError(ValueError):
    """Pump field grid does not cover the requested crystal region."""


class ScanError(ValueError):
    """Detector scan axes empty or malformed."""


def _check_axis(x, name: str) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size == 0:
        raise ScanError(f"{name} scan axis is empty")
    if x.size > 1:
        dx = np.diff(x)
        if np.any(dx <= 0) or not np.allclose(dx, dx[0], rtol=1e-9, atol=0.0):
            raise ScanError(f"{name} scan axis must be strictly increasing and uniform")
    return x


@dataclass(frozen=True)
class DetectorScan:
    """Detector scan positions and aperture model for both arms.

    distance is the detector-plane distance from the crystal center, used
    only in far_field geometry; aperture_halfwidth = 0 means point
    detectors, otherwise each detector integrates over
    [x - a, x + a] with `subaperture_points` midpoint samples.
    """

    x_signal: np.ndarray
    x_idler: np.ndarray
    aperture_halfwidth: float = 0.0
    distance: float = 0.6
    subaperture_points: int = 1
    geometry: str = GEOMETRY_IMAGE

    def __post_init__(self):
        object.__setattr__(self, "x_signal", _check_axis(self.x_signal, "signal"))
        object.__setattr__(self, "x_idler", _check_axis(self.x_idler, "idler"))
        if self.aperture_halfwidth < 0:
            raise ScanError("aperture half-width must be >= 0")
        if self.distance <= 0:
            raise ScanError("detector distance must be positive")
        if self.subaperture_points < 1:
            raise ScanError("subaperture_points must be >= 1")
        if self.geometry not in GEOMETRIES:
            raise ScanError(f"unknown geometry {self.geometry!r}, expected one of {GEOMETRIES}")

    @classmethod
    def symmetric(cls, halfwidth: float, step: float = 3e-6, **kwargs) -> "DetectorScan":
        """Identical signal/idler axes covering [-halfwidth, +halfwidth]."""
        n = int(np.floor(halfwidth / step + 1e-9))
        x = np.arange(-n, n + 1) * step
        return cls(x_signal=x, x_idler=x, **kwargs)

    def subaperture_offsets(self) -> np.ndarray:
        a, m = self.aperture_halfwidth, self.subaperture_points
        if a == 0.0 or m == 1:
            return np.array([0.0])
        return (np.arange(m) + 0.5) / m * (2.0 * a) - a


@dataclass(frozen=True)
class CoincidenceMap:
    """Joint detection-rate matrix over (signal position, idler position)."""

    x_signal: np.ndarray
    x_idler: np.ndarray
    rates: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "x_signal", np.asarray(self.x_signal, dtype=float))
        object.__setattr__(self, "x_idler", np.asarray(self.x_idler, dtype=float))
        object.__setattr__(self, "rates", np.asarray(self.rates, dtype=float))
        if self.rates.shape != (self.x_signal.size, self.x_idler.size):
            raise ValueError("rate matrix shape must be (len(x_signal), len(x_idler))")
        if np.any(self.rates < 0) or not np.all(np.isfinite(self.rates)):
            raise ValueError("rates must be finite and non-negative")


def crystal_z_planes(length_z: float, n_planes: int = 21) -> np.ndarray:
    """Midpoints of n_planes equal slabs spanning [-L_z/2, +L_z/2]."""
    if n_planes < 1:
        raise ValueError("need at least one z plane")
    edges = np.linspace(-length_z / 2.0, length_z / 2.0, n_planes + 1)
    return 0.5 * (edges[:-1] + edges[1:])


def blur_distance(z_c, scan: DetectorScan):
    """Effective ray length along z from a crystal plane to the detectors."""
    z_c = np.asarray(z_c, dtype=float)
    if scan.geometry == GEOMETRY_IMAGE:
        return np.maximum(np.abs(z_c), MIN_BLUR_DISTANCE)
    return scan.distance - z_c


def _pump_intensity_at(pump_field, x_c: float, z_c: float) -> float:
    x = pump_field.x
    if not (x[0] <= x_c <= x[-1]):
        raise PumpCoverageError(
            f"crystal point x = {x_c*1e6:.1f} um outside pump grid "
            f"[{x[0]*1e6:.1f}, {x[-1]*1e6:.1f}] um"
        )
    intensity = pump_field.intensity()
    if pump_field.z is None:
        return float(np.interp(x_c, x, intensity))
    z = pump_field.z
    if not (z[0] <= z_c <= z[-1]):
        raise PumpCoverageError(
            f"crystal point z = {z_c*1e3:.2f} mm outside pump z grid"
        )
    j = min(np.searchsorted(z, z_c, side="right"), z.size - 1)
    i = max(j - 1, 0)
    t = 0.0 if i == j else (z_c - z[i]) / (z[j] - z[i])
    column = intensity[:, i] * (1.0 - t) + intensity[:, j] * t
    return float(np.interp(x_c, x, column))


def point_weight(
    crystal_point,
    x_s: float,
    x_i: float,
    pump_field,
    crystal: CrystalSpec,
    scan: DetectorScan | None = None,
    alpha: float | None = None,
    lambda_pump: float = 405e-9,
    convention: str = SINC_FULL,
    coeffs: SellmeierSet = BBO,
) -> float:
    """|A_p(x_c, z_c)|^2 times the sinc weight for one crystal/detector triple.

    Signal/idler directions are unit vectors from (x_c, z_c) to the detector
    points at the geometry's blur distance.
    """
    x_c, z_c = crystal_point
    if abs(x_c) > crystal.length_x / 2.0 or abs(z_c) > crystal.length_z / 2.0:
        raise ValueError("crystal point outside the crystal volume")
    if scan is None:
        scan = DetectorScan(x_signal=[x_s], x_idler=[x_i])
    if alpha is None:
        alpha = find_collinear_angle(lambda_pump, crystal.process, coeffs)
    intensity = _pump_intensity_at(pump_field, x_c, z_c)
    if intensity == 0.0:
        return 0.0
    dz = float(blur_distance(z_c, scan))
    r_s = np.hypot(x_s - x_c, dz)
    r_i = np.hypot(x_i - x_c, dz)
    signal_dir = ((x_s - x_c) / r_s, dz / r_s)
    idler_dir = ((x_i - x_c) / r_i, dz / r_i)
    dk = delta_k(crystal, alpha, signal_dir, idler_dir, lambda_pump, coeffs)
    return intensity * sinc_weight(dk, crystal, convention)


def _pump_intensity_columns(pump_field, crystal: CrystalSpec, z_planes):
    """Crystal-grid x samples and the pump intensity at each z plane.

    Keeps only grid points inside the transverse crystal extent with nonzero
    intensity on at least one plane.
    """
    x = pump_field.x
    half = crystal.length_x / 2.0
    tol = pump_field.dx / 2.0
    if x[0] > -half + tol or x[-1] < half - tol:
        raise PumpCoverageError(
            f"pump grid [{x[0]*1e3:.2f}, {x[-1]*1e3:.2f}] mm must cover "
            f"+-{half*1e3:.2f} mm"
        )
    inside = np.abs(x) <= half
    intensity = pump_field.intensity()
    if pump_field.z is None:
        planes = np.repeat(intensity[:, None], len(z_planes), axis=1)
    else:
        z = pump_field.z
        if z_planes[0] < z[0] - tol or z_planes[-1] > z[-1] + tol:
            raise PumpCoverageError("pump z grid must cover the crystal z planes")
        planes = np.empty((x.size, len(z_planes)))
        for k, zc in enumerate(z_planes):
            j = min(np.searchsorted(z, zc, side="right"), z.size - 1)
            i = max(j - 1, 0)
            t = 0.0 if i == j else np.clip((zc - z[i]) / (z[j] - z[i]), 0.0, 1.0)
            planes[:, k] = intensity[:, i] * (1.0 - t) + intensity[:, j] * t
    keep = inside & (planes.max(axis=1) > 0.0)
    return x[keep], planes[keep]


def _plane_map(x1, x2, x_c, a2, dz, crystal, alpha, lambda_pump, convention, coeffs):
    """Map contribution of one crystal z plane (vectorized over the x grid)."""
    lam = 2.0 * lambda_pump
    n_o = n_ordinary(lam, coeffs)
    k_down = 2.0 * np.pi * n_o / lam
    k_p = 2.0 * np.pi * n_e_angle(lambda_pump, alpha, coeffs) / lambda_pump
    if crystal.process != TYPE1:
        n_e = n_extraordinary_principal(lam, coeffs)
    scale = 1.0 if convention == SINC_FULL else 0.5
    sx_len = crystal.length_x * scale
    sz_len = crystal.length_z * scale
    out = np.zeros((x1.size, x2.size))
    for lo in range(0, x_c.size, CRYSTAL_BLOCK):
        xc = x_c[lo:lo + CRYSTAL_BLOCK]
        amp2 = a2[lo:lo + CRYSTAL_BLOCK]
        dx1 = x1[:, None] - xc[None, :]
        dx2 = x2[:, None] - xc[None, :]
        r1 = np.hypot(dx1, dz)
        r2 = np.hypot(dx2, dz)
        ks_x = k_down * dx1 / r1
        ks_z = k_down * dz / r1
        if crystal.process == TYPE1:
            ki_mag = k_down
        else:
            theta_i = alpha - np.arctan2(dx2, dz)
            inv2 = np.cos(theta_i) ** 2 / n_o**2 + np.sin(theta_i) ** 2 / n_e**2
            ki_mag = (2.0 * np.pi / lam) / np.sqrt(inv2)
        ki_x = ki_mag * dx2 / r2
        ki_z = ki_mag * dz / r2
        dk_x = -ks_x[:, None, :] - ki_x[None, :, :]
        dk_z = k_p - ks_z[:, None, :] - ki_z[None, :, :]
        w = (
            np.sinc(dk_x * (sx_len / np.pi)) ** 2
            * np.sinc(dk_z * (sz_len / np.pi)) ** 2
        )
        out += np.einsum("ijc,c->ij", w, amp2)
    return out


def coincidence_map(
    pump_field,
    crystal: CrystalSpec,
    scan: DetectorScan,
    alpha: float | None = None,
    lambda_pump: float = 405e-9,
    convention: str = SINC_FULL,
    coeffs: SellmeierSet = BBO,
    n_z_planes: int = 21,
    threads: int | None = None,
    metadata: dict | None = None,
) -> CoincidenceMap:
    """Incoherent coincidence map over the detector scan.

    Sums point_weight over the crystal grid (the pump's x samples inside
    +-L_x/2, n_z_planes slab midpoints in z) and, for finite apertures,
    over midpoint sub-samples of each detector window. Deterministic for
    fixed grids; the per-plane partial maps are reduced in plane order
    regardless of thread count.
    """
    if convention not in SINC_CONVENTIONS:
        raise ValueError(f"unknown sinc convention {convention!r}")
    if alpha is None:
        alpha = find_collinear_angle(lambda_pump, crystal.process, coeffs)
    z_planes = crystal_z_planes(crystal.length_z, n_z_planes)
    x_c, plane_intensity = _pump_intensity_columns(pump_field, crystal, z_planes)
    offsets = scan.subaperture_offsets()
    dz_planes = blur_distance(z_planes, scan)

    def one_plane(k: int) -> np.ndarray:
        partial = np.zeros((scan.x_signal.size, scan.x_idler.size))
        for off_s in offsets:
            for off_i in offsets:
                partial += _plane_map(
                    scan.x_signal + off_s, scan.x_idler + off_i,
                    x_c, plane_intensity[:, k], float(dz_planes[k]),
                    crystal, alpha, lambda_pump, convention, coeffs,
                )
        return partial / offsets.size**2

    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(one_plane, range(len(z_planes))))
    else:
        partials = [one_plane(k) for k in range(len(z_planes))]
    rates = np.zeros((scan.x_signal.size, scan.x_idler.size))
    for partial in partials:
        rates += partial

    meta = dict(metadata or {})
    meta.setdefault("process", crystal.process)
    meta.setdefault("sinc_convention", convention)
    meta.setdefault("geometry", scan.geometry)
    meta.setdefault("alpha_rad", float(alpha))
    meta.setdefault("lambda_pump_m", float(lambda_pump))
    meta.setdefault("n_z_planes", int(n_z_planes))
    return CoincidenceMap(x_signal=scan.x_signal, x_idler=scan.x_idler,
                          rates=rates, metadata=meta)


def singles_profile(coin_map: CoincidenceMap, which: str = "signal") -> np.ndarray:
    """Marginal count profile: sum over the other detector's positions."""
    if which == "signal":
        return coin_map.rates.sum(axis=1)
    if which == "idler":
        return coin_map.rates.sum(axis=0)
    raise ValueError(f"which must be 'signal' or 'idler', got {which!r}")
