"""Phase mismatch, collinear phase-matching angles and the sinc intensity weight.

Geometry is reduced to the (x, z) plane: the pump propagates along z and
makes angle alpha with the optic axis, which lies in the x-z plane. Two
processes are supported for a negative uniaxial crystal:

* type1 (e -> oo): extraordinary pump, ordinary signal and idler.
* type2 (e -> oe): extraordinary pump, ordinary signal, extraordinary idler
  whose index is evaluated at the angle between the idler ray and the optic
  axis within the pump's principal plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .dispersion import BBO, SellmeierSet, n_e_angle, n_ordinary

TYPE1 = "type1"
TYPE2 = "type2"
PROCESSES = (TYPE1, TYPE2)

SINC_FULL = "full"
SINC_HALF = "half"
SINC_CONVENTIONS = (SINC_FULL, SINC_HALF)

#: residual |dk_z| accepted by the collinear solver, rad/m
COLLINEAR_TOL = 10.0


class NoPhaseMatchError(RuntimeError):
    """No sign change of the collinear mismatch inside (0, pi/2)."""


@dataclass(frozen=True)
class CrystalSpec:
    """Nonlinear crystal geometry and process selection.

    theta_cut is the angle between the optic axis and the crystal-face
    normal; pump_tilt is an extra pump rotation relative to that normal, so
    the pump-to-axis angle is theta_cut + pump_tilt.
    """

    theta_cut: float = np.deg2rad(29.3)
    length_x: float = 5e-3
    length_y: float = 5e-3  # recorded, inert in the 2D reduction
    length_z: float = 10e-3
    process: str = TYPE1
    pump_tilt: float = 0.0

    def __post_init__(self):
        if self.length_x <= 0 or self.length_z <= 0:
            raise ValueError("crystal lengths must be positive")
        if not (0.0 < self.theta_cut < np.pi / 2):
            raise ValueError("theta_cut must lie in (0, pi/2)")
        if self.process not in PROCESSES:
            raise ValueError(f"unknown process {self.process!r}, expected one of {PROCESSES}")

    @property
    def pump_angle(self) -> float:
        return self.theta_cut + self.pump_tilt


@dataclass(frozen=True)
class PhaseMismatch:
    """Pump minus daughter wave-vector components, rad/m."""

    dk_x: float
    dk_z: float
    dk_y: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.dk_x) and np.isfinite(self.dk_z)):
            raise ValueError("phase mismatch components must be finite")


def wave_vector(lambda_m: float, n: float, direction) -> np.ndarray:
    """Wave vector of magnitude 2*pi*n/lambda along a unit (x, z) direction."""
    if lambda_m <= 0:
        raise ValueError("wavelength must be positive")
    direction = np.asarray(direction, dtype=float)
    norm = np.hypot(direction[0], direction[1])
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, got |d| = {norm!r}")
    return (2.0 * np.pi * n / lambda_m) * direction


def unnormalized_sinc(x):
    """sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x) / np.pi)


def delta_k(
    crystal: CrystalSpec,
    alpha: float,
    signal_dir,
    idler_dir,
    lambda_pump: float,
    coeffs: SellmeierSet = BBO,
) -> PhaseMismatch:
    """Phase mismatch k_p - k_s - k_i for degenerate down-conversion.

    The pump travels along +z with index n_e(alpha); signal and idler
    directions are unit (x, z) vectors. Daughters are at 2 * lambda_pump.
    """
    lambda_down = 2.0 * lambda_pump
    k_p = wave_vector(lambda_pump, n_e_angle(lambda_pump, alpha, coeffs), (0.0, 1.0))
    k_s = wave_vector(lambda_down, n_ordinary(lambda_down, coeffs), signal_dir)
    if crystal.process == TYPE1:
        n_i = n_ordinary(lambda_down, coeffs)
    else:
        idler_angle = np.arctan2(idler_dir[0], idler_dir[1])
        n_i = n_e_angle(lambda_down, abs(alpha - idler_angle), coeffs)
    k_i = wave_vector(lambda_down, n_i, idler_dir)
    dk = k_p - k_s - k_i
    return PhaseMismatch(dk_x=float(dk[0]), dk_z=float(dk[1]))


def collinear_mismatch(alpha: float, lambda_pump: float, process: str,
                       coeffs: SellmeierSet = BBO) -> float:
    """dk_z for signal and idler collinear with the pump, rad/m."""
    lambda_down = 2.0 * lambda_pump
    k_p = 2.0 * np.pi * n_e_angle(lambda_pump, alpha, coeffs) / lambda_pump
    k_s = 2.0 * np.pi * n_ordinary(lambda_down, coeffs) / lambda_down
    if process == TYPE1:
        k_i = k_s
    else:
        k_i = 2.0 * np.pi * n_e_angle(lambda_down, alpha, coeffs) / lambda_down
    return k_p - k_s - k_i


def find_collinear_angle(lambda_pump: float, process: str = TYPE1,
                         coeffs: SellmeierSet = BBO, n_bracket: int = 256) -> float:
    """Pump-to-axis angle where the collinear degenerate mismatch vanishes.

    Brackets a sign change of dk_z(alpha) on a uniform grid in (0, pi/2)
    and refines it by bisection. Deterministic; the root satisfies
    |dk_z| < COLLINEAR_TOL rad/m.
    """
    if process not in PROCESSES:
        raise ValueError(f"unknown process {process!r}")
    grid = np.linspace(1e-4, np.pi / 2 - 1e-4, n_bracket)
    vals = np.array([collinear_mismatch(a, lambda_pump, process, coeffs) for a in grid])
    sign_flip = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    if sign_flip.size == 0:
        raise NoPhaseMatchError(
            f"no collinear phase-matching angle for {process} at {lambda_pump*1e9:.1f} nm"
        )
    lo, hi = grid[sign_flip[0]], grid[sign_flip[0] + 1]
    root = bisect(collinear_mismatch, lo, hi, args=(lambda_pump, process, coeffs),
                  xtol=1e-12)
    residual = collinear_mismatch(root, lambda_pump, process, coeffs)
    if abs(residual) >= COLLINEAR_TOL:
        raise NoPhaseMatchError(f"collinear solve residual {residual:.3g} rad/m too large")
    return float(root)


def sinc_weight(dk: PhaseMismatch, crystal: CrystalSpec, convention: str = SINC_FULL) -> float:
    """|sinc(dk_x * S_x) * sinc(dk_z * S_z)|^2 with S = L ("full") or L/2 ("half")."""
    if convention not in SINC_CONVENTIONS:
        raise ValueError(f"unknown sinc convention {convention!r}")
    scale = 1.0 if convention == SINC_FULL else 0.5
    wx = unnormalized_sinc(dk.dk_x * crystal.length_x * scale)
    wz = unnormalized_sinc(dk.dk_z * crystal.length_z * scale)
    return float(np.abs(wx * wz) ** 2)
