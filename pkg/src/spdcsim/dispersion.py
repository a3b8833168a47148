"""Refractive indices of beta-barium borate (BBO).

Sellmeier form n^2(lambda) = a + b / (lambda^2 - c) - d * lambda^2 with
lambda in micrometers. All public functions take wavelengths in meters.
BBO is negative uniaxial: n_o > n_e at every wavelength in the fit range.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

DEFAULT_COEFFICIENT_FILE = "bbo_kato1986.json"


class WavelengthRangeError(ValueError):
    """Wavelength outside the validity range of the Sellmeier fit."""


class AngleDomainError(ValueError):
    """Propagation angle outside [0, pi/2]."""


@dataclass(frozen=True)
class SellmeierSet:
    """One pair of Sellmeier coefficient rows (ordinary + principal extraordinary)."""

    a_o: float
    b_o: float
    c_o: float
    d_o: float
    a_e: float
    b_e: float
    c_e: float
    d_e: float
    lambda_min_um: float
    lambda_max_um: float
    source: str
    material: str = "BBO"

    @classmethod
    def from_rows(cls, rows: list[dict]) -> "SellmeierSet":
        by_row = {r["row"]: r for r in rows}
        if set(by_row) != {"o", "e"}:
            raise ValueError("coefficient file must contain exactly one 'o' and one 'e' row")
        o, e = by_row["o"], by_row["e"]
        return cls(
            a_o=o["a"], b_o=o["b"], c_o=o["c"], d_o=o["d"],
            a_e=e["a"], b_e=e["b"], c_e=e["c"], d_e=e["d"],
            lambda_min_um=min(o["lambda_min_um"], e["lambda_min_um"]),
            lambda_max_um=max(o["lambda_max_um"], e["lambda_max_um"]),
            source=o["source"],
            material=o["material"],
        )

    @classmethod
    def from_file(cls, path) -> "SellmeierSet":
        with open(path) as fh:
            return cls.from_rows(json.load(fh))


def _load_default() -> SellmeierSet:
    text = resources.files("spdcsim.data").joinpath(DEFAULT_COEFFICIENT_FILE).read_text()
    return SellmeierSet.from_rows(json.loads(text))


BBO = _load_default()


def _check_range(lambda_m: float, coeffs: SellmeierSet) -> float:
    um = lambda_m * 1e6
    if not (coeffs.lambda_min_um <= um <= coeffs.lambda_max_um):
        raise WavelengthRangeError(
            f"wavelength {um:.4f} um outside valid range "
            f"[{coeffs.lambda_min_um}, {coeffs.lambda_max_um}] um of {coeffs.source}"
        )
    return um


def n_ordinary(lambda_m: float, coeffs: SellmeierSet = BBO) -> float:
    """Ordinary refractive index at wavelength lambda_m (meters)."""
    um = _check_range(lambda_m, coeffs)
    return float(np.sqrt(coeffs.a_o + coeffs.b_o / (um**2 - coeffs.c_o) - coeffs.d_o * um**2))


def n_extraordinary_principal(lambda_m: float, coeffs: SellmeierSet = BBO) -> float:
    """Principal extraordinary index (propagation perpendicular to the optic axis)."""
    um = _check_range(lambda_m, coeffs)
    return float(np.sqrt(coeffs.a_e + coeffs.b_e / (um**2 - coeffs.c_e) - coeffs.d_e * um**2))


def n_e_angle(lambda_m: float, theta: float, coeffs: SellmeierSet = BBO) -> float:
    """Extraordinary index for propagation at angle theta to the optic axis.

    Index ellipse: 1/n^2(theta) = cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2.
    theta must lie in [0, pi/2].
    """
    if not (0.0 <= theta <= np.pi / 2):
        raise AngleDomainError(f"theta={theta} rad outside [0, pi/2]")
    no = n_ordinary(lambda_m, coeffs)
    ne = n_extraordinary_principal(lambda_m, coeffs)
    return float(1.0 / np.sqrt(np.cos(theta) ** 2 / no**2 + np.sin(theta) ** 2 / ne**2))
