"""Refractive-index model tests against independently computed golden values."""

import json

import numpy as np
import pytest

from spdcsim.dispersion import (
    BBO,
    AngleDomainError,
    SellmeierSet,
    WavelengthRangeError,
    n_e_angle,
    n_extraordinary_principal,
    n_ordinary,
)

# golden values computed with a 30-digit arbitrary-precision evaluation of the
# shipped coefficient set, frozen before the module was written
GOLDEN_N_O_405 = 1.69188689597686
GOLDEN_N_O_810 = 1.66025831731717
GOLDEN_N_E_405 = 1.56712414590508
GOLDEN_N_E_810 = 1.54418119804214
GOLDEN_N_E_ANGLE_405_20DEG = 1.67573752263319


def test_ordinary_golden_values():
    assert n_ordinary(405e-9) == pytest.approx(GOLDEN_N_O_405, abs=1e-12)
    assert n_ordinary(810e-9) == pytest.approx(GOLDEN_N_O_810, abs=1e-12)


def test_extraordinary_golden_values():
    assert n_extraordinary_principal(405e-9) == pytest.approx(GOLDEN_N_E_405, abs=1e-12)
    assert n_extraordinary_principal(810e-9) == pytest.approx(GOLDEN_N_E_810, abs=1e-12)


def test_ordinary_monotone_decreasing_visible_nir():
    lams = np.linspace(0.4e-6, 1.0e-6, 50)
    values = [n_ordinary(lam) for lam in lams]
    assert np.all(np.diff(values) < 0)


def test_negative_uniaxial_ordering():
    for lam in (0.25e-6, 0.405e-6, 0.81e-6, 1.0e-6):
        assert n_extraordinary_principal(lam) < n_ordinary(lam)
        assert n_ordinary(lam) > 1.0


def test_out_of_range_wavelength_raises():
    with pytest.raises(WavelengthRangeError):
        n_ordinary(0.1e-6)
    with pytest.raises(WavelengthRangeError):
        n_extraordinary_principal(2.0e-6)
    # the Sellmeier pole sits below the valid range, so it is unreachable
    with pytest.raises(WavelengthRangeError):
        n_ordinary(np.sqrt(BBO.c_o) * 1e-6)


def test_angle_limits():
    lam = 405e-9
    assert n_e_angle(lam, 0.0) == pytest.approx(n_ordinary(lam), abs=1e-14)
    assert n_e_angle(lam, np.pi / 2) == pytest.approx(
        n_extraordinary_principal(lam), abs=1e-14
    )


def test_angle_golden_value():
    assert n_e_angle(405e-9, np.deg2rad(20.0)) == pytest.approx(
        GOLDEN_N_E_ANGLE_405_20DEG, abs=1e-12
    )


def test_angle_strictly_decreasing_and_bounded():
    lam = 810e-9
    thetas = np.linspace(0.0, np.pi / 2, 40)
    values = np.array([n_e_angle(lam, t) for t in thetas])
    assert np.all(np.diff(values) < 0)
    assert np.all(values[1:-1] < n_ordinary(lam))
    assert np.all(values[1:-1] > n_extraordinary_principal(lam))


def test_angle_domain_error():
    with pytest.raises(AngleDomainError):
        n_e_angle(405e-9, -0.1)
    with pytest.raises(AngleDomainError):
        n_e_angle(405e-9, np.pi / 2 + 0.1)


def test_coefficient_file_roundtrip(tmp_path):
    rows = [
        dict(material="BBO", row="o", a=BBO.a_o, b=BBO.b_o, c=BBO.c_o, d=BBO.d_o,
             lambda_min_um=BBO.lambda_min_um, lambda_max_um=BBO.lambda_max_um,
             source=BBO.source),
        dict(material="BBO", row="e", a=BBO.a_e, b=BBO.b_e, c=BBO.c_e, d=BBO.d_e,
             lambda_min_um=BBO.lambda_min_um, lambda_max_um=BBO.lambda_max_um,
             source=BBO.source),
    ]
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps(rows))
    loaded = SellmeierSet.from_file(path)
    assert loaded == BBO


def test_coefficient_file_requires_both_rows():
    with pytest.raises(ValueError):
        SellmeierSet.from_rows([
            dict(material="BBO", row="o", a=1, b=1, c=0.1, d=0,
                 lambda_min_um=0.2, lambda_max_um=1.0, source="x"),
        ])
