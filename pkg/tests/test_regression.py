"""Pinned model outputs.

These values were produced by this implementation at the default sampling
(1 um pump grid, 21 z-planes, 3 um detector step) and are frozen so that
refactors which change the physics show up immediately. They are *model*
values, not external targets; the acceptance suite owns those.
"""

import pytest

from conftest import config_with

PINNED = [
    ("half", (), 0.960819),
    ("half", (("slits__pitch_um", 50.0),), 0.858212),
    ("half", (("slits__pitch_um", 200.0),), 0.988202),
    ("half", (("crystal__length_z_mm", 5.0),), 0.979640),
    ("half", (("crystal__length_z_mm", 100.0),), 0.690991),
    ("half", (("crystal__process", "type2"),), 0.960950),
    ("full", (), 0.979637),
    ("full", (("crystal__length_z_mm", 100.0),), 0.819277),
    ("full", (("crystal__process", "type2"),), 0.999245),
]


@pytest.mark.parametrize("convention,overrides,expected", PINNED)
def test_pinned_rho(run_cached, convention, overrides, expected):
    _, result = run_cached(config_with(convention, **dict(overrides)))
    assert result.rho == pytest.approx(expected, abs=1e-4)
