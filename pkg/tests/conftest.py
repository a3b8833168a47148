"""Shared fixtures: the heavier coincidence maps are computed once per session."""

import dataclasses

import pytest

from spdcsim.config import RunConfig
from spdcsim.pipeline import build_pump, simulate


def config_with(convention="full", **overrides):
    """Baseline config with a sinc convention and flat section.key overrides.

    Overrides use "section.key" names, e.g. slits__pitch_um=50.
    """
    cfg = RunConfig()
    cfg = dataclasses.replace(
        cfg, phasematch=dataclasses.replace(cfg.phasematch, sinc_convention=convention)
    )
    for dotted, value in overrides.items():
        section, key = dotted.split("__")
        sub = dataclasses.replace(getattr(cfg, section), **{key: value})
        cfg = dataclasses.replace(cfg, **{section: sub})
    return cfg


@pytest.fixture(scope="session")
def run_cached():
    """Memoized pipeline runner keyed by the config hash."""
    cache = {}

    def run(cfg):
        key = cfg.hash()
        if key not in cache:
            cache[key] = simulate(cfg)
        return cache[key]

    return run


@pytest.fixture(scope="session")
def baseline_half(run_cached):
    return run_cached(config_with("half"))


@pytest.fixture(scope="session")
def baseline_full(run_cached):
    return run_cached(config_with("full"))


@pytest.fixture(scope="session")
def baseline_pump():
    return build_pump(RunConfig())
