"""Pearson correlation of a coincidence map and its bootstrap uncertainty.

The rate matrix, normalized to unit sum, is read as a joint probability
distribution of the two detector positions; rho is the correlation of those
two position variables. The bootstrap scales the map to a total expected
count, draws Poisson count maps, and reports the spread of their rho values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .biphoton import CoincidenceMap

#: resamples per RNG stream; fixed so results do not depend on scheduling
BOOTSTRAP_BATCH = 2048

#: fraction of degenerate resamples tolerated before the bootstrap errors out
MAX_SKIP_FRACTION = 0.01


class UndefinedCorrelationError(ValueError):
    """Correlation of an all-zero map is undefined."""


class DegenerateDistributionError(ValueError):
    """One of the marginals has zero variance."""


class BootstrapError(RuntimeError):
    """Too many degenerate resamples."""


@dataclass(frozen=True)
class CorrelationResult:
    """Pearson rho with optional bootstrap spread and its provenance."""

    rho: float
    sigma_rho: float | None = None
    n_resamples: int = 0
    seed: int | None = None
    counts_total: float | None = None
    n_skipped: int = 0

    def __post_init__(self):
        if not -1.0 - 1e-12 <= self.rho <= 1.0 + 1e-12:
            raise ValueError(f"rho = {self.rho} outside [-1, 1]")
        if self.sigma_rho is not None and self.sigma_rho < 0:
            raise ValueError("sigma_rho must be >= 0")


def _moments(x1, x2, weights):
    total = weights.sum()
    p = weights / total
    m1 = (p.sum(axis=1) * x1).sum()
    m2 = (p.sum(axis=0) * x2).sum()
    e11 = np.einsum("i,ij,j->", x1, p, x2)
    e1_sq = (p.sum(axis=1) * x1**2).sum()
    e2_sq = (p.sum(axis=0) * x2**2).sum()
    return m1, m2, e11, e1_sq, e2_sq


def pearson(coin_map: CoincidenceMap, centered: bool = True) -> float:
    """Correlation coefficient of (x1, x2) under the map's joint distribution.

    With centered=False the raw second moments are used instead of
    covariances: rho = <x1 x2> / sqrt(<x1^2> <x2^2>).
    """
    rates = coin_map.rates
    if rates.sum() <= 0:
        raise UndefinedCorrelationError("map has zero total rate")
    m1, m2, e11, e1_sq, e2_sq = _moments(coin_map.x_signal, coin_map.x_idler, rates)
    if centered:
        cov = e11 - m1 * m2
        v1 = e1_sq - m1**2
        v2 = e2_sq - m2**2
    else:
        cov, v1, v2 = e11, e1_sq, e2_sq
    if v1 <= 0 or v2 <= 0:
        raise DegenerateDistributionError("zero variance along a detector axis")
    return float(np.clip(cov / np.sqrt(v1 * v2), -1.0, 1.0))


def _resample_rhos(expected, x1, x2, n_resamples, seed, centered=True):
    """rho of Poisson resamples, one fixed-size RNG stream per batch."""
    n_batches = -(-n_resamples // BOOTSTRAP_BATCH)
    streams = np.random.SeedSequence(seed).spawn(n_batches)
    rhos = np.empty(n_resamples)
    skipped = 0
    x1sq, x2sq = x1**2, x2**2
    for b, stream in enumerate(streams):
        rng = np.random.default_rng(stream)
        lo = b * BOOTSTRAP_BATCH
        count = min(BOOTSTRAP_BATCH, n_resamples - lo)
        draws = rng.poisson(expected, size=(count,) + expected.shape)
        totals = draws.sum(axis=(1, 2)).astype(float)
        p1 = draws.sum(axis=2)
        p2 = draws.sum(axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            if centered:
                m1 = p1 @ x1 / totals
                m2 = p2 @ x2 / totals
            else:
                m1 = m2 = np.zeros_like(totals)
            e11 = np.einsum("i,kij,j->k", x1, draws, x2) / totals
            v1 = p1 @ x1sq / totals - m1**2
            v2 = p2 @ x2sq / totals - m2**2
            rho = (e11 - m1 * m2) / np.sqrt(v1 * v2)
        bad = ~np.isfinite(rho)
        skipped += int(bad.sum())
        rhos[lo:lo + count] = np.where(bad, np.nan, rho)
    return rhos[np.isfinite(rhos)], skipped


def bootstrap_sigma(
    coin_map: CoincidenceMap,
    n_resamples: int = 100_000,
    seed: int = 0,
    counts_total: float = 1e6,
    centered: bool = True,
) -> CorrelationResult:
    """Bootstrap standard deviation of rho under Poisson counting noise.

    The map is rescaled so its entries sum to counts_total expected counts,
    then n_resamples Poisson count maps are drawn and rho computed for each.
    Deterministic for a fixed seed, independent of batch scheduling.
    Resamples with a degenerate marginal are skipped; more than 1% skipped
    is an error.
    """
    if n_resamples < 2:
        raise ValueError("need at least 2 resamples")
    if counts_total <= 0:
        raise ValueError("counts_total must be positive")
    rho0 = pearson(coin_map, centered=centered)
    expected = coin_map.rates * (counts_total / coin_map.rates.sum())
    rhos, skipped = _resample_rhos(
        expected, coin_map.x_signal, coin_map.x_idler, n_resamples, seed, centered
    )
    if skipped > MAX_SKIP_FRACTION * n_resamples:
        raise BootstrapError(
            f"{skipped}/{n_resamples} resamples degenerate; "
            "increase counts_total"
        )
    sigma = float(rhos.std(ddof=1))
    return CorrelationResult(
        rho=rho0,
        sigma_rho=sigma,
        n_resamples=n_resamples,
        seed=seed,
        counts_total=counts_total,
        n_skipped=skipped,
    )
