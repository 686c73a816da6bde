"""Median-based distance estimator and its order-statistic bounds.

The dB median of the SBS's SNR satisfies

    median = gamma_T,dB + 37.6 * log10(d0 / d1),

so inverting the sample median of K sorted measurements gives the distance
estimate d0_hat = d1 * 10^((median - gamma_T,dB) / 37.6).  The order
statistics one rank below and above the middle give lower/upper distance
bounds; the closed-form confidence attached to them is
(1 - (1/2)^[K/2 + 1])^2 with [.] rounding half to even.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import MIN_DISTANCE_KM, PATH_LOSS_SLOPE_DB, DistanceBelowModelFloor


class EmptySample(ValueError):
    """No SNR samples to estimate from."""


class InsufficientSamples(ValueError):
    """Fewer than 3 samples: the bounding order statistics do not exist."""


@dataclass(frozen=True)
class SortedSnrSamples:
    """Ascending dB SNR samples, the estimator's sole input."""

    values_db: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values_db, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise EmptySample("need a non-empty 1-D sample array")
        if np.any(np.diff(v) < 0):
            raise ValueError("values_db must be in ascending order")
        object.__setattr__(self, "values_db", v)

    @classmethod
    def from_samples(cls, values) -> "SortedSnrSamples":
        v = np.asarray(values, dtype=float).ravel()
        if v.size == 0:
            raise EmptySample("need at least one sample")
        return cls(np.sort(v))

    @property
    def k(self) -> int:
        return self.values_db.size

    def order_statistic(self, rank: int) -> float:
        """1-indexed k-th smallest value."""
        if not 1 <= rank <= self.k:
            raise IndexError(f"rank {rank} outside 1..{self.k}")
        return float(self.values_db[rank - 1])


@dataclass(frozen=True)
class DistanceEstimate:
    """Point estimate of d0 with order-statistic bounds and their confidence."""

    d_hat_km: float
    lower_km: float
    upper_km: float
    coverage_probability: float
    k_used: int


def sample_median_db(sorted_samples: SortedSnrSamples) -> float:
    """Sample median of the sorted dB values.

    Odd K: the middle order statistic.  Even K: the average of the two
    middle order statistics.
    """
    k = sorted_samples.k
    if k == 0:
        raise EmptySample("no samples")
    v = sorted_samples.values_db
    if k % 2:
        return float(v[(k + 1) // 2 - 1])
    return float(0.5 * (v[k // 2 - 1] + v[k // 2]))


def _distance_from_db(median_db: float, d1_km: float, gamma_t_db: float) -> float:
    return d1_km * 10.0 ** ((median_db - gamma_t_db) / PATH_LOSS_SLOPE_DB)


def estimate_distance_km(
    sorted_samples: SortedSnrSamples, d1_km: float, gamma_t_db: float
) -> float:
    """Median-based distance estimate d1 * 10^((median - gamma_T)/37.6).

    O(1) given the sorted input.  ``d1_km`` must respect the path-loss
    model floor; the estimate itself is deliberately not clamped to any
    cell radius.
    """
    if d1_km < MIN_DISTANCE_KM:
        raise DistanceBelowModelFloor(f"d1 = {d1_km} km below {MIN_DISTANCE_KM} km")
    return _distance_from_db(sample_median_db(sorted_samples), d1_km, gamma_t_db)


def bound_coverage_probability(k: int) -> float:
    """Closed-form confidence (1 - (1/2)^[k/2 + 1])^2 attached to the bounds.

    [.] rounds to the nearest integer; the half-integral case (odd k) is
    resolved half-to-even, which is Python's round().  Note the exact
    bracketing probability of the bounds differs from this expression; see
    the tests against the binomial order-statistic oracle.
    """
    exponent = round(k / 2 + 1)
    return (1.0 - 0.5**exponent) ** 2


def bound_ranks(k: int) -> tuple[int, int]:
    """1-indexed ranks (ceil((K+1)/2) - 1, floor((K+1)/2) + 1) of the bounds."""
    if k < 3:
        raise InsufficientSamples("need K >= 3 for the bounding order statistics")
    lower = int(np.ceil((k + 1) / 2)) - 1
    upper = int(np.floor((k + 1) / 2)) + 1
    return lower, upper


def order_statistic_bounds(
    sorted_samples: SortedSnrSamples, d1_km: float, gamma_t_db: float
) -> DistanceEstimate:
    """Distance estimate plus the order-statistic lower/upper bounds.

    The bounds are the sorted samples one rank below/above the middle,
    mapped through the same median relation as the point estimate, so they
    always bracket it.
    """
    k = sorted_samples.k
    lower_rank, upper_rank = bound_ranks(k)
    d_hat = estimate_distance_km(sorted_samples, d1_km, gamma_t_db)
    lower = _distance_from_db(
        sorted_samples.order_statistic(lower_rank), d1_km, gamma_t_db
    )
    upper = _distance_from_db(
        sorted_samples.order_statistic(upper_rank), d1_km, gamma_t_db
    )
    return DistanceEstimate(
        d_hat_km=d_hat,
        lower_km=lower,
        upper_km=upper,
        coverage_probability=bound_coverage_probability(k),
        k_used=k,
    )
