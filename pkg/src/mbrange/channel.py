"""Large- and small-scale channel model: path loss, Rayleigh fading, shadowing.

Path loss follows the urban macro model

    P_l(d) = 128 + 37.6 * log10(d)   [dB],  d >= 0.035 km

with the equivalent linear power gain g(d) = 10^-12.8 * d^-3.76.

Fading power |h|^2 is unit-mean exponential (Rayleigh amplitude), and
shadowing is log-normal: 10*log10(g_s) ~ Normal(0, sigma_s^2) with sigma_s
in dB.  Time is organised in blocks and subblocks: the shadowing pair is
redrawn per block, the fading pair per subblock.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DistanceBelowModelFloor(ValueError):
    """Distance is below the 0.035 km validity floor of the path-loss model."""


@dataclass(frozen=True)
class PathLossModel:
    """Log-distance path-loss model with a minimum validity distance."""

    reference_loss_db: float = 128.0
    exponent_coefficient: float = 37.6
    min_distance_km: float = 0.035

    def __post_init__(self):
        if self.min_distance_km <= 0:
            raise ValueError("min_distance_km must be positive")

    def path_loss_db(self, d_km: float) -> float:
        """Path loss in dB at distance ``d_km``."""
        self._check(d_km)
        return self.reference_loss_db + self.exponent_coefficient * np.log10(d_km)

    def linear_gain(self, d_km: float) -> float:
        """Linear power gain 10^(-ref/10) * d^(-slope/10) at distance ``d_km``."""
        self._check(d_km)
        return 10.0 ** (-self.reference_loss_db / 10.0) * float(d_km) ** (
            -self.exponent_coefficient / 10.0
        )

    def _check(self, d_km: float) -> None:
        if d_km < self.min_distance_km:
            raise DistanceBelowModelFloor(
                f"d = {d_km} km is below the model floor "
                f"{self.min_distance_km} km"
            )


DEFAULT_PATH_LOSS = PathLossModel()

#: Minimum distance (km) at which the path-loss model is defined.
MIN_DISTANCE_KM = DEFAULT_PATH_LOSS.min_distance_km

#: dB-per-decade slope of the path-loss model, reused by the estimator.
PATH_LOSS_SLOPE_DB = DEFAULT_PATH_LOSS.exponent_coefficient


def path_loss_db(d_km: float, model: PathLossModel = DEFAULT_PATH_LOSS) -> float:
    """Path loss 128 + 37.6*log10(d) in dB; raises below the model floor."""
    return model.path_loss_db(d_km)


def linear_gain(d_km: float, model: PathLossModel = DEFAULT_PATH_LOSS) -> float:
    """Linear power gain 10^-12.8 * d^-3.76; raises below the model floor."""
    return model.linear_gain(d_km)


def draw_fading_power(rng: np.random.Generator, size=None):
    """Draw |h|^2 as unit-mean exponential fading power.

    The unit-mean exponential power convention is the one under which the
    power ratio of two independent links has CDF phi/(1+phi).
    """
    return rng.exponential(1.0, size=size)


def draw_shadowing(rng: np.random.Generator, sigma_s_db: float, size=None):
    """Draw a log-normal shadowing gain: 10*log10(g_s) ~ Normal(0, sigma_s^2).

    ``sigma_s_db`` is the shadowing standard deviation in dB; 0 yields the
    degenerate gain 1.
    """
    if sigma_s_db < 0:
        raise ValueError("sigma_s_db must be >= 0")
    return 10.0 ** (rng.normal(0.0, sigma_s_db, size=size) / 10.0)


@dataclass(frozen=True)
class ChannelDraw:
    """Channel realisation for one block: a shadowing pair plus J fading pairs.

    Shadowing gains are shared by every subblock of the block; the fading
    power arrays hold one independent draw per subblock.
    """

    block_index: int
    shadow_mu: float
    shadow_sbs: float
    fading_mu: np.ndarray = field(repr=False)
    fading_sbs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.shadow_mu <= 0 or self.shadow_sbs <= 0:
            raise ValueError("shadowing gains must be strictly positive")
        if np.any(self.fading_mu <= 0) or np.any(self.fading_sbs <= 0):
            raise ValueError("fading powers must be strictly positive")
        if len(self.fading_mu) != len(self.fading_sbs):
            raise ValueError("fading arrays must have equal length")

    @property
    def subblocks(self) -> int:
        return len(self.fading_mu)


def draw_block(scenario, block_index: int, rng: np.random.Generator) -> ChannelDraw:
    """Draw one block's channel state for both links.

    Draw order is fixed (MU shadow, SBS shadow, MU fadings, SBS fadings), so
    a generator positioned at the start of a block — e.g. one obtained from
    :func:`mbrange.streams.block_stream` — makes the result a pure function
    of (seed, trial, block_index).
    """
    j = scenario.subblocks
    if j < 1:
        raise ValueError("scenario must have at least one subblock")
    shadow_mu = float(draw_shadowing(rng, scenario.sigma_s_db))
    shadow_sbs = float(draw_shadowing(rng, scenario.sigma_s_db))
    fading_mu = draw_fading_power(rng, size=j)
    fading_sbs = draw_fading_power(rng, size=j)
    return ChannelDraw(block_index, shadow_mu, shadow_sbs, fading_mu, fading_sbs)
