"""Power-controlled downlink synthesis and the SNR observed at the SBS.

The macro base station (MBS) serves its user (MU) under closed-loop power
control: the transmit power is scaled every subblock so the MU's received
SNR equals the target gamma_T exactly.  A small-cell base station (SBS)
overhears the same transmissions; in dB its per-subblock SNR is

    snr_sbs = gamma_T,dB + 37.6*log10(d0/d1)
              + 10*log10(|h1|^2 / |h0|^2) + 10*log10(g_s1 / g_s0)

where d0 (d1) is the MBS-MU (MBS-SBS) distance.  The SBS measures each
subblock SNR by energy detection over M unit-power pilot symbols; M=None
models an ideal measurement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelDraw, PATH_LOSS_SLOPE_DB, draw_fading_power, draw_shadowing, linear_gain

#: Linear clamp applied to the energy-detection estimate before the dB
#: conversion, so deep fades produce a finite floor of -60 dB.
MEASUREMENT_FLOOR_LINEAR = 1e-6


def _db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def clpc_power(
    fading_power_mu: float,
    shadow_mu: float,
    g0: float,
    gamma_t_db: float,
    noise_dbm: float,
) -> float:
    """Closed-loop-power-control transmit power in mW.

    Inverts the MU link so the received SNR equals the target exactly:
    p0 = gamma_T * sigma^2 / (|h0|^2 * g0 * g_s0), with gamma_T and the
    noise power converted to linear milliwatt scale.
    """
    gamma_t = _db_to_linear(gamma_t_db)
    noise_mw = _db_to_linear(noise_dbm)
    return gamma_t * noise_mw / (fading_power_mu * g0 * shadow_mu)


def sbs_snr_db(draw: ChannelDraw, subblock: int, scenario) -> float:
    """Exact SNR (dB) of the overheard signal at the SBS for one subblock.

    Shortcut form of the power-control loop: target SNR plus the path-loss
    ratio term plus the fading and shadowing ratio terms in dB.
    """
    theta_r = 10.0 * np.log10(draw.fading_sbs[subblock] / draw.fading_mu[subblock])
    theta_s = 10.0 * np.log10(draw.shadow_sbs / draw.shadow_mu)
    return (
        scenario.gamma_t_db
        + PATH_LOSS_SLOPE_DB * np.log10(scenario.d0_km / scenario.d1_km)
        + theta_r
        + theta_s
    )


def sbs_snr_db_long_path(draw: ChannelDraw, subblock: int, scenario) -> float:
    """Same SNR computed the long way through the transmit/receive chain.

    Computes the CLPC power explicitly, then the received SNR at the SBS
    through its own path loss, shadowing and fading.  Kept as the
    independent route for validating :func:`sbs_snr_db`.
    """
    g0 = linear_gain(scenario.d0_km)
    g1 = linear_gain(scenario.d1_km)
    noise_mw = _db_to_linear(scenario.noise_dbm)
    p0 = clpc_power(
        draw.fading_mu[subblock], draw.shadow_mu, g0, scenario.gamma_t_db, scenario.noise_dbm
    )
    snr_linear = draw.fading_sbs[subblock] * g1 * draw.shadow_sbs * p0 / noise_mw
    return 10.0 * np.log10(snr_linear)


def measure_snr_db(
    true_snr_db: float, pilot_count: int | None, rng: np.random.Generator
) -> float:
    """Energy-detection SNR measurement over ``pilot_count`` pilot symbols.

    Simulates M unit-power pilots through complex AWGN at the given SNR
    (noise power normalised to 1) and returns

        10*log10(max(floor, mean(|y|^2) - 1)).

    ``pilot_count=None`` is the ideal mode and returns the input unchanged.
    """
    if pilot_count is None:
        return true_snr_db
    if pilot_count < 1:
        raise ValueError("pilot_count must be >= 1 (or None for ideal)")
    gamma = _db_to_linear(true_snr_db)
    m = int(pilot_count)
    noise = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2.0)
    y = np.sqrt(gamma) + noise  # unit-power pilot x=1 absorbed into the mean
    estimate = max(MEASUREMENT_FLOOR_LINEAR, float(np.mean(np.abs(y) ** 2)) - 1.0)
    return 10.0 * np.log10(estimate)


def measured_snr_linear(
    true_snr_db: np.ndarray, pilot_count: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorised energy-detection measurement, returned on the linear scale.

    Samples the detector statistic from its exact distribution: with M
    unit-power pilots in unit-variance complex noise, 2M * mean(|y|^2)
    is noncentral chi-square with 2M degrees of freedom and noncentrality
    2M*gamma.  One draw per sample replaces the M per-pilot draws; the
    per-pilot route in :func:`measure_snr_db` is retained as the reference
    and the two are checked against each other distributionally in tests.
    """
    gamma = 10.0 ** (np.asarray(true_snr_db, dtype=float) / 10.0)
    m = int(pilot_count)
    stat = rng.noncentral_chisquare(2.0 * m, 2.0 * m * gamma.ravel()) / (2.0 * m)
    return np.maximum(stat - 1.0, MEASUREMENT_FLOOR_LINEAR).reshape(gamma.shape)


@dataclass(frozen=True)
class SnrSample:
    """One (block, subblock) SNR observation at the SBS."""

    block: int
    subblock: int
    true_snr_db: float
    measured_snr_db: float


@dataclass(frozen=True)
class SnrMatrix:
    """All K = I*J SNR observations of one trial, as (I, J) arrays."""

    true_snr_db: np.ndarray = field(repr=False)
    measured_snr_db: np.ndarray = field(repr=False)
    scenario_ref: str = ""

    def __post_init__(self):
        if self.true_snr_db.shape != self.measured_snr_db.shape:
            raise ValueError("true/measured grids must have the same shape")
        if self.true_snr_db.ndim != 2 or self.true_snr_db.size < 1:
            raise ValueError("SNR grid must be a non-empty (I, J) array")
        if not np.all(np.isfinite(self.measured_snr_db)):
            raise ValueError("measured SNR values must be finite")

    @property
    def blocks(self) -> int:
        return self.true_snr_db.shape[0]

    @property
    def subblocks(self) -> int:
        return self.true_snr_db.shape[1]

    @property
    def k(self) -> int:
        return self.true_snr_db.size

    def sample(self, block: int, subblock: int) -> SnrSample:
        return SnrSample(
            block,
            subblock,
            float(self.true_snr_db[block, subblock]),
            float(self.measured_snr_db[block, subblock]),
        )


def generate_snr_matrix(scenario, rng: np.random.Generator) -> SnrMatrix:
    """Generate the I x J grid of SNR samples for one trial.

    Shadowing is drawn once per block and shared by its subblocks; fading is
    fresh per subblock.  Draws come from ``rng`` in a fixed order (shadowing,
    fading, then measurement noise), so a trial stream from
    :func:`mbrange.streams.trial_stream` reproduces the matrix exactly, and
    the ideal and noisy modes share identical channel realisations for the
    same seed.
    """
    i, j = scenario.blocks, scenario.subblocks
    if i < 1 or j < 1:
        raise ValueError("blocks and subblocks must be >= 1")

    shadow = draw_shadowing(rng, scenario.sigma_s_db, size=(i, 2))
    fading = draw_fading_power(rng, size=(i, j, 2))

    theta_s = 10.0 * np.log10(shadow[:, 1] / shadow[:, 0])
    theta_r = 10.0 * np.log10(fading[:, :, 1] / fading[:, :, 0])
    offset = scenario.gamma_t_db + PATH_LOSS_SLOPE_DB * np.log10(
        scenario.d0_km / scenario.d1_km
    )
    true_db = offset + theta_r + theta_s[:, None]

    if scenario.pilot_count is None:
        measured_db = true_db.copy()
    else:
        lin = measured_snr_linear(true_db, scenario.pilot_count, rng)
        measured_db = 10.0 * np.log10(lin)

    ref = scenario.fingerprint() if hasattr(scenario, "fingerprint") else ""
    return SnrMatrix(true_db, measured_db, scenario_ref=ref)
