"""Closed-form and numerically integrated distributions of the SBS SNR.

In dB the overheard SNR decomposes into a constant offset plus two
independent terms: the fading power ratio Theta_r with logistic CDF
1/(1 + 10^(-theta/10)), and the shadowing difference Theta_s which is
Normal(0, 2*sigma_s^2).  The marginal CDF of the SNR is the convolution

    F(gamma) = integral f_Theta_s(t) * F_Theta_r(m(gamma) - t) dt,
    m(gamma) = gamma - gamma_T,dB - 37.6*log10(d0/d1),

evaluated here by adaptive Gauss-Kronrod quadrature (with a fast
Gauss-Hermite route for vectorised evaluation).  The key identity behind
the median-based estimator — F(gamma) = 1/2 exactly at m(gamma) = 0 for
every sigma_s — is verified numerically by `median_identity_residual`.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate
from scipy.special import expit

from .channel import PATH_LOSS_SLOPE_DB

#: Logistic rate of Theta_r in dB: ln(10)/10.
_LOGISTIC_RATE = np.log(10.0) / 10.0

#: Absolute tolerance required of the quadrature routes.
QUAD_ABS_TOL = 1e-9

#: Gauss-Hermite order used by the vectorised CDF route.
_GH_ORDER = 220
_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite.hermgauss(_GH_ORDER)
_GH_WEIGHTS = _GH_WEIGHTS / np.sqrt(np.pi)


class DegenerateShadowing(ValueError):
    """sigma_s = 0 makes the shadowing-difference density undefined."""


class QuadratureNonConvergence(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


def fading_ratio_cdf_db(theta_db) -> np.ndarray | float:
    """CDF of the dB fading-power ratio: 1/(1 + 10^(-theta/10)).

    Logistic in theta with scale 10/ln(10); evaluated through expit for
    numerical stability far in the tails.
    """
    return expit(_LOGISTIC_RATE * np.asarray(theta_db, dtype=float))


def fading_ratio_pdf_db(theta_db) -> np.ndarray | float:
    """Density of the dB fading-power ratio (derivative of the CDF)."""
    p = expit(_LOGISTIC_RATE * np.asarray(theta_db, dtype=float))
    return _LOGISTIC_RATE * p * (1.0 - p)


def shadow_diff_pdf_db(theta_db, sigma_s_db: float) -> np.ndarray | float:
    """Density of the dB shadowing difference: Normal(0, 2*sigma_s^2).

    Raises DegenerateShadowing at sigma_s = 0, where callers must fall back
    to the fading-ratio distribution alone.
    """
    if sigma_s_db <= 0:
        raise DegenerateShadowing("sigma_s_db must be > 0")
    var = 2.0 * sigma_s_db**2
    t = np.asarray(theta_db, dtype=float)
    return np.exp(-(t**2) / (2.0 * var)) / np.sqrt(2.0 * np.pi * var)


def _median_offset_db(scenario) -> float:
    """gamma_T,dB + 37.6*log10(d0/d1): the distribution's median in dB."""
    return scenario.gamma_t_db + PATH_LOSS_SLOPE_DB * np.log10(
        scenario.d0_km / scenario.d1_km
    )


def sbs_snr_cdf_db(gamma_db: float, scenario) -> float:
    """Marginal CDF of the SBS's per-subblock SNR in dB.

    Convolves the shadowing-difference density with the fading-ratio CDF by
    adaptive quadrature, truncated at +-10 standard deviations of the
    shadowing difference (the Gaussian tail beyond that is far below the
    1e-9 tolerance).  sigma_s = 0 bypasses the convolution.
    """
    m = float(gamma_db) - _median_offset_db(scenario)
    sigma_s = scenario.sigma_s_db
    if sigma_s == 0:
        return float(fading_ratio_cdf_db(m))
    lim = 10.0 * np.sqrt(2.0) * sigma_s
    value, err = integrate.quad(
        lambda t: shadow_diff_pdf_db(t, sigma_s) * fading_ratio_cdf_db(m - t),
        -lim,
        lim,
        epsabs=QUAD_ABS_TOL * 1e-3,
        epsrel=1e-12,
        limit=200,
    )
    if err > QUAD_ABS_TOL:
        raise QuadratureNonConvergence(
            f"quadrature error {err:.2e} above {QUAD_ABS_TOL:.0e}"
        )
    return float(min(1.0, max(0.0, value)))


def sbs_snr_cdf_db_batch(gamma_db, scenario) -> np.ndarray:
    """Vectorised CDF evaluation via Gauss-Hermite quadrature.

    Agrees with :func:`sbs_snr_cdf_db` to well below 1e-9 for the sigma_s
    range used here (checked in tests); intended for evaluating the CDF on
    large sample arrays, e.g. Kolmogorov-Smirnov comparisons.
    """
    g = np.asarray(gamma_db, dtype=float)
    m = g - _median_offset_db(scenario)
    sigma_s = scenario.sigma_s_db
    if sigma_s == 0:
        return fading_ratio_cdf_db(m)
    # Theta_s = 2*sigma_s*u maps the Normal(0, 2 sigma_s^2) weight onto
    # the Hermite weight exp(-u^2).
    theta = 2.0 * sigma_s * _GH_NODES
    return fading_ratio_cdf_db(m[..., None] - theta) @ _GH_WEIGHTS


def median_identity_residual(sigma_s_db: float) -> float:
    """|integral f_Theta_s(t) * F_Theta_r(-t) dt  -  1/2|.

    The integral equals 1/2 for every sigma_s because the shadowing density
    is even and F(-t) = 1 - F(t) for the logistic CDF; this evaluates it
    numerically and returns the residual.
    """
    if sigma_s_db <= 0:
        raise DegenerateShadowing("sigma_s_db must be > 0")
    lim = 10.0 * np.sqrt(2.0) * sigma_s_db
    value, err = integrate.quad(
        lambda t: shadow_diff_pdf_db(t, sigma_s_db) * fading_ratio_cdf_db(-t),
        -lim,
        lim,
        epsabs=QUAD_ABS_TOL * 1e-3,
        epsrel=1e-12,
        limit=200,
    )
    if err > QUAD_ABS_TOL:
        raise QuadratureNonConvergence(
            f"quadrature error {err:.2e} above {QUAD_ABS_TOL:.0e}"
        )
    return abs(value - 0.5)
