"""Passive ranging of a power-controlled macro downlink.

A small-cell base station overhears closed-loop power-controlled downlink
transmissions and estimates the transmitter-to-user distance from the
median of its measured SNR samples, with distribution-theory backing and
order-statistic bounds.  The harness runs seeded Monte Carlo sweeps and
writes CSV plus rendered figures.
"""

from .analysis import (
    DegenerateShadowing,
    QuadratureNonConvergence,
    fading_ratio_cdf_db,
    fading_ratio_pdf_db,
    median_identity_residual,
    sbs_snr_cdf_db,
    sbs_snr_cdf_db_batch,
    shadow_diff_pdf_db,
)
from .channel import (
    ChannelDraw,
    DistanceBelowModelFloor,
    MIN_DISTANCE_KM,
    PATH_LOSS_SLOPE_DB,
    PathLossModel,
    draw_block,
    draw_fading_power,
    draw_shadowing,
    linear_gain,
    path_loss_db,
)
from .estimator import (
    DistanceEstimate,
    EmptySample,
    InsufficientSamples,
    SortedSnrSamples,
    bound_coverage_probability,
    bound_ranks,
    estimate_distance_km,
    order_statistic_bounds,
    sample_median_db,
)
from .harness import (
    CSV_HEADER,
    InvalidSweepVariable,
    IoFailure,
    Scenario,
    ScenarioError,
    SweepResult,
    calibrate_d0_for_mean_snr,
    convergence_curve,
    emit_csv,
    run_point,
    run_trial,
    sweep,
    table1_experiment,
)
from .signals import (
    MEASUREMENT_FLOOR_LINEAR,
    SnrMatrix,
    SnrSample,
    clpc_power,
    generate_snr_matrix,
    measure_snr_db,
    measured_snr_linear,
    sbs_snr_db,
    sbs_snr_db_long_path,
)
from .streams import block_stream, trial_stream

__version__ = "0.1.0"

__all__ = [
    "ChannelDraw",
    "CSV_HEADER",
    "DegenerateShadowing",
    "DistanceBelowModelFloor",
    "DistanceEstimate",
    "EmptySample",
    "InsufficientSamples",
    "InvalidSweepVariable",
    "IoFailure",
    "MEASUREMENT_FLOOR_LINEAR",
    "MIN_DISTANCE_KM",
    "PATH_LOSS_SLOPE_DB",
    "PathLossModel",
    "QuadratureNonConvergence",
    "Scenario",
    "ScenarioError",
    "SnrMatrix",
    "SnrSample",
    "SortedSnrSamples",
    "SweepResult",
    "block_stream",
    "bound_coverage_probability",
    "bound_ranks",
    "calibrate_d0_for_mean_snr",
    "clpc_power",
    "convergence_curve",
    "draw_block",
    "draw_fading_power",
    "draw_shadowing",
    "emit_csv",
    "estimate_distance_km",
    "fading_ratio_cdf_db",
    "fading_ratio_pdf_db",
    "generate_snr_matrix",
    "linear_gain",
    "measure_snr_db",
    "measured_snr_linear",
    "median_identity_residual",
    "order_statistic_bounds",
    "path_loss_db",
    "run_point",
    "run_trial",
    "sample_median_db",
    "sbs_snr_cdf_db",
    "sbs_snr_cdf_db_batch",
    "sbs_snr_db",
    "sbs_snr_db_long_path",
    "shadow_diff_pdf_db",
    "sweep",
    "table1_experiment",
    "trial_stream",
]
