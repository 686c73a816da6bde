"""Scenario configuration, Monte Carlo sweeps, and CSV emission.

A Scenario bundles every physical and experiment parameter of one
configuration.  Trials are independent work units driven by per-trial
counter-based random streams, so a sweep's output is bit-identical across
runs and across worker counts for a fixed seed.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .channel import MIN_DISTANCE_KM, PATH_LOSS_SLOPE_DB
from .estimator import DistanceEstimate, SortedSnrSamples, order_statistic_bounds
from .signals import generate_snr_matrix
from .streams import trial_stream


class ScenarioError(ValueError):
    """Invalid scenario parameters or scenario file contents."""


class InvalidSweepVariable(ValueError):
    """Sweep variable is not one of I, J, d0, d1, M, sigma_s."""


class IoFailure(OSError):
    """Could not write an output file."""


#: Sweep variable name -> Scenario field.
SWEEP_VARIABLES = {
    "I": "blocks",
    "J": "subblocks",
    "d0": "d0_km",
    "d1": "d1_km",
    "M": "pilot_count",
    "sigma_s": "sigma_s_db",
}

#: Documented CSV schema, one row per sweep point.
CSV_HEADER = "sweep_var,value,mean_epsilon,mean_snr_db,mean_d_hat_km,coverage"


@dataclass(frozen=True)
class Scenario:
    """All physical and experiment parameters of one configuration.

    ``pilot_count=None`` selects ideal SNR measurement.  ``snr_averaging``
    chooses the domain in which per-trial measured SNR is averaged:
    ``"db"`` (arithmetic mean of dB values) or ``"linear"`` (dB of the mean
    linear SNR).
    """

    d0_km: float
    d1_km: float
    blocks: int
    subblocks: int
    cell_radius_km: float = 0.5
    sigma_s_db: float = 4.0
    noise_dbm: float = -114.0
    gamma_t_db: float = 10.0
    pilot_count: int | None = 100
    trials: int = 10_000
    seed: int = 12345
    snr_averaging: str = "db"

    def __post_init__(self):
        if self.d0_km < MIN_DISTANCE_KM or self.d1_km < MIN_DISTANCE_KM:
            raise ScenarioError(
                f"d0_km and d1_km must be >= {MIN_DISTANCE_KM} km"
            )
        if self.blocks < 1 or self.subblocks < 1:
            raise ScenarioError("blocks and subblocks must be >= 1")
        if self.trials < 1:
            raise ScenarioError("trials must be >= 1")
        if self.pilot_count is not None and self.pilot_count < 1:
            raise ScenarioError("pilot_count must be >= 1 or null for ideal")
        if self.sigma_s_db < 0:
            raise ScenarioError("sigma_s_db must be >= 0")
        if self.cell_radius_km <= 0:
            raise ScenarioError("cell_radius_km must be positive")
        if self.snr_averaging not in ("db", "linear"):
            raise ScenarioError("snr_averaging must be 'db' or 'linear'")

    @property
    def k(self) -> int:
        return self.blocks * self.subblocks

    def fingerprint(self) -> str:
        """Stable short identifier of the parameter set."""
        payload = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha1(payload.encode()).hexdigest()[:12]

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        fields = set(cls.__dataclass_fields__)
        unknown = set(data) - fields
        if unknown:
            raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
        data = dict(data)
        if data.get("pilot_count") == "ideal":
            data["pilot_count"] = None
        try:
            return cls(**data)
        except TypeError as exc:
            raise ScenarioError(str(exc)) from exc

    @classmethod
    def from_json(cls, path) -> "Scenario":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ScenarioError("scenario file must hold a flat JSON object")
        return cls.from_dict(data)

    def to_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")


@dataclass(frozen=True)
class SweepResult:
    """Aggregate statistics of one sweep point."""

    sweep_var: str
    value: float
    mean_epsilon: float
    mean_snr_db: float
    mean_d_hat_km: float
    coverage: float


@dataclass(frozen=True)
class PointResult:
    """Per-trial arrays of one sweep point, in trial order."""

    epsilon: np.ndarray = field(repr=False)
    mean_snr_db: np.ndarray = field(repr=False)
    d_hat_km: np.ndarray = field(repr=False)
    lower_km: np.ndarray = field(repr=False)
    upper_km: np.ndarray = field(repr=False)
    covered: np.ndarray = field(repr=False)

    def summarize(self, sweep_var: str, value: float) -> SweepResult:
        return SweepResult(
            sweep_var=sweep_var,
            value=float(value),
            mean_epsilon=float(np.mean(self.epsilon)),
            mean_snr_db=float(np.mean(self.mean_snr_db)),
            mean_d_hat_km=float(np.mean(self.d_hat_km)),
            coverage=float(np.mean(self.covered)),
        )


def run_trial(scenario: Scenario, trial_index: int):
    """One Monte Carlo trial: (DistanceEstimate, epsilon, mean measured SNR).

    Deterministic given (scenario.seed, trial_index).  epsilon is the
    relative error |d_hat - d0| / d0.
    """
    rng = trial_stream(scenario.seed, trial_index)
    matrix = generate_snr_matrix(scenario, rng)
    samples = SortedSnrSamples.from_samples(matrix.measured_snr_db)
    estimate = order_statistic_bounds(samples, scenario.d1_km, scenario.gamma_t_db)
    epsilon = abs(estimate.d_hat_km - scenario.d0_km) / scenario.d0_km
    if scenario.snr_averaging == "db":
        mean_snr = float(np.mean(matrix.measured_snr_db))
    else:
        mean_snr = float(
            10.0 * np.log10(np.mean(10.0 ** (matrix.measured_snr_db / 10.0)))
        )
    return estimate, float(epsilon), mean_snr


def _run_trial_range(scenario: Scenario, start: int, stop: int) -> PointResult:
    n = stop - start
    eps = np.empty(n)
    snr = np.empty(n)
    d_hat = np.empty(n)
    lower = np.empty(n)
    upper = np.empty(n)
    covered = np.empty(n, dtype=bool)
    for i, t in enumerate(range(start, stop)):
        estimate, e, m = run_trial(scenario, t)
        eps[i] = e
        snr[i] = m
        d_hat[i] = estimate.d_hat_km
        lower[i] = estimate.lower_km
        upper[i] = estimate.upper_km
        covered[i] = estimate.lower_km <= scenario.d0_km <= estimate.upper_km
    return PointResult(eps, snr, d_hat, lower, upper, covered)


def _concat(chunks: list[PointResult]) -> PointResult:
    return PointResult(
        *(
            np.concatenate([getattr(c, name) for c in chunks])
            for name in ("epsilon", "mean_snr_db", "d_hat_km", "lower_km", "upper_km", "covered")
        )
    )


def run_point(scenario: Scenario, workers: int = 1) -> PointResult:
    """Run all trials of one configuration, optionally on several workers.

    Results are assembled in trial-index order, so the output is identical
    for every worker count.
    """
    trials = scenario.trials
    if workers <= 1 or trials < 2 * workers:
        return _run_trial_range(scenario, 0, trials)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_trial_range, scenario, int(a), int(b))
            for a, b in zip(bounds[:-1], bounds[1:])
        ]
        chunks = [f.result() for f in futures]
    return _concat(chunks)


def sweep(
    scenario_template: Scenario,
    variable: str,
    values,
    workers: int = 1,
) -> list[SweepResult]:
    """One SweepResult per value, each averaging the template's trial count."""
    if variable not in SWEEP_VARIABLES:
        raise InvalidSweepVariable(
            f"variable must be one of {sorted(SWEEP_VARIABLES)}, got {variable!r}"
        )
    fieldname = SWEEP_VARIABLES[variable]
    results = []
    for value in values:
        cast = value
        if fieldname in ("blocks", "subblocks", "pilot_count"):
            cast = int(value)
        scenario = replace(scenario_template, **{fieldname: cast})
        point = run_point(scenario, workers=workers)
        results.append(point.summarize(variable, float(value)))
    return results


def calibrate_d0_for_mean_snr(
    scenario_template: Scenario,
    target_snr_db: float,
    probe_trials: int | None = None,
    iterations: int = 12,
) -> float:
    """d0 whose mean measured SNR hits the target, by bisection on log d0.

    Mean measured SNR is monotone increasing in d0 at fixed d1, so bisection
    over [model floor, cell radius] converges; probes run a reduced trial
    count with the template's seed and are fully deterministic.
    """
    if probe_trials is None:
        probe_trials = min(200, scenario_template.trials)
    lo = np.log10(MIN_DISTANCE_KM)
    hi = np.log10(scenario_template.cell_radius_km)
    probe = replace(scenario_template, trials=probe_trials)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        point = run_point(replace(probe, d0_km=float(10.0**mid)))
        achieved = float(np.mean(point.mean_snr_db))
        if achieved < target_snr_db:
            lo = mid
        else:
            hi = mid
    return float(10.0 ** (0.5 * (lo + hi)))


def table1_experiment(
    scenario_template: Scenario,
    targets=(0.0, 5.0, 10.0, 15.0, 20.0),
    workers: int = 1,
) -> list[SweepResult]:
    """Mean error binned at target average measured SNRs.

    For each target, d0 is calibrated against the template's d1 so the mean
    measured SNR lands on the target, then a full-trial point is run there.
    Rows carry the target as the sweep value and the achieved average in
    ``mean_snr_db``.
    """
    results = []
    for target in targets:
        d0 = calibrate_d0_for_mean_snr(scenario_template, float(target))
        scenario = replace(scenario_template, d0_km=d0)
        point = run_point(scenario, workers=workers)
        results.append(point.summarize("avg_snr_db", float(target)))
    return results


@dataclass(frozen=True)
class ConvergenceRow:
    """Trial-median estimate and bounds at one block count."""

    blocks: int
    median_d_hat_km: float
    median_lower_km: float
    median_upper_km: float


def convergence_curve(
    scenario_template: Scenario, block_counts, workers: int = 1
) -> tuple[list[SweepResult], list[ConvergenceRow]]:
    """Estimate/bound convergence versus the number of observed blocks.

    Returns the standard sweep rows plus the trial-median point estimate and
    bounds per block count (the medians are what the convergence plot and
    its acceptance checks use).
    """
    sweep_rows = []
    median_rows = []
    for i in block_counts:
        scenario = replace(scenario_template, blocks=int(i))
        point = run_point(scenario, workers=workers)
        sweep_rows.append(point.summarize("I", float(i)))
        median_rows.append(
            ConvergenceRow(
                blocks=int(i),
                median_d_hat_km=float(np.median(point.d_hat_km)),
                median_lower_km=float(np.median(point.lower_km)),
                median_upper_km=float(np.median(point.upper_km)),
            )
        )
    return sweep_rows, median_rows


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def emit_csv(results: list[SweepResult], path) -> None:
    """Write sweep results as UTF-8 CSV with round-trip-exact floats."""
    lines = [CSV_HEADER]
    for r in results:
        lines.append(
            ",".join(
                (
                    r.sweep_var,
                    _format_float(r.value),
                    _format_float(r.mean_epsilon),
                    _format_float(r.mean_snr_db),
                    _format_float(r.mean_d_hat_km),
                    _format_float(r.coverage),
                )
            )
        )
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
