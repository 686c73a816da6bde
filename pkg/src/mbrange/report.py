"""Render sweep results to figure files alongside the CSV output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import ConvergenceRow, SweepResult

plt.rcParams.update(
    {
        "figure.figsize": (6.4, 4.2),
        "figure.dpi": 150,
        "savefig.dpi": 150,
        "savefig.bbox": "tight",
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.linewidth": 1.8,
        "lines.markersize": 5,
    }
)


def _split_by_var(results: list[SweepResult]) -> dict[str, list[SweepResult]]:
    groups: dict[str, list[SweepResult]] = {}
    for r in results:
        groups.setdefault(r.sweep_var, []).append(r)
    return groups


def _plot_metric(ax, results, metric: str, log_y: bool) -> None:
    for var, rows in _split_by_var(results).items():
        xs = [r.value for r in rows]
        ys = [getattr(r, metric) for r in rows]
        ax.plot(xs, ys, marker="o", label=f"sweep over {var}")
    if log_y:
        ax.set_yscale("log")
    ax.legend()


def render_convergence(
    medians: list[ConvergenceRow], d0_true_km: float, path: Path
) -> None:
    """Estimate and bound medians versus block count, with the true distance."""
    fig, ax = plt.subplots()
    xs = [m.blocks for m in medians]
    ax.plot(xs, [m.median_d_hat_km for m in medians], marker="o", label="estimate")
    ax.plot(xs, [m.median_lower_km for m in medians], marker="v", ls="--", label="lower bound")
    ax.plot(xs, [m.median_upper_km for m in medians], marker="^", ls="--", label="upper bound")
    ax.axhline(d0_true_km, color="k", lw=1, label="true distance")
    ax.set_xscale("log")
    ax.set_xlabel("observed blocks I")
    ax.set_ylabel("distance (km), trial median")
    ax.legend()
    fig.savefig(path)
    plt.close(fig)


def render_sweep(
    results: list[SweepResult],
    path: Path,
    metric: str = "mean_epsilon",
    log_y: bool = True,
    xlabel: str | None = None,
) -> None:
    """Generic sweep plot of one result metric."""
    labels = {
        "mean_epsilon": "mean relative error",
        "mean_snr_db": "average measured SNR (dB)",
        "mean_d_hat_km": "mean estimated distance (km)",
        "coverage": "empirical bound coverage",
    }
    fig, ax = plt.subplots()
    _plot_metric(ax, results, metric, log_y=log_y)
    ax.set_xlabel(xlabel or "sweep value")
    ax.set_ylabel(labels.get(metric, metric))
    fig.savefig(path)
    plt.close(fig)


def render_snr_table(results: list[SweepResult], path: Path) -> None:
    """Error at the SNR-binned operating points."""
    fig, ax = plt.subplots()
    xs = [r.mean_snr_db for r in results]
    ys = [r.mean_epsilon for r in results]
    ax.plot(xs, ys, marker="s")
    ax.set_yscale("log")
    ax.set_xlabel("average measured SNR at the SBS (dB)")
    ax.set_ylabel("mean relative error")
    fig.savefig(path)
    plt.close(fig)


def render_figure(
    figure_id: str,
    results: list[SweepResult],
    medians: list[ConvergenceRow],
    d0_true_km: float,
    path,
) -> None:
    """Dispatch to the renderer matching a preset figure id."""
    path = Path(path)
    if figure_id == "3":
        render_convergence(medians, d0_true_km, path)
    elif figure_id == "4":
        render_sweep(results, path, metric="mean_epsilon", xlabel="I or J")
    elif figure_id == "5":
        render_sweep(
            results, path, metric="mean_snr_db", log_y=False, xlabel="d0 or d1 (km)"
        )
    elif figure_id == "6":
        render_sweep(results, path, metric="mean_epsilon", xlabel="d0 or d1 (km)")
    elif figure_id == "table1":
        render_snr_table(results, path)
    else:
        raise ValueError(f"unknown figure id {figure_id!r}")
