"""Command-line interface: estimate, sweep, figure, verify."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import analysis
from .harness import Scenario, emit_csv, run_trial, sweep
from .presets import FIGURE_IDS, base_scenario, run_preset

#: Template used by `sweep` when no scenario file is given.
DEFAULT_TEMPLATE = dict(d0_km=0.25, d1_km=0.1, blocks=200, subblocks=1)

_VERIFY_SIGMAS = (0.1, 2.0, 4.0, 8.0, 12.0)
_VERIFY_TOL = 1e-9


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    parser.add_argument(
        "--trials", type=int, default=None, help="override the Monte Carlo trial count"
    )
    parser.add_argument(
        "--ideal-measurement",
        action="store_true",
        help="SBS knows each subblock SNR exactly (no measurement noise)",
    )
    parser.add_argument(
        "--workers", type=int, default=1, help="parallel worker processes for trials"
    )


def _load_scenario(args, require_file: bool = False) -> Scenario:
    if args.scenario:
        scenario = Scenario.from_json(args.scenario)
    elif require_file:
        raise SystemExit("a --scenario file is required")
    else:
        scenario = Scenario(**DEFAULT_TEMPLATE)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    if args.ideal_measurement:
        overrides["pilot_count"] = None
    return replace(scenario, **overrides) if overrides else scenario


def _write_outputs(results, medians, figure_id, out, d0_true_km) -> None:
    out = Path(out)
    emit_csv(results, out)
    png = out.with_suffix(".png")
    # Import lazily: matplotlib is only needed on the report path.
    from .report import render_figure, render_sweep

    if figure_id is None:
        render_sweep(results, png)
    else:
        render_figure(figure_id, results, medians, d0_true_km, png)
    print(f"wrote {out} and {png}")


def _cmd_estimate(args) -> int:
    scenario = _load_scenario(args, require_file=True)
    estimate, epsilon, mean_snr = run_trial(scenario, args.trial)
    print(
        json.dumps(
            {
                "d_hat_km": estimate.d_hat_km,
                "lower_km": estimate.lower_km,
                "upper_km": estimate.upper_km,
                "coverage_probability": estimate.coverage_probability,
                "k_used": estimate.k_used,
                "epsilon": epsilon,
                "mean_measured_snr_db": mean_snr,
            },
            indent=2,
        )
    )
    return 0


def _cmd_sweep(args) -> int:
    scenario = _load_scenario(args)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise SystemExit("--values must list at least one value")
    results = sweep(scenario, args.var, values, workers=args.workers)
    if args.out:
        _write_outputs(results, [], None, args.out, scenario.d0_km)
    else:
        for r in results:
            print(
                f"{r.sweep_var}={r.value:g}: eps={r.mean_epsilon:.6g} "
                f"snr={r.mean_snr_db:.4f} dB d_hat={r.mean_d_hat_km:.6g} km "
                f"coverage={r.coverage:.4f}"
            )
    return 0


def _cmd_figure(args) -> int:
    results, medians = run_preset(
        args.id,
        seed=args.seed if args.seed is not None else 12345,
        trials=args.trials,
        ideal=args.ideal_measurement,
        workers=args.workers,
    )
    scenario = base_scenario(
        args.id,
        seed=args.seed if args.seed is not None else 12345,
        trials=args.trials,
        ideal=args.ideal_measurement,
    )
    out = args.out or f"figure_{args.id}.csv"
    _write_outputs(results, medians, args.id, out, scenario.d0_km)
    return 0


def _cmd_verify(args) -> int:
    worst = 0.0
    failed = False
    for sigma_s in _VERIFY_SIGMAS:
        residual = analysis.median_identity_residual(sigma_s)
        worst = max(worst, residual)
        ok = residual <= _VERIFY_TOL
        failed |= not ok
        print(
            f"[{'PASS' if ok else 'FAIL'}] median identity at sigma_s="
            f"{sigma_s:g} dB: residual {residual:.3e} (tol {_VERIFY_TOL:.0e})"
        )
    print(f"worst residual: {worst:.3e}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbrange",
        description=(
            "Estimate the distance between a macro base station and its user "
            "from overheard power-controlled downlink signals."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="one scenario -> one distance estimate")
    p_est.add_argument("--scenario", required=True, help="scenario JSON file")
    p_est.add_argument("--trial", type=int, default=0, help="trial index to run")
    _add_common(p_est)
    p_est.set_defaults(func=_cmd_estimate)

    p_sweep = sub.add_parser("sweep", help="sweep one scenario variable")
    p_sweep.add_argument("--var", required=True, help="I, J, d0, d1, M or sigma_s")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--scenario", help="scenario JSON file (default template otherwise)")
    p_sweep.add_argument("--out", help="CSV output path (figure written alongside)")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="run a preset experiment")
    p_fig.add_argument("--id", required=True, choices=FIGURE_IDS)
    p_fig.add_argument("--out", help="CSV output path (default figure_<id>.csv)")
    _add_common(p_fig)
    p_fig.set_defaults(func=_cmd_figure)

    p_verify = sub.add_parser("verify", help="run the analytic identity checks")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
