"""Scenario handling, sweeps, aggregation and CSV emission."""

import numpy as np
import pytest
from dataclasses import replace

from mbrange import (
    CSV_HEADER,
    InvalidSweepVariable,
    Scenario,
    ScenarioError,
    calibrate_d0_for_mean_snr,
    convergence_curve,
    emit_csv,
    run_point,
    run_trial,
    sweep,
    table1_experiment,
)

BASE = Scenario(d0_km=0.25, d1_km=0.1, blocks=40, subblocks=2, trials=50, seed=51)


class TestScenario:
    def test_rejects_distances_below_floor(self):
        with pytest.raises(ScenarioError):
            Scenario(d0_km=0.01, d1_km=0.1, blocks=1, subblocks=1)

    def test_rejects_bad_counts(self):
        with pytest.raises(ScenarioError):
            Scenario(d0_km=0.25, d1_km=0.1, blocks=0, subblocks=1)
        with pytest.raises(ScenarioError):
            Scenario(d0_km=0.25, d1_km=0.1, blocks=1, subblocks=1, trials=0)
        with pytest.raises(ScenarioError):
            Scenario(d0_km=0.25, d1_km=0.1, blocks=1, subblocks=1, pilot_count=0)

    def test_rejects_unknown_averaging(self):
        with pytest.raises(ScenarioError):
            Scenario(d0_km=0.25, d1_km=0.1, blocks=1, subblocks=1, snr_averaging="x")

    def test_json_roundtrip(self, tmp_path):
        path = tmp_path / "scenario.json"
        BASE.to_json(path)
        assert Scenario.from_json(path) == BASE

    def test_unknown_keys_are_errors(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text('{"d0_km": 0.25, "d1_km": 0.1, "blocks": 2, "subblocks": 1, "typo": 3}')
        with pytest.raises(ScenarioError, match="typo"):
            Scenario.from_json(path)

    def test_ideal_spelling_accepted(self):
        scn = Scenario.from_dict(
            {"d0_km": 0.25, "d1_km": 0.1, "blocks": 2, "subblocks": 1, "pilot_count": "ideal"}
        )
        assert scn.pilot_count is None

    def test_missing_required_key(self):
        with pytest.raises(ScenarioError):
            Scenario.from_dict({"d0_km": 0.25})

    def test_fingerprint_stable(self):
        assert BASE.fingerprint() == BASE.fingerprint()
        assert BASE.fingerprint() != replace(BASE, seed=99).fingerprint()


class TestRunTrial:
    def test_bit_identical_repeats(self):
        first = run_trial(BASE, 7)
        second = run_trial(BASE, 7)
        assert first == second

    def test_distinct_trials_differ(self):
        assert run_trial(BASE, 0) != run_trial(BASE, 1)

    def test_epsilon_matches_definition(self):
        estimate, epsilon, _ = run_trial(BASE, 3)
        assert epsilon == abs(estimate.d_hat_km - BASE.d0_km) / BASE.d0_km

    def test_equal_distances_ideal_small_error(self):
        scn = Scenario(
            d0_km=0.1,
            d1_km=0.1,
            blocks=2000,
            subblocks=1,
            pilot_count=None,
            trials=1,
            seed=52,
        )
        _, epsilon, _ = run_trial(scn, 0)
        assert epsilon < 0.05


class TestRunPoint:
    def test_worker_counts_agree(self):
        inline = run_point(BASE, workers=1)
        pooled = run_point(BASE, workers=2)
        assert np.array_equal(inline.epsilon, pooled.epsilon)
        assert np.array_equal(inline.mean_snr_db, pooled.mean_snr_db)
        assert np.array_equal(inline.covered, pooled.covered)

    def test_summary_fields(self):
        point = run_point(BASE)
        summary = point.summarize("I", 40)
        assert summary.mean_epsilon >= 0
        assert 0.0 <= summary.coverage <= 1.0
        assert summary.mean_d_hat_km > 0


class TestSweep:
    def test_rejects_unknown_variable(self):
        with pytest.raises(InvalidSweepVariable):
            sweep(BASE, "bogus", [1, 2])

    @pytest.mark.parametrize(
        "var,values",
        [
            ("I", [10, 20]),
            ("J", [1, 2]),
            ("d0", [0.2, 0.3]),
            ("d1", [0.1, 0.2]),
            ("M", [10, 50]),
            ("sigma_s", [2.0, 6.0]),
        ],
    )
    def test_all_variables_run(self, var, values):
        scn = replace(BASE, trials=10)
        results = sweep(scn, var, values)
        assert [r.value for r in results] == [float(v) for v in values]
        assert all(r.sweep_var == var for r in results)

    def test_error_trend_with_blocks(self):
        scn = replace(BASE, subblocks=1, trials=400)
        results = sweep(scn, "I", [10, 50, 200])
        eps = [r.mean_epsilon for r in results]
        assert eps[0] > eps[1] > eps[2]

    def test_snr_trends_with_distances(self):
        # 10^4 trials: mean measured SNR grows with d0 and falls with d1
        scn = replace(BASE, blocks=50, subblocks=2, trials=10_000)
        up = sweep(scn, "d0", [0.1, 0.25, 0.5])
        snr_up = [r.mean_snr_db for r in up]
        assert snr_up[0] < snr_up[1] < snr_up[2]
        down = sweep(scn, "d1", [0.05, 0.15, 0.45])
        snr_down = [r.mean_snr_db for r in down]
        assert snr_down[0] > snr_down[1] > snr_down[2]

    def test_error_trend_with_d0_noisy(self):
        # single-shot measurement, linear averaging: error falls as d0 grows
        scn = replace(
            BASE, blocks=50, subblocks=2, pilot_count=1, trials=10_000,
            snr_averaging="linear",
        )
        results = sweep(scn, "d0", [0.05, 0.1, 0.25])
        eps = [r.mean_epsilon for r in results]
        assert eps[-1] < eps[0]


class TestCalibration:
    def test_hits_target_mean_snr(self):
        template = Scenario(
            d0_km=0.25,
            d1_km=0.1,
            blocks=80,
            subblocks=2,
            pilot_count=100,
            trials=300,
            seed=53,
        )
        d0 = calibrate_d0_for_mean_snr(template, 18.0, probe_trials=120)
        point = run_point(replace(template, d0_km=d0))
        assert float(np.mean(point.mean_snr_db)) == pytest.approx(18.0, abs=0.5)


class TestTable1:
    def test_rows_carry_targets_and_achieved_snr(self):
        template = Scenario(
            d0_km=0.25,
            d1_km=0.25,
            blocks=60,
            subblocks=2,
            pilot_count=1,
            trials=200,
            seed=54,
            snr_averaging="linear",
        )
        rows = table1_experiment(template, targets=(5.0, 15.0))
        assert [r.value for r in rows] == [5.0, 15.0]
        for row in rows:
            assert row.sweep_var == "avg_snr_db"
            assert row.mean_snr_db == pytest.approx(row.value, abs=1.5)


class TestConvergenceCurve:
    def test_medians_tighten(self):
        scn = Scenario(
            d0_km=0.25,
            d1_km=0.1,
            blocks=10,
            subblocks=1,
            pilot_count=None,
            trials=300,
            seed=55,
        )
        rows, medians = convergence_curve(scn, (10, 100, 1000))
        widths = [m.median_upper_km - m.median_lower_km for m in medians]
        assert widths[0] > widths[1] > widths[2]
        assert [r.sweep_var for r in rows] == ["I", "I", "I"]


class TestCsv:
    def test_header_only_for_empty_results(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv([], path)
        assert path.read_text(encoding="utf-8") == CSV_HEADER + "\n"

    def test_rerun_is_byte_identical(self, tmp_path):
        scn = replace(BASE, trials=20)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(sweep(scn, "I", [10, 20]), a)
        emit_csv(sweep(scn, "I", [10, 20]), b)
        assert a.read_bytes() == b.read_bytes()

    def test_values_roundtrip_exactly(self, tmp_path):
        scn = replace(BASE, trials=20)
        results = sweep(scn, "I", [10, 20])
        path = tmp_path / "roundtrip.csv"
        emit_csv(results, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == CSV_HEADER
        for line, result in zip(lines[1:], results):
            fields = line.split(",")
            assert fields[0] == result.sweep_var
            assert float(fields[1]) == result.value
            assert float(fields[2]) == result.mean_epsilon
            assert float(fields[3]) == result.mean_snr_db
            assert float(fields[4]) == result.mean_d_hat_km
            assert float(fields[5]) == result.coverage

    def test_unwritable_path_raises_io_failure(self, tmp_path):
        from mbrange import IoFailure

        with pytest.raises(IoFailure):
            emit_csv([], tmp_path)  # a directory is not a writable file

    def test_golden_file(self, tmp_path):
        # frozen output of a tiny sweep; guards the schema and formatting
        scn = Scenario(
            d0_km=0.25, d1_km=0.1, blocks=5, subblocks=1, trials=4, seed=99
        )
        path = tmp_path / "golden.csv"
        emit_csv(sweep(scn, "I", [3, 5]), path)
        assert path.read_text(encoding="utf-8") == GOLDEN_CSV


GOLDEN_CSV = (
    "sweep_var,value,mean_epsilon,mean_snr_db,mean_d_hat_km,coverage\n"
    "I,3,0.27135892357830527,26.858884441102383,0.2788331610813537,1\n"
    "I,5,0.31025446105290588,26.993994628393718,0.2780825189448462,0.5\n"
)
