"""Command-line front end: simulate, optimize, and report subcommands.

Runs are driven by a JSON config file plus a few override flags. Every run
writes its artifacts (trajectory CSVs, road profile, SVG charts, a JSON
summary) into the output directory; ``report`` consolidates the summaries
of previous runs into one comparison table.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from .control import PidGains, make_fc_controller, make_qc_controller
from .ga import GaConfig, run_ga
from .metrics import MetricsReport, trajectory_report
from .objectives import evaluate_fc_constraints, evaluate_qc_constraints
from .road import (
    FC_WHEELS,
    Obstacle,
    QC_WHEELS,
    RoadEvent,
    RoadScenario,
    default_scenario,
    sample_road,
    scenario_to_csv,
)
from .sim import SimConfig, Trajectory, simulate_active, simulate_passive
from .svgplot import Series, write_chart
from .tuning import (
    fc_cb_problem,
    fc_lqr_problem,
    qc_cb_problem,
    qc_lqr_problem,
)
from .vehicle_models import FcParams, QcParams, build_fc_system, build_qc_system


class ConfigError(ValueError):
    """Bad or missing configuration value; message names the key."""


def _take(section: dict, key: str, default):
    if key in section:
        return section.pop(key)
    return default


def _dataclass_from(section: dict, cls, where: str):
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(section) - names
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")
    try:
        return cls(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {where} section: {exc}") from exc


def _scenario_from(section: dict, model: str) -> RoadScenario:
    """Build a road scenario from a config section, or the default one."""
    if not section:
        return default_scenario(model)
    wheels = QC_WHEELS if model == "qc" else FC_WHEELS
    speed = float(_take(section, "speed", 10.0))
    duration = float(_take(section, "duration", 30.0))
    raw_events = _take(section, "events", None)
    if section:
        raise ConfigError(f"unknown key(s) in road: {', '.join(sorted(section))}")
    if raw_events is None:
        base = default_scenario(model)
        return RoadScenario(speed, base.events, wheels, duration)
    events = []
    for i, ev in enumerate(raw_events):
        ev = dict(ev)
        kind = _take(ev, "kind", "cosine_bump")
        height = float(_take(ev, "height", 0.1))
        length = _take(ev, "length", None)
        dur = _take(ev, "event_duration", None)
        if length is None:
            length = speed * (float(dur) if dur is not None else 0.5)
        centers = _take(ev, "center_times", None)
        if centers is None:
            tc = _take(ev, "center_time", None)
            if tc is None:
                raise ConfigError(f"road.events[{i}] needs center_time or center_times")
            centers = {w: float(tc) for w in wheels}
        if ev:
            raise ConfigError(f"unknown key(s) in road.events[{i}]: "
                              f"{', '.join(sorted(ev))}")
        obstacle = Obstacle(kind=kind, height=height, length=float(length))
        events.append(RoadEvent(obstacle, {w: float(t) for w, t in centers.items()}))
    return RoadScenario(speed, tuple(events), wheels, duration)


def _gains_from(section: dict, model: str):
    """PID gains for fixed-gain simulation: one triple (qc) or four (fc)."""
    if model == "qc":
        return [PidGains(float(section.get("kp", 0.0)),
                         float(section.get("ki", 0.0)),
                         float(section.get("kd", 0.0)))]
    gains = []
    for corner in FC_WHEELS:
        sub = section.get(corner, section)
        gains.append(PidGains(float(sub.get("kp", 0.0)),
                              float(sub.get("ki", 0.0)),
                              float(sub.get("kd", 0.0))))
    return gains


@dataclasses.dataclass
class RunConfig:
    """Fully resolved run configuration."""

    model: str
    suspension: str
    objective: Optional[str]
    vehicle: object
    scenario: RoadScenario
    sim: SimConfig
    ga: GaConfig
    pid: list
    raw: dict

    @classmethod
    def load(cls, path: Optional[str], overrides: argparse.Namespace) -> "RunConfig":
        raw: dict = {}
        if path is not None:
            try:
                raw = json.loads(Path(path).read_text())
            except OSError as exc:
                raise ConfigError(f"cannot read config {path}: {exc}") from exc
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw, overrides)

    @classmethod
    def from_dict(cls, raw: dict, overrides: Optional[argparse.Namespace] = None
                  ) -> "RunConfig":
        data = json.loads(json.dumps(raw))  # deep copy, JSON types only
        model = data.pop("model", "qc")
        suspension = data.pop("suspension", "passive")
        objective = data.pop("objective", None)
        if overrides is not None:
            model = getattr(overrides, "model", None) or model
            objective = getattr(overrides, "objective", None) or objective
        if model not in ("qc", "fc"):
            raise ConfigError(f"model must be 'qc' or 'fc', got {model!r}")
        if suspension not in ("passive", "active"):
            raise ConfigError(f"suspension must be 'passive' or 'active', "
                              f"got {suspension!r}")
        if objective not in (None, "lqr", "cb"):
            raise ConfigError(f"objective must be 'lqr' or 'cb', got {objective!r}")
        params_cls = QcParams if model == "qc" else FcParams
        vehicle = _dataclass_from(data.pop("vehicle", {}), params_cls, "vehicle")
        scenario = _scenario_from(data.pop("road", {}), model)
        sim_section = data.pop("sim", {})
        sim_section.setdefault("duration", scenario.duration)
        sim = _dataclass_from(sim_section, SimConfig, "sim")
        ga_section = data.pop("ga", {})
        if overrides is not None and getattr(overrides, "seed", None) is not None:
            ga_section["seed"] = overrides.seed
        if overrides is not None and getattr(overrides, "threads", None) is not None:
            ga_section.setdefault("threads", overrides.threads)
        threads = ga_section.pop("threads", None)
        seed_given = "seed" in ga_section
        ga = _dataclass_from(ga_section, GaConfig, "ga")
        pid = _gains_from(data.pop("pid", {}), model)
        data.pop("out", None)
        if data:
            raise ConfigError(f"unknown top-level key(s): {', '.join(sorted(data))}")
        cfg = cls(model=model, suspension=suspension, objective=objective,
                  vehicle=vehicle, scenario=scenario, sim=sim, ga=ga, pid=pid,
                  raw=json.loads(json.dumps(raw)))
        cfg.threads = threads
        cfg.seed_given = seed_given
        return cfg

    threads: Optional[int] = None
    seed_given: bool = False


def _write_trajectory(out: Path, name: str, traj: Trajectory) -> Path:
    path = out / f"trajectory_{name}.csv"
    traj.to_csv(path)
    return path


def _chart_series(runs: dict[str, Trajectory], field: str, label: str):
    series = []
    for name, traj in runs.items():
        series.append(Series(traj.times, traj.output(field), f"{label} ({name})"))
    return series


def _emit_charts(out: Path, model: str, scenario: RoadScenario,
                 runs: dict[str, Trajectory], dt: float) -> list[str]:
    written = []
    first = next(iter(runs.values()))
    n = first.times.size
    table = sample_road(scenario, dt, n - 1)
    road_times = np.arange(table.disp.shape[0]) * dt
    road_series = [Series(road_times, table.disp[:, j], f"z_r ({w})")
                   for j, w in enumerate(scenario.wheels)]
    write_chart(out / "road_profile.svg", road_series,
                "Road profile", "time (s)", "height (m)")
    written.append("road_profile.svg")

    heave = "z_s" if model == "qc" else "z"
    unsprung = "z_u" if model == "qc" else "z_u_fl"
    travel = "travel" if model == "qc" else "travel_fl"
    charts = [
        ("sprung_displacement.svg", heave, "Sprung displacement", "z (m)"),
        ("unsprung_displacement.svg", unsprung, "Unsprung displacement", "z (m)"),
        ("suspension_travel.svg", travel, "Suspension travel", "travel (m)"),
    ]
    if model == "fc":
        charts += [("pitch_angle.svg", "theta", "Pitch angle", "angle (rad)"),
                   ("roll_angle.svg", "phi", "Roll angle", "angle (rad)")]
    for fname, field, title, ylabel in charts:
        write_chart(out / fname, _chart_series(runs, field, field),
                    title, "time (s)", ylabel)
        written.append(fname)
    return written


def _constraint_report(traj: Trajectory, vehicle, model: str) -> list[dict]:
    fn = evaluate_qc_constraints if model == "qc" else evaluate_fc_constraints
    return [{"id": m.id, "description": m.description, "threshold": m.threshold,
             "margin": m.margin, "satisfied": m.satisfied}
            for m in fn(traj, vehicle)]


def _simulate_runs(cfg: RunConfig) -> dict[str, Trajectory]:
    """Passive baseline always; active overlay when requested."""
    build = build_qc_system if cfg.model == "qc" else build_fc_system
    runs = {"passive": simulate_passive(build(cfg.vehicle, False),
                                        cfg.scenario, cfg.sim)}
    if cfg.suspension == "active":
        make = make_qc_controller if cfg.model == "qc" else make_fc_controller
        controller = make(cfg.pid[0]) if cfg.model == "qc" else make(cfg.pid)
        runs["active"] = simulate_active(build(cfg.vehicle, True),
                                         cfg.scenario, controller, cfg.sim)
    return runs


def _summary(cfg: RunConfig, out: Path, runs: dict[str, Trajectory],
             extra: dict, started: float, files: list[str]) -> dict:
    metrics = {name: trajectory_report(traj, cfg.scenario).to_dict()
               for name, traj in runs.items()}
    constraints = {name: _constraint_report(traj, cfg.vehicle, cfg.model)
                   for name, traj in runs.items()}
    summary = {
        "config": cfg.raw,
        "model": cfg.model,
        "metrics": metrics,
        "constraints": constraints,
        "files": sorted(files),
        "wall_clock_s": round(time.time() - started, 3),
    }
    summary.update(extra)
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return summary


def cmd_simulate(cfg: RunConfig, out: Path) -> int:
    started = time.time()
    runs = _simulate_runs(cfg)
    files = []
    for name, traj in runs.items():
        files.append(_write_trajectory(out, name, traj).name)
    scenario_to_csv(cfg.scenario, cfg.sim.dt, out / "road_profile.csv")
    files.append("road_profile.csv")
    files += _emit_charts(out, cfg.model, cfg.scenario, runs, cfg.sim.dt)
    files.append("summary.json")
    _summary(cfg, out, runs, {"command": "simulate"}, started, files)
    return 0


def _problem_for(cfg: RunConfig):
    key = (cfg.model, cfg.objective)
    factories = {
        ("qc", "lqr"): lambda: qc_lqr_problem(cfg.vehicle, cfg.scenario, cfg.sim),
        ("qc", "cb"): lambda: qc_cb_problem(cfg.vehicle, cfg.scenario, cfg.sim),
        ("fc", "lqr"): lambda: fc_lqr_problem(cfg.vehicle, cfg.scenario, cfg.sim),
        ("fc", "cb"): lambda: fc_cb_problem(cfg.vehicle, cfg.scenario, cfg.sim),
    }
    if key not in factories:
        raise ConfigError("optimize requires objective 'lqr' or 'cb'")
    return factories[key]()


def cmd_optimize(cfg: RunConfig, out: Path) -> int:
    if not cfg.seed_given:
        raise ConfigError("optimize requires an explicit seed (--seed or ga.seed)")
    started = time.time()
    problem = _problem_for(cfg)
    result = run_ga(problem, cfg.ga, n_workers=cfg.threads or 1)

    history = np.column_stack([
        np.arange(result.best_history.size),
        result.best_history,
        result.mean_history,
        result.feasible_history,
    ])
    np.savetxt(out / "ga_history.csv", history, delimiter=",",
               header="generation,best,mean,feasible_count", comments="",
               fmt=["%d", "%.10g", "%.10g", "%d"])

    best = result.named_best(problem.decision_names)
    cfg_best = _apply_best(cfg, best)
    runs = _simulate_runs(cfg_best)
    files = ["ga_history.csv"]
    for name, traj in runs.items():
        files.append(_write_trajectory(out, name, traj).name)
    scenario_to_csv(cfg.scenario, cfg.sim.dt, out / "road_profile.csv")
    files.append("road_profile.csv")
    files += _emit_charts(out, cfg.model, cfg.scenario, runs, cfg.sim.dt)
    files.append("summary.json")
    extra = {
        "command": "optimize",
        "objective": cfg.objective,
        "seed": cfg.ga.seed,
        "best_vector": best,
        "best_cost": result.best_cost,
        "feasible": result.feasible,
    }
    _summary(cfg_best, out, runs, extra, started, files)
    return 0


def _apply_best(cfg: RunConfig, best: dict) -> RunConfig:
    """Fold an optimized vector back into a simulate-ready config."""
    vehicle = cfg.vehicle
    if cfg.model == "qc":
        if "ks" in best:
            vehicle = dataclasses.replace(vehicle, spring_stiffness=best["ks"],
                                          damper_coeff=best["cs"])
        pid = [PidGains(best["kp"], best["ki"], best["kd"])]
    else:
        if "ksf" in best:
            vehicle = dataclasses.replace(
                vehicle, front_spring=best["ksf"], rear_spring=best["ksr"],
                front_damper=best["csf"], rear_damper=best["csr"])
        pid = [PidGains(best[f"kp_{c}"], best[f"ki_{c}"], best[f"kd_{c}"])
               for c in FC_WHEELS]
    return dataclasses.replace(cfg, suspension="active", vehicle=vehicle, pid=pid)


_DELTA_FIELDS = ("settling_time", "peak_sprung_disp", "peak_travel",
                 "rms_sprung_accel")


def cmd_report(run_dir: Path, out: Path) -> int:
    summaries = sorted(run_dir.glob("**/summary.json"))
    if not summaries:
        raise ConfigError(f"no summary.json found under {run_dir}")
    rows = []
    for path in summaries:
        data = json.loads(path.read_text())
        metrics = data.get("metrics", {})
        passive = metrics.get("passive")
        active = metrics.get("active")
        ref = passive or active
        if ref is None:
            continue
        row = {"run": str(path.parent)}
        for field in _DELTA_FIELDS:
            row[f"passive_{field}"] = passive[field] if passive else float("nan")
            row[f"active_{field}"] = active[field] if active else float("nan")
            if passive and active and passive[field] != 0:
                pct = 100.0 * (passive[field] - active[field]) / passive[field]
                row[f"delta_{field}_pct"] = round(pct, 2)
            else:
                row[f"delta_{field}_pct"] = "n/a"
        rows.append(row)
    if not rows:
        raise ConfigError(f"no usable metrics under {run_dir}")
    header = list(rows[0].keys())
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(row[h]) for h in header))
    text = "\n".join(lines) + "\n"
    (out / "report.csv").write_text(text)
    sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suspsim",
        description="Vehicle suspension simulation and GA-based tuning")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--model", choices=["qc", "fc"])
        p.add_argument("--seed", type=int, help="GA random seed")
        p.add_argument("--objective", choices=["lqr", "cb"])
        p.add_argument("--threads", type=int, help="parallel fitness evaluations")

    common(sub.add_parser("simulate", help="run fixed-gain or passive simulation"))
    common(sub.add_parser("optimize", help="run the GA and re-simulate the best"))
    rep = sub.add_parser("report", help="tabulate metrics from previous runs")
    rep.add_argument("run_dir", help="directory containing run summaries")
    rep.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "report":
            return cmd_report(Path(args.run_dir), out)
        cfg = RunConfig.load(args.config, args)
        if args.command == "simulate":
            return cmd_simulate(cfg, out)
        return cmd_optimize(cfg, out)
    except (ConfigError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
