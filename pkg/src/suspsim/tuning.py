"""GA problem definitions: which genes are tuned, their bounds, and the
fitness closures that simulate a candidate and score it."""

from __future__ import annotations

from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from .control import PidGains, make_fc_controller, make_qc_controller
from .ga import GaProblem
from .metrics import rms_abs
from .objectives import (
    LqrWeights,
    PenaltyConfig,
    cb_cost,
    default_fc_lqr_weights,
    default_qc_lqr_weights,
    evaluate_fc_constraints,
    evaluate_qc_constraints,
)
from .road import RoadScenario, default_scenario, sample_road
from .sim import SimConfig, simulate_active
from .vehicle_models import FcParams, QcParams, build_fc_system, build_qc_system

SPRING_BOUNDS = (15000.0, 80000.0)
DAMPER_BOUNDS = (400.0, 5500.0)
GAIN_BOUNDS = (1.0, 150000.0)

FC_CORNERS = ("fl", "fr", "rl", "rr")


def _bounds(kinds: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    table = {"spring": SPRING_BOUNDS, "damper": DAMPER_BOUNDS, "gain": GAIN_BOUNDS}
    lo = np.array([table[k][0] for k in kinds])
    hi = np.array([table[k][1] for k in kinds])
    return lo, hi


def _gains_from(vec: Sequence[float]) -> PidGains:
    return PidGains(kp=float(vec[0]), ki=float(vec[1]), kd=float(vec[2]))


def qc_lqr_problem(params: Optional[QcParams] = None,
                   scenario: Optional[RoadScenario] = None,
                   sim_cfg: SimConfig = SimConfig(),
                   weights: Optional[LqrWeights] = None) -> GaProblem:
    """Tune the quarter-car PID gains against the quadratic cost."""
    from .objectives import lqr_cost

    params = params or QcParams()
    scenario = scenario or default_scenario("qc")
    weights = weights or default_qc_lqr_weights()
    system = build_qc_system(params, active=True)
    table = sample_road(scenario, sim_cfg.dt, sim_cfg.n_steps)

    def fitness(vec):
        controller = make_qc_controller(_gains_from(vec))
        traj = simulate_active(system, scenario, controller, sim_cfg, road_table=table)
        return lqr_cost(traj, weights)

    lo, hi = _bounds(["gain"] * 3)
    return GaProblem(decision_names=("kp", "ki", "kd"), lower=lo, upper=hi,
                     fitness=fitness)


def qc_cb_problem(params: Optional[QcParams] = None,
                  scenario: Optional[RoadScenario] = None,
                  sim_cfg: SimConfig = SimConfig(),
                  penalty: PenaltyConfig = PenaltyConfig()) -> GaProblem:
    """Tune the quarter-car spring, damper and PID gains against the
    comfort cost with penalty-weighted constraints."""
    base = params or QcParams()
    scenario = scenario or default_scenario("qc")
    table = sample_road(scenario, sim_cfg.dt, sim_cfg.n_steps)

    def candidate(vec):
        cand = replace(base, spring_stiffness=float(vec[0]), damper_coeff=float(vec[1]))
        system = build_qc_system(cand, active=True)
        controller = make_qc_controller(_gains_from(vec[2:]))
        traj = simulate_active(system, scenario, controller, sim_cfg, road_table=table)
        return cand, traj

    def fitness(vec):
        cand, traj = candidate(vec)
        margins = evaluate_qc_constraints(traj, cand)
        cost = cb_cost(rms_abs(traj.accel, traj.dt), margins, penalty)
        return cost, all(m.margin <= 0.0 for m in margins)

    def margins_fn(vec):
        cand, traj = candidate(vec)
        return evaluate_qc_constraints(traj, cand)

    lo, hi = _bounds(["spring", "damper", "gain", "gain", "gain"])
    return GaProblem(decision_names=("ks", "cs", "kp", "ki", "kd"),
                     lower=lo, upper=hi, fitness=fitness, margins_fn=margins_fn)


def _fc_gain_names() -> tuple[str, ...]:
    return tuple(f"{g}_{c}" for c in FC_CORNERS for g in ("kp", "ki", "kd"))


def _fc_controller(vec: Sequence[float]):
    return make_fc_controller([_gains_from(vec[3 * i:3 * i + 3]) for i in range(4)])


def fc_lqr_problem(params: Optional[FcParams] = None,
                   scenario: Optional[RoadScenario] = None,
                   sim_cfg: SimConfig = SimConfig(),
                   weights: Optional[LqrWeights] = None) -> GaProblem:
    """Tune the twelve full-car PID gains against the quadratic cost."""
    from .objectives import lqr_cost

    params = params or FcParams()
    scenario = scenario or default_scenario("fc")
    weights = weights or default_fc_lqr_weights()
    system = build_fc_system(params, active=True)
    table = sample_road(scenario, sim_cfg.dt, sim_cfg.n_steps)

    def fitness(vec):
        traj = simulate_active(system, scenario, _fc_controller(vec), sim_cfg,
                               road_table=table)
        return lqr_cost(traj, weights)

    lo, hi = _bounds(["gain"] * 12)
    return GaProblem(decision_names=_fc_gain_names(), lower=lo, upper=hi,
                     fitness=fitness)


def fc_cb_problem(params: Optional[FcParams] = None,
                  scenario: Optional[RoadScenario] = None,
                  sim_cfg: SimConfig = SimConfig(),
                  penalty: PenaltyConfig = PenaltyConfig()) -> GaProblem:
    """Tune the full-car springs, dampers and twelve PID gains against the
    comfort cost with penalty-weighted constraints."""
    base = params or FcParams()
    scenario = scenario or default_scenario("fc")
    table = sample_road(scenario, sim_cfg.dt, sim_cfg.n_steps)

    def candidate(vec):
        cand = replace(base, front_spring=float(vec[0]), rear_spring=float(vec[1]),
                       front_damper=float(vec[2]), rear_damper=float(vec[3]))
        system = build_fc_system(cand, active=True)
        traj = simulate_active(system, scenario, _fc_controller(vec[4:]), sim_cfg,
                               road_table=table)
        return cand, traj

    def fitness(vec):
        cand, traj = candidate(vec)
        margins = evaluate_fc_constraints(traj, cand)
        cost = cb_cost(rms_abs(traj.accel, traj.dt), margins, penalty)
        return cost, all(m.margin <= 0.0 for m in margins)

    def margins_fn(vec):
        cand, traj = candidate(vec)
        return evaluate_fc_constraints(traj, cand)

    names = ("ksf", "ksr", "csf", "csr") + _fc_gain_names()
    lo, hi = _bounds(["spring", "spring", "damper", "damper"] + ["gain"] * 12)
    return GaProblem(decision_names=names, lower=lo, upper=hi,
                     fitness=fitness, margins_fn=margins_fn)
