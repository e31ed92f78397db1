"""Passive and active vehicle suspension simulation and GA tuning."""

from .control import PidBank, PidGains, PidState, make_fc_controller, make_qc_controller, pid_step
from .ga import GaConfig, GaProblem, GaResult, crossover_scattered, mutate_gaussian, run_ga, select_parents
from .metrics import MetricsReport, RideFrequencies, jerk_series, ride_frequencies, rms_abs, settling_time, trajectory_report
from .objectives import ConstraintMargin, LqrWeights, PenaltyConfig, cb_cost, evaluate_fc_constraints, evaluate_qc_constraints, lqr_cost
from .road import Obstacle, RoadEvent, RoadScenario, default_scenario, obstacle_height, road_signal, sample_road
from .sim import DivergenceError, SimConfig, Trajectory, rk4_step, simulate_active, simulate_passive
from .tuning import fc_cb_problem, fc_lqr_problem, qc_cb_problem, qc_lqr_problem
from .vehicle_models import (
    ActuatorError,
    FcParams,
    ParameterError,
    QcParams,
    StateSpaceSystem,
    actuator_force_distribution,
    build_fc_system,
    build_qc_system,
)

__version__ = "0.1.0"
