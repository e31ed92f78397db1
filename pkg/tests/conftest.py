"""Shared fixtures and the acceptance-criterion reporting hook."""

import numpy as np
import pytest

from suspsim import (
    QcParams,
    FcParams,
    SimConfig,
    build_fc_system,
    build_qc_system,
    default_scenario,
    simulate_passive,
)

_criterion_lines: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    """Log one pass/fail line for an acceptance criterion, then assert."""
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    _criterion_lines[number] = line
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for n in sorted(_criterion_lines):
            terminalreporter.write_line("  " + _criterion_lines[n])


@pytest.fixture(scope="session")
def qc_params():
    return QcParams()


@pytest.fixture(scope="session")
def fc_params():
    return FcParams()


@pytest.fixture(scope="session")
def qc_scenario():
    return default_scenario("qc")


@pytest.fixture(scope="session")
def fc_scenario():
    return default_scenario("fc")


@pytest.fixture(scope="session")
def sim_cfg():
    return SimConfig()


@pytest.fixture(scope="session")
def qc_passive(qc_params, qc_scenario, sim_cfg):
    system = build_qc_system(qc_params, active=False)
    return simulate_passive(system, qc_scenario, sim_cfg)


@pytest.fixture(scope="session")
def fc_passive(fc_params, fc_scenario, sim_cfg):
    system = build_fc_system(fc_params, active=False)
    return simulate_passive(system, fc_scenario, sim_cfg)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def synthetic_qc_trajectory(rng, n=400, dt=1e-3, with_forces=True):
    """Random but well-formed quarter-car trajectory for oracle checks."""
    from suspsim.sim import Trajectory

    system = build_qc_system(QcParams(), active=with_forces)
    states = 0.2 * rng.standard_normal((n, 5))
    outputs = states @ system.C.T
    forces = 500.0 * rng.standard_normal((n, 1)) if with_forces \
        else np.zeros((n, 0))
    return Trajectory(
        times=np.arange(n) * dt,
        states=states,
        outputs=outputs,
        forces=forces,
        accel=5.0 * rng.standard_normal(n),
        jerk=30.0 * rng.standard_normal(n),
        travels=outputs[:, [5]],
        state_labels=system.state_labels,
        output_labels=system.output_labels,
        force_labels=("f_a",) if with_forces else (),
        travel_labels=("travel",),
        dt=dt,
    )


def synthetic_fc_trajectory(rng, n=400, dt=1e-3, with_forces=True):
    """Random but well-formed full-car trajectory for oracle checks."""
    from suspsim.sim import Trajectory

    system = build_fc_system(FcParams(), active=with_forces)
    states = 0.05 * rng.standard_normal((n, 18))
    outputs = states @ system.C.T
    forces = 800.0 * rng.standard_normal((n, 4)) if with_forces \
        else np.zeros((n, 0))
    travel_cols = [system.output_labels.index(f"travel_{c}")
                   for c in ("fl", "fr", "rl", "rr")]
    return Trajectory(
        times=np.arange(n) * dt,
        states=states,
        outputs=outputs,
        forces=forces,
        accel=2.0 * rng.standard_normal(n),
        jerk=15.0 * rng.standard_normal(n),
        travels=outputs[:, travel_cols],
        state_labels=system.state_labels,
        output_labels=system.output_labels,
        force_labels=("f_fl", "f_fr", "f_rl", "f_rr") if with_forces else (),
        travel_labels=("travel_fl", "travel_fr", "travel_rl", "travel_rr"),
        dt=dt,
    )
