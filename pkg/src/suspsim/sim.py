"""Fixed-step closed-loop integration of the suspension models.

The integrator is classical RK4.  Road velocities are evaluated at the
stage times (step start, midpoint, end) so the road path converges at
second order; actuator forces are held constant over each step and are
computed from the outputs one sample back, which keeps the feedback
loop free of algebraic coupling.  Road displacement states are reset to
their exact values after every step, so rectangular cleats excite the
model through the displacement itself even though their velocity signal
is zero almost everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numba import njit

from .control import PidBank
from .road import RoadScenario, RoadTable, sample_road
from .vehicle_models import StateSpaceSystem


class DivergenceError(RuntimeError):
    """Simulation produced a non-finite state."""

    def __init__(self, step: int):
        super().__init__(f"non-finite state at step {step}")
        self.step = step


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-3
    duration: float = 30.0
    record_stride: int = 1
    force_saturation: Optional[float] = None

    def __post_init__(self) -> None:
        if self.dt <= 0.0:
            raise ValueError("dt must be > 0")
        if self.duration < self.dt:
            raise ValueError("duration must be >= dt")
        if self.record_stride < 1:
            raise ValueError("record_stride must be >= 1")
        if self.force_saturation is not None and self.force_saturation < 0.0:
            raise ValueError("force_saturation must be >= 0")

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled record of one simulation."""

    times: np.ndarray
    states: np.ndarray       # (n_rec, n_states)
    outputs: np.ndarray      # (n_rec, n_outputs)
    forces: np.ndarray       # (n_rec, n_actuators); empty when passive
    accel: np.ndarray        # sprung vertical acceleration, m/s^2
    jerk: np.ndarray         # d(accel)/dt, m/s^3
    travels: np.ndarray      # (n_rec, n_corners) suspension travels, m
    state_labels: tuple[str, ...]
    output_labels: tuple[str, ...]
    force_labels: tuple[str, ...]
    travel_labels: tuple[str, ...]
    dt: float

    def __post_init__(self) -> None:
        n = len(self.times)
        for name in ("states", "outputs", "forces", "accel", "jerk", "travels"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} length mismatch")

    def state(self, label: str) -> np.ndarray:
        return self.states[:, self.state_labels.index(label)]

    def output(self, label: str) -> np.ndarray:
        return self.outputs[:, self.output_labels.index(label)]

    def to_csv(self, path) -> None:
        columns = [("time", self.times)]
        columns += [(lab, self.states[:, i]) for i, lab in enumerate(self.state_labels)]
        columns += [(lab, self.forces[:, i]) for i, lab in enumerate(self.force_labels)]
        columns += [("sprung_accel", self.accel), ("jerk", self.jerk)]
        columns += [(lab, self.travels[:, i]) for i, lab in enumerate(self.travel_labels)]
        header = ",".join(name for name, _ in columns)
        data = np.column_stack([col for _, col in columns])
        np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.10g")


def rk4_step(system: StateSpaceSystem, x: np.ndarray, u: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step of xdot = A x + B u with u held constant."""
    x = np.asarray(x, dtype=float)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if x.shape != (system.n_states,) or u.shape != (system.n_inputs,):
        raise ValueError("state/input dimensions do not match the system")
    if not np.all(np.isfinite(x)):
        raise DivergenceError(0)
    A, B = system.A, system.B
    bu = B @ u
    k1 = A @ x + bu
    k2 = A @ (x + 0.5 * dt * k1) + bu
    k3 = A @ (x + 0.5 * dt * k2) + bu
    k4 = A @ (x + dt * k3) + bu
    out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise DivergenceError(0)
    return out


@dataclass(frozen=True)
class _StepOperator:
    """Exact single-step maps of RK4 applied to the LTI model.

    x' = M x + N1 B_r u(t) + N2 B_r u(t+dt/2) + N4 B_r u(t+dt) + NF f
    where the force f is zero-order held over the step.
    """

    M: np.ndarray
    road_term_maps: tuple[np.ndarray, np.ndarray, np.ndarray]
    NF: np.ndarray

    @staticmethod
    def build(A: np.ndarray, B_road: np.ndarray, B_force: np.ndarray, dt: float) -> "_StepOperator":
        n = A.shape[0]
        I = np.eye(n)
        A2 = A @ A
        A3 = A2 @ A
        A4 = A3 @ A
        M = I + dt * A + (dt**2 / 2.0) * A2 + (dt**3 / 6.0) * A3 + (dt**4 / 24.0) * A4
        P1 = (dt / 6.0) * (I + dt * A + (dt**2 / 2.0) * A2 + (dt**3 / 4.0) * A3)
        P2 = (dt / 6.0) * (4.0 * I + 2.0 * dt * A + (dt**2 / 2.0) * A2)
        P4 = (dt / 6.0) * I
        N1, N2, N4 = P1 @ B_road, P2 @ B_road, P4 @ B_road
        NF = (P1 + P2 + P4) @ B_force
        return _StepOperator(M=M, road_term_maps=(N1, N2, N4), NF=NF)

    def road_term(self, table: RoadTable) -> np.ndarray:
        """Per-step road contribution, shape (n_steps, n_states)."""
        N1, N2, N4 = self.road_term_maps
        return table.vel[:-1] @ N1.T + table.vel_mid @ N2.T + table.vel[1:] @ N4.T


@njit(cache=True, nogil=True)
def _pid_loop(M, road_term, road_disp, road_state_idx, NF, E, kp, ki, kd, ilim, dt, sat, x0):
    n = road_term.shape[0]
    ns = M.shape[0]
    nc = E.shape[0]
    states = np.zeros((n + 1, ns))
    forces = np.zeros((n + 1, nc))
    states[0] = x0
    integ = np.zeros(nc)
    eprev = np.zeros(nc)
    for k in range(n + 1):
        src = states[k - 1] if k >= 1 else states[0]
        for c in range(nc):
            e = 0.0
            for j in range(ns):
                e += E[c, j] * src[j]
            if k == 0:
                integ[c] = e * dt
                d = 0.0
            else:
                integ[c] += 0.5 * (e + eprev[c]) * dt
                d = (e - eprev[c]) / dt
            if integ[c] > ilim[c]:
                integ[c] = ilim[c]
            elif integ[c] < -ilim[c]:
                integ[c] = -ilim[c]
            u = kp[c] * e + ki[c] * integ[c] + kd[c] * d
            if u > sat:
                u = sat
            elif u < -sat:
                u = -sat
            forces[k, c] = u
            eprev[c] = e
        if k == n:
            break
        x = states[k]
        for i in range(ns):
            s = road_term[k, i]
            for j in range(ns):
                s += M[i, j] * x[j]
            for c in range(nc):
                s += NF[i, c] * forces[k, c]
            states[k + 1, i] = s
        for r in range(road_state_idx.shape[0]):
            states[k + 1, road_state_idx[r]] = road_disp[k + 1, r]
        ok = True
        for i in range(ns):
            if not np.isfinite(states[k + 1, i]):
                ok = False
        if not ok:
            return states, forces, k
    return states, forces, -1


def _prepare(system: StateSpaceSystem, scenario: RoadScenario, cfg: SimConfig,
             x0: Optional[np.ndarray], road_table: Optional[RoadTable]):
    road_cols = system.road_input_indices()
    if len(road_cols) != len(scenario.wheels):
        raise ValueError(
            f"system has {len(road_cols)} road inputs but scenario has "
            f"{len(scenario.wheels)} wheels"
        )
    n = cfg.n_steps
    if road_table is None:
        road_table = sample_road(scenario, cfg.dt, n)
    elif road_table.disp.shape != (n + 1, len(road_cols)):
        raise ValueError("road_table shape does not match the configuration")
    x0 = np.zeros(system.n_states) if x0 is None else np.asarray(x0, dtype=float).copy()
    if x0.shape != (system.n_states,):
        raise ValueError("x0 dimension mismatch")
    force_cols = system.force_input_indices()
    op = _StepOperator.build(system.A, system.B[:, road_cols], system.B[:, force_cols], cfg.dt)
    road_term = op.road_term(road_table)
    ridx = np.array(system.road_state_indices(), dtype=np.int64)
    # exact road displacement carried by the road states, on top of any
    # initial offset supplied through x0
    road_disp = road_table.disp + x0[ridx]
    return op, road_table, road_term, ridx, road_disp, x0, force_cols


def _assemble(system: StateSpaceSystem, cfg: SimConfig, states: np.ndarray,
              forces: np.ndarray, road_table: RoadTable, force_cols: list[int]) -> Trajectory:
    from .metrics import jerk_series

    n = cfg.n_steps
    times = np.arange(n + 1) * cfg.dt
    arow = system.sprung_accel_row
    road_cols = system.road_input_indices()
    accel = states @ system.A[arow]
    accel += road_table.vel @ system.B[arow, road_cols]
    if force_cols:
        accel += forces @ system.B[arow, force_cols]
    jerk = jerk_series(accel, cfg.dt)
    travel_rows = system.travel_output_indices()
    travels = states @ system.C[travel_rows].T
    outputs = states @ system.C.T
    stride = cfg.record_stride
    sl = slice(None, None, stride)
    return Trajectory(
        times=times[sl],
        states=states[sl],
        outputs=outputs[sl],
        forces=forces[sl],
        accel=accel[sl],
        jerk=jerk[sl],
        travels=travels[sl],
        state_labels=system.state_labels,
        output_labels=system.output_labels,
        force_labels=tuple(system.input_labels[i] for i in force_cols),
        travel_labels=tuple(system.output_labels[i] for i in travel_rows),
        dt=cfg.dt * stride,
    )


def simulate_passive(system: StateSpaceSystem, scenario: RoadScenario,
                     cfg: SimConfig = SimConfig(), x0: Optional[np.ndarray] = None,
                     road_table: Optional[RoadTable] = None) -> Trajectory:
    """Open-loop simulation of a passively built system."""
    if system.force_input_indices():
        raise ValueError("simulate_passive requires a system built with active=False")
    op, road_table, road_term, ridx, road_disp, x0, force_cols = _prepare(
        system, scenario, cfg, x0, road_table)
    E = np.zeros((0, system.n_states))
    zeros = np.zeros(0)
    states, forces, bad = _pid_loop(
        op.M, road_term, road_disp, ridx, op.NF, E,
        zeros, zeros, zeros, zeros, cfg.dt, math.inf, x0)
    if bad >= 0:
        raise DivergenceError(bad)
    return _assemble(system, cfg, states, forces, road_table, force_cols)


def simulate_active(system: StateSpaceSystem, scenario: RoadScenario,
                    controller, cfg: SimConfig = SimConfig(),
                    x0: Optional[np.ndarray] = None,
                    road_table: Optional[RoadTable] = None) -> Trajectory:
    """Closed-loop simulation.

    ``controller`` is either a :class:`PidBank` (fast path) or any
    callable ``(outputs, dt) -> forces``.  Either way it acts on the
    outputs one sample back.  A PidBank is reset before the run.
    """
    op, road_table, road_term, ridx, road_disp, x0, force_cols = _prepare(
        system, scenario, cfg, x0, road_table)
    if not force_cols:
        raise ValueError("simulate_active requires a system built with active=True")
    sat = math.inf if cfg.force_saturation is None else cfg.force_saturation

    if isinstance(controller, PidBank):
        if controller.n_channels != len(force_cols):
            raise ValueError(
                f"controller has {controller.n_channels} channels but the system "
                f"has {len(force_cols)} actuators")
        controller.reset()
        travel_rows = system.travel_output_indices()
        E = -system.C[travel_rows]
        kp, ki, kd, ilim = controller.gain_arrays()
        states, forces, bad = _pid_loop(
            op.M, road_term, road_disp, ridx, op.NF, E, kp, ki, kd, ilim,
            cfg.dt, sat, x0)
        if bad >= 0:
            raise DivergenceError(bad)
        return _assemble(system, cfg, states, forces, road_table, force_cols)

    if not callable(controller):
        raise TypeError("controller must be a PidBank or a callable (outputs, dt) -> forces")
    n = cfg.n_steps
    nc = len(force_cols)
    states = np.zeros((n + 1, system.n_states))
    forces = np.zeros((n + 1, nc))
    states[0] = x0
    C = system.C
    for k in range(n + 1):
        y_prev = C @ states[max(k - 1, 0)]
        f = np.clip(np.asarray(controller(y_prev, cfg.dt), dtype=float), -sat, sat)
        if f.shape != (nc,):
            raise ValueError(f"controller returned shape {f.shape}, expected ({nc},)")
        forces[k] = f
        if k == n:
            break
        states[k + 1] = road_term[k] + op.M @ states[k] + op.NF @ f
        states[k + 1, ridx] = road_disp[k + 1]
        if not np.all(np.isfinite(states[k + 1])):
            raise DivergenceError(k)
    return _assemble(system, cfg, states, forces, road_table, force_cols)
