"""Discrete PID controllers commanding actuator forces.

Each actuator gets its own PID acting on the negated suspension travel
of its corner (setpoint zero), so positive travel commands a restoring
force on the body.  The integral term uses the trapezoid rule and the
derivative a backward difference; the first step uses a rectangle
integral and zero derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class PidGains:
    """PID gains plus an optional anti-windup clamp on the integral
    accumulator (|integral| <= integral_limit when set)."""

    kp: float
    ki: float
    kd: float
    integral_limit: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("kp", "ki", "kd"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"PID gain {name} must be finite and >= 0, got {v!r}")
        if self.integral_limit is not None and self.integral_limit <= 0.0:
            raise ValueError("integral_limit must be > 0 when set")


@dataclass
class PidState:
    integral_accum: float = 0.0
    prev_error: float = 0.0
    initialized: bool = False

    def reset(self) -> None:
        self.integral_accum = 0.0
        self.prev_error = 0.0
        self.initialized = False


def pid_step(gains: PidGains, state: PidState, error: float, dt: float) -> tuple[float, PidState]:
    """One controller update; returns (force, next state)."""
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if not math.isfinite(error):
        raise ValueError(f"non-finite error input: {error!r}")
    if state.initialized:
        integral = state.integral_accum + 0.5 * (error + state.prev_error) * dt
        derivative = (error - state.prev_error) / dt
    else:
        integral = error * dt
        derivative = 0.0
    if gains.integral_limit is not None:
        lim = gains.integral_limit
        integral = min(max(integral, -lim), lim)
    u = gains.kp * error + gains.ki * integral + gains.kd * derivative
    return u, PidState(integral_accum=integral, prev_error=error, initialized=True)


class PidBank:
    """A set of independent PID channels, one per actuator.

    Channel order matches the system's force-input columns.  Calling the
    bank with the per-channel errors advances every channel one step and
    returns the force vector, so a bank doubles as the generic
    controller callable used by the simulator.
    """

    def __init__(self, channels: Sequence[PidGains]):
        self.channels: tuple[PidGains, ...] = tuple(channels)
        self.states: list[PidState] = [PidState() for _ in self.channels]

    @property
    def n_channels(self) -> int:
        return len(self.channels)

    def reset(self) -> None:
        for s in self.states:
            s.reset()

    def gain_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        kp = np.array([g.kp for g in self.channels])
        ki = np.array([g.ki for g in self.channels])
        kd = np.array([g.kd for g in self.channels])
        ilim = np.array([np.inf if g.integral_limit is None else g.integral_limit
                         for g in self.channels])
        return kp, ki, kd, ilim

    def step(self, errors: Sequence[float], dt: float) -> np.ndarray:
        if len(errors) != self.n_channels:
            raise ValueError(f"expected {self.n_channels} errors, got {len(errors)}")
        forces = np.zeros(self.n_channels)
        for i, e in enumerate(errors):
            forces[i], self.states[i] = pid_step(self.channels[i], self.states[i], float(e), dt)
        return forces


def make_qc_controller(gains: PidGains) -> PidBank:
    """Single-channel controller for the quarter-car actuator."""
    return PidBank([gains])


def make_fc_controller(gains_per_corner: Sequence[PidGains]) -> PidBank:
    """Four-channel controller, one PID per corner in (fl, fr, rl, rr) order."""
    gains = tuple(gains_per_corner)
    if len(gains) != 4:
        raise ValueError(f"expected 4 gain triples, got {len(gains)}")
    return PidBank(gains)
