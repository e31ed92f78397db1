"""Deterministic road excitation signals built from parametric obstacles.

Obstacles are defined spatially (height profile over the longitudinal
offset from the obstacle centre); a scenario converts them to time
signals through the vehicle speed and per-wheel event centre times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

QC_WHEELS = ("single",)
FC_WHEELS = ("fl", "fr", "rl", "rr")

RECTANGULAR_CLEAT = "rectangular_cleat"
COSINE_BUMP = "cosine_bump"


class RoadError(ValueError):
    """Unknown wheel id or malformed scenario."""


@dataclass(frozen=True)
class Obstacle:
    """A parametric road obstacle of height H, length L and width B.

    The width is informational: wheels that hit an obstacle are assumed
    to straddle it fully.
    """

    kind: str
    height: float
    length: float
    width: float = 2.0

    def __post_init__(self) -> None:
        if self.kind not in (RECTANGULAR_CLEAT, COSINE_BUMP):
            raise RoadError(f"unknown obstacle kind {self.kind!r}")
        if self.height < 0.0:
            raise RoadError("obstacle height must be >= 0")
        if self.length <= 0.0 or self.width <= 0.0:
            raise RoadError("obstacle length and width must be > 0")


def obstacle_height(obstacle: Obstacle, x):
    """Height of the obstacle at longitudinal offset ``x`` from its centre."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < obstacle.length / 2.0
    if obstacle.kind == RECTANGULAR_CLEAT:
        z = np.where(inside, obstacle.height, 0.0)
    else:
        z = np.where(
            inside,
            0.5 * obstacle.height * (1.0 + np.cos(2.0 * np.pi * x / obstacle.length)),
            0.0,
        )
    return z if z.ndim else float(z)


def obstacle_slope(obstacle: Obstacle, x):
    """Spatial derivative dz/dx.

    The cleat's edge discontinuities are represented as slope 0; the
    displacement step is applied directly through the road state.
    """
    x = np.asarray(x, dtype=float)
    if obstacle.kind == RECTANGULAR_CLEAT:
        z = np.zeros_like(x)
    else:
        inside = np.abs(x) < obstacle.length / 2.0
        z = np.where(
            inside,
            -(np.pi * obstacle.height / obstacle.length)
            * np.sin(2.0 * np.pi * x / obstacle.length),
            0.0,
        )
    return z if z.ndim else float(z)


@dataclass(frozen=True)
class RoadEvent:
    """One obstacle hit, with a centre time per wheel."""

    obstacle: Obstacle
    center_times: Mapping[str, float]

    def duration(self, speed: float) -> float:
        return self.obstacle.length / speed


@dataclass(frozen=True)
class RoadScenario:
    """Per-wheel road excitation over a fixed horizon."""

    speed: float = 10.0                      # m/s, also sets obstacle duration
    events: tuple[RoadEvent, ...] = ()
    wheels: tuple[str, ...] = QC_WHEELS
    duration: float = 30.0                   # s

    def __post_init__(self) -> None:
        if self.speed <= 0.0:
            raise RoadError("scenario speed must be > 0")
        if self.duration <= 0.0:
            raise RoadError("scenario duration must be > 0")
        for event in self.events:
            for wheel, tc in event.center_times.items():
                if wheel not in self.wheels:
                    raise RoadError(f"event names unknown wheel {wheel!r}")
                if not 0.0 <= tc <= self.duration:
                    raise RoadError(f"event centre {tc} outside [0, {self.duration}]")

    def last_event_center(self) -> float:
        centers = [tc for ev in self.events for tc in ev.center_times.values()]
        return max(centers) if centers else 0.0

    def last_event_end(self) -> float:
        ends = [
            tc + ev.duration(self.speed) / 2.0
            for ev in self.events
            for tc in ev.center_times.values()
        ]
        return max(ends) if ends else 0.0

    def shifted(self, delta: float) -> "RoadScenario":
        """Same scenario with all event centres moved by ``delta``."""
        events = tuple(
            RoadEvent(ev.obstacle, {w: tc + delta for w, tc in ev.center_times.items()})
            for ev in self.events
        )
        return RoadScenario(self.speed, events, self.wheels, self.duration)


def road_signal(scenario: RoadScenario, wheel: str, t):
    """Road displacement and velocity seen by ``wheel`` at time ``t``.

    Superposes all events for that wheel; the velocity is the analytic
    time derivative (slope times speed).  ``t`` may be a scalar or array.
    """
    if wheel not in scenario.wheels:
        raise RoadError(f"unknown wheel {wheel!r}; scenario has {scenario.wheels}")
    t = np.asarray(t, dtype=float)
    z = np.zeros_like(t)
    v = np.zeros_like(t)
    for event in scenario.events:
        tc = event.center_times.get(wheel)
        if tc is None:
            continue
        x = scenario.speed * (t - tc)
        z = z + obstacle_height(event.obstacle, x)
        v = v + obstacle_slope(event.obstacle, x) * scenario.speed
    if z.ndim:
        return z, v
    return float(z), float(v)


# Wheelbase of the stock full-car geometry (cg_to_front + cg_to_rear).
STOCK_WHEELBASE = 1.4 + 1.7


def default_scenario(model: str = "qc") -> RoadScenario:
    """Two 0.1 m cosine bumps of 0.5 s duration at 10 m/s.

    Quarter car: centres at 2 s and 12 s.  Full car: the right-side
    wheels lag the left by 0.5 s to induce roll, and the rear wheels lag
    the front by wheelbase/speed (0.31 s for the stock geometry).
    """
    speed = 10.0
    bump = Obstacle(COSINE_BUMP, height=0.1, length=0.5 * speed)
    if model == "qc":
        events = tuple(
            RoadEvent(bump, {"single": tc}) for tc in (2.0, 12.0)
        )
        return RoadScenario(speed=speed, events=events, wheels=QC_WHEELS, duration=30.0)
    if model == "fc":
        rear_delay = STOCK_WHEELBASE / speed
        right_delay = 0.5
        events = tuple(
            RoadEvent(
                bump,
                {
                    "fl": tc,
                    "fr": tc + right_delay,
                    "rl": tc + rear_delay,
                    "rr": tc + right_delay + rear_delay,
                },
            )
            for tc in (2.0, 12.0)
        )
        return RoadScenario(speed=speed, events=events, wheels=FC_WHEELS, duration=30.0)
    raise RoadError(f"unknown model {model!r}; expected 'qc' or 'fc'")


@dataclass(frozen=True)
class RoadTable:
    """Road signals pre-sampled for a fixed-step integration.

    ``disp`` and ``vel`` are sampled at the n+1 step boundaries,
    ``vel_mid`` at the n step midpoints; one column per wheel in
    scenario order.
    """

    disp: np.ndarray
    vel: np.ndarray
    vel_mid: np.ndarray


def sample_road(scenario: RoadScenario, dt: float, n_steps: int) -> RoadTable:
    t_edge = np.arange(n_steps + 1) * dt
    t_mid = (np.arange(n_steps) + 0.5) * dt
    nw = len(scenario.wheels)
    disp = np.zeros((n_steps + 1, nw))
    vel = np.zeros((n_steps + 1, nw))
    vel_mid = np.zeros((n_steps, nw))
    for j, wheel in enumerate(scenario.wheels):
        disp[:, j], vel[:, j] = road_signal(scenario, wheel, t_edge)
        _, vel_mid[:, j] = road_signal(scenario, wheel, t_mid)
    return RoadTable(disp=disp, vel=vel, vel_mid=vel_mid)


def scenario_to_csv(scenario: RoadScenario, dt: float, path) -> None:
    """Write (t, z_r per wheel) at spacing ``dt`` over the scenario horizon."""
    n = int(round(scenario.duration / dt))
    table = sample_road(scenario, dt, n)
    t = np.arange(n + 1) * dt
    header = "time," + ",".join(f"z_r_{w}" for w in scenario.wheels)
    data = np.column_stack([t, table.disp])
    np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.10g")
