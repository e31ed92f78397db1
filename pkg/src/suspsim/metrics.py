"""Ride-comfort and road-holding figures of merit."""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np

from .road import RoadScenario
from .sim import Trajectory


@dataclass(frozen=True)
class RideFrequencies:
    """Single-corner ride characteristics from the spring/tire stack.

    ``damped_freq`` is None when the corner is overdamped.
    """

    ride_rate: float       # N/m
    natural_freq: float    # Hz
    damping_ratio: float
    damped_freq: Optional[float]


def ride_frequencies(ks: float, kt: float, cs: float, ms: float) -> RideFrequencies:
    """Ride rate (series spring stack), natural/damped frequency, damping ratio."""
    for name, v in (("ks", ks), ("kt", kt), ("ms", ms)):
        if v <= 0.0:
            raise ValueError(f"{name} must be > 0, got {v}")
    if cs < 0.0:
        raise ValueError(f"cs must be >= 0, got {cs}")
    rr = ks * kt / (ks + kt)
    fn = math.sqrt(rr / ms) / (2.0 * math.pi)
    zeta = cs / math.sqrt(4.0 * ks * ms)
    fd = fn * math.sqrt(1.0 - zeta**2) if zeta < 1.0 else None
    return RideFrequencies(ride_rate=rr, natural_freq=fn, damping_ratio=zeta, damped_freq=fd)


def rms_abs(series: np.ndarray, dt: Optional[float] = None) -> float:
    """Root mean square of a uniformly sampled signal.

    The sample spacing does not enter the plain mean of squares; it is
    accepted for interface symmetry with the other horizon metrics.
    """
    series = np.asarray(series, dtype=float)
    if series.size == 0:
        raise ValueError("rms_abs needs a nonempty series")
    return float(np.sqrt(np.mean(np.square(series))))


def jerk_series(accel: np.ndarray, dt: float) -> np.ndarray:
    """Time derivative of the acceleration: central differences inside,
    one-sided at the ends."""
    accel = np.asarray(accel, dtype=float)
    if accel.size < 3:
        raise ValueError("jerk_series needs at least 3 samples")
    return np.gradient(accel, dt)


def settling_time(series: np.ndarray, times: np.ndarray, scenario: RoadScenario,
                  band: float = 0.002) -> float:
    """Time after the last event centre for the signal to stay inside ±band.

    Returns 0.0 for a signal already inside the band, and +inf when the
    signal still exceeds the band at the final sample.
    """
    if band <= 0.0:
        raise ValueError("band must be > 0")
    series = np.asarray(series, dtype=float)
    times = np.asarray(times, dtype=float)
    outside = np.abs(series) > band
    if outside[-1]:
        return math.inf
    if not outside.any():
        return 0.0
    last_out = np.max(np.nonzero(outside))
    settled_at = times[last_out + 1]
    return max(0.0, settled_at - scenario.last_event_center())


@dataclass(frozen=True)
class MetricsReport:
    """Scalar summary of one trajectory."""

    rms_sprung_accel: float
    peak_sprung_accel: float
    peak_sprung_disp: float
    peak_travel: float
    peak_unsprung_disp: float
    peak_jerk: float
    peak_force: float
    settling_time: float

    def to_dict(self) -> dict:
        return asdict(self)


def trajectory_report(traj: Trajectory, scenario: RoadScenario,
                      band: float = 0.002) -> MetricsReport:
    """Compute the standard comparison metrics for one run.

    The sprung displacement is the heave state (z_s for the quarter car,
    z for the full car); peaks are maxima over the whole horizon.
    """
    heave_label = "z_s" if "z_s" in traj.state_labels else "z"
    heave = traj.state(heave_label)
    unsprung_cols = [i for i, lab in enumerate(traj.state_labels) if lab.startswith("z_u")]
    peak_unsprung = float(np.max(np.abs(traj.states[:, unsprung_cols])))
    peak_force = float(np.max(np.abs(traj.forces))) if traj.forces.size else 0.0
    return MetricsReport(
        rms_sprung_accel=rms_abs(traj.accel, traj.dt),
        peak_sprung_accel=float(np.max(np.abs(traj.accel))),
        peak_sprung_disp=float(np.max(np.abs(heave))),
        peak_travel=float(np.max(np.abs(traj.travels))),
        peak_unsprung_disp=peak_unsprung,
        peak_jerk=float(np.max(np.abs(traj.jerk))),
        peak_force=peak_force,
        settling_time=settling_time(heave, traj.times, scenario, band),
    )
