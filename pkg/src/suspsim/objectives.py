"""Fitness functions for the tuner: LQR quadratic cost and the
constraint-penalty comfort cost."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .metrics import RideFrequencies, ride_frequencies, rms_abs
from .sim import Trajectory
from .vehicle_models import FcParams, QcParams, StateSpaceSystem

# comfort and safety thresholds shared by both models
RMS_ACCEL_LIMIT = 0.315      # m/s^2
TRAVEL_LIMIT = 0.127         # m (5 inches)
ACCEL_LIMIT = 4.5            # m/s^2
TIRE_DEFLECTION_LIMIT = 0.0508  # m
UNSPRUNG_DISP_LIMIT = 0.07   # m
FREQ_LOW, FREQ_HIGH = 0.8, 1.5  # Hz
JERK_LIMIT = 18.0            # m/s^3
QC_FORCE_LIMIT = 400.0       # N
FC_FRONT_FORCE_LIMIT = 1000.0  # N
FC_REAR_FORCE_LIMIT = 1500.0   # N


@dataclass(frozen=True)
class LqrWeights:
    """Diagonal state and input penalties."""

    q: np.ndarray
    r: np.ndarray

    def __post_init__(self) -> None:
        q = np.asarray(self.q, dtype=float)
        r = np.asarray(self.r, dtype=float)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        if (q < 0).any() or (r < 0).any():
            raise ValueError("LQR weights must be nonnegative")
        if not (q > 0).any() and not (r > 0).any():
            raise ValueError("at least one LQR weight must be positive")


def default_qc_lqr_weights() -> LqrWeights:
    """Heavy penalty on body motion, light on wheel motion and force."""
    return LqrWeights(q=np.array([1e4, 1e4, 100.0, 100.0, 0.0]), r=np.array([1e-4]))


def default_fc_lqr_weights() -> LqrWeights:
    q = np.concatenate([np.full(6, 1e4), np.full(8, 100.0), np.zeros(4)])
    return LqrWeights(q=q, r=np.full(4, 1e-4))


def lqr_cost(traj: Trajectory, weights: LqrWeights, dt: Optional[float] = None) -> float:
    """J = 1/2 * integral of (x' Q x + u' R u), trapezoidal in time."""
    dt = traj.dt if dt is None else dt
    if weights.q.shape != (traj.states.shape[1],):
        raise ValueError(f"Q has {weights.q.size} entries for {traj.states.shape[1]} states")
    if weights.r.shape != (traj.forces.shape[1],):
        raise ValueError(f"R has {weights.r.size} entries for {traj.forces.shape[1]} inputs")
    with np.errstate(over="ignore"):
        integrand = np.square(traj.states) @ weights.q
        if traj.forces.size:
            integrand = integrand + np.square(traj.forces) @ weights.r
        return float(0.5 * np.trapezoid(integrand, dx=dt))


@dataclass(frozen=True)
class ConstraintMargin:
    """One inequality margin g; satisfied when margin <= 0."""

    id: str
    description: str
    threshold: float
    margin: float

    @property
    def satisfied(self) -> bool:
        return self.margin <= 0.0


@dataclass(frozen=True)
class PenaltyConfig:
    """Penalty weight for constraint violations.

    Violations are summed as raw magnitudes in their native units; set
    ``normalize`` to divide each margin by its threshold first.
    """

    alpha: float = 10000.0
    normalize: bool = False

    def __post_init__(self) -> None:
        if self.alpha <= 0.0:
            raise ValueError("alpha must be > 0")


# alpha for the full-car tuner may be drawn from this range
FC_ALPHA_RANGE = (8000.0, 10000.0)


def _band_margin(freq: Optional[float]) -> float:
    # an overdamped corner has no damped frequency; treat as maximally
    # below the comfort band
    f = 0.0 if freq is None else freq
    return max(FREQ_LOW - f, f - FREQ_HIGH)


def qc_ride_frequencies(params: QcParams) -> RideFrequencies:
    return ride_frequencies(params.spring_stiffness, params.tire_stiffness,
                            params.damper_coeff, params.sprung_mass)


def evaluate_qc_constraints(traj: Trajectory, params: QcParams,
                            frequencies: Optional[RideFrequencies] = None,
                            ) -> list[ConstraintMargin]:
    """Margins g1..g8 for the quarter car.

    g8 (actuator force) is skipped for passive trajectories.
    """
    freqs = qc_ride_frequencies(params) if frequencies is None else frequencies
    f = rms_abs(traj.accel, traj.dt)
    travel = float(np.max(np.abs(traj.travels)))
    accel = float(np.max(np.abs(traj.accel)))
    z_u = traj.state("z_u")
    z_r = traj.state("z_r")
    tire_defl = float(np.max(np.abs(z_u - z_r)))
    unsprung = float(np.max(np.abs(z_u)))
    jerk = float(np.max(np.abs(traj.jerk)))
    margins = [
        ConstraintMargin("g1", "RMS sprung acceleration", RMS_ACCEL_LIMIT, f - RMS_ACCEL_LIMIT),
        ConstraintMargin("g2", "suspension travel", TRAVEL_LIMIT, travel - TRAVEL_LIMIT),
        ConstraintMargin("g3", "peak sprung acceleration", ACCEL_LIMIT, accel - ACCEL_LIMIT),
        ConstraintMargin("g4", "tire deflection", TIRE_DEFLECTION_LIMIT,
                         tire_defl - TIRE_DEFLECTION_LIMIT),
        ConstraintMargin("g5", "unsprung displacement", UNSPRUNG_DISP_LIMIT,
                         unsprung - UNSPRUNG_DISP_LIMIT),
        ConstraintMargin("g6", "damped ride frequency in comfort band", FREQ_HIGH,
                         _band_margin(freqs.damped_freq)),
        ConstraintMargin("g7", "jerk", JERK_LIMIT, jerk - JERK_LIMIT),
    ]
    if traj.forces.size:
        force = float(np.max(np.abs(traj.forces)))
        margins.append(ConstraintMargin("g8", "actuator force", QC_FORCE_LIMIT,
                                        force - QC_FORCE_LIMIT))
    return margins


def fc_corner_frequencies(params: FcParams) -> dict[str, RideFrequencies]:
    """Front/rear corner ride frequencies using the static axle-load split."""
    share_front = params.cg_to_rear / params.wheelbase
    share_rear = params.cg_to_front / params.wheelbase
    m_front = params.sprung_mass * share_front / 2.0
    m_rear = params.sprung_mass * share_rear / 2.0
    return {
        "front": ride_frequencies(params.front_spring, params.tire_stiffness,
                                  params.front_damper, m_front),
        "rear": ride_frequencies(params.rear_spring, params.tire_stiffness,
                                 params.rear_damper, m_rear),
    }


def fc_modal_frequencies(params: FcParams) -> dict[str, Optional[float]]:
    """Damped pitch and roll frequencies from the diagonal modal stiffness."""
    a, b, w = params.cg_to_front, params.cg_to_rear, params.track_width
    ksf, ksr = params.front_spring, params.rear_spring
    csf, csr = params.front_damper, params.rear_damper
    out: dict[str, Optional[float]] = {}
    for name, k_eff, c_eff, inertia in (
        ("pitch", 2 * a**2 * ksf + 2 * b**2 * ksr, 2 * a**2 * csf + 2 * b**2 * csr,
         params.pitch_inertia),
        ("roll", (w**2 / 2.0) * (ksf + ksr), (w**2 / 2.0) * (csf + csr),
         params.roll_inertia),
    ):
        fn = math.sqrt(k_eff / inertia) / (2.0 * math.pi)
        zeta = c_eff / (2.0 * math.sqrt(k_eff * inertia))
        out[name] = fn * math.sqrt(1.0 - zeta**2) if zeta < 1.0 else None
    return out


def evaluate_fc_constraints(traj: Trajectory, params: FcParams) -> list[ConstraintMargin]:
    """Margins g1..g24 for the full car.

    Indices g7..g10 are unused and never emitted; the numbering of the
    remaining constraints is kept stable so reports can be compared.
    """
    corner = fc_corner_frequencies(params)
    modal = fc_modal_frequencies(params)
    f = rms_abs(traj.accel, traj.dt)
    margins = [
        ConstraintMargin("g1", "RMS heave acceleration", RMS_ACCEL_LIMIT, f - RMS_ACCEL_LIMIT),
    ]
    wheels = ("fl", "fr", "rl", "rr")
    for i, wheel in enumerate(wheels):
        travel = float(np.max(np.abs(traj.travels[:, i])))
        margins.append(ConstraintMargin(f"g{2 + i}", f"suspension travel {wheel}",
                                        TRAVEL_LIMIT, travel - TRAVEL_LIMIT))
    accel = float(np.max(np.abs(traj.accel)))
    margins.append(ConstraintMargin("g6", "peak heave acceleration", ACCEL_LIMIT,
                                    accel - ACCEL_LIMIT))
    for i, wheel in enumerate(wheels):
        unsprung = float(np.max(np.abs(traj.state(f"z_u_{wheel}"))))
        margins.append(ConstraintMargin(f"g{11 + i}", f"unsprung displacement {wheel}",
                                        UNSPRUNG_DISP_LIMIT, unsprung - UNSPRUNG_DISP_LIMIT))
    fd_front = corner["front"].damped_freq
    fd_rear = corner["rear"].damped_freq
    margins.append(ConstraintMargin("g15", "front ride frequency in comfort band",
                                    FREQ_HIGH, _band_margin(fd_front)))
    margins.append(ConstraintMargin("g16", "rear ride frequency in comfort band",
                                    FREQ_HIGH, _band_margin(fd_rear)))
    jerk = float(np.max(np.abs(traj.jerk)))
    margins.append(ConstraintMargin("g17", "jerk", JERK_LIMIT, jerk - JERK_LIMIT))
    margins.append(ConstraintMargin("g18", "front ride frequency above rear", 0.0,
                                    (fd_rear or 0.0) - (fd_front or 0.0)))
    margins.append(ConstraintMargin("g19", "pitch frequency in comfort band",
                                    FREQ_HIGH, _band_margin(modal["pitch"])))
    margins.append(ConstraintMargin("g20", "roll frequency in comfort band",
                                    FREQ_HIGH, _band_margin(modal["roll"])))
    if traj.forces.size:
        limits = {"fl": FC_FRONT_FORCE_LIMIT, "fr": FC_FRONT_FORCE_LIMIT,
                  "rl": FC_REAR_FORCE_LIMIT, "rr": FC_REAR_FORCE_LIMIT}
        for i, wheel in enumerate(wheels):
            force = float(np.max(np.abs(traj.forces[:, i])))
            margins.append(ConstraintMargin(f"g{21 + i}", f"actuator force {wheel}",
                                            limits[wheel], force - limits[wheel]))
    return margins


def cb_cost(f: float, margins: Sequence[ConstraintMargin],
            penalty: PenaltyConfig | float = PenaltyConfig()) -> float:
    """J = f + alpha * sum of positive margins."""
    if isinstance(penalty, (int, float)):
        penalty = PenaltyConfig(alpha=float(penalty))
    total = 0.0
    for m in margins:
        g = m.margin / m.threshold if (penalty.normalize and m.threshold > 0) else m.margin
        total += max(0.0, g)
    return f + penalty.alpha * total
