"""Quarter-car and full-car suspension models in state-space form.

The quarter car is a 2-DOF sprung/unsprung mass pair with a road
displacement state appended, giving 5 states.  The full car is a 7-DOF
body (heave, pitch, roll) plus four unsprung masses, with four road
displacement states appended, giving 18 states.  Both models are linear
and time invariant; the active variants add ideal force actuators
between the body and each wheel.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

WHEELS = ("fl", "fr", "rl", "rr")


class ParameterError(ValueError):
    """A physical parameter is outside its valid domain."""


class ActuatorError(ValueError):
    """An actuator mapping was requested from a system without actuators."""


def _check_positive(obj) -> None:
    for f in fields(obj):
        value = getattr(obj, f.name)
        if not np.isfinite(value) or value <= 0.0:
            raise ParameterError(f"{type(obj).__name__}.{f.name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class QcParams:
    """Quarter-car parameters. Defaults are the stock passenger-car set."""

    sprung_mass: float = 375.0        # kg
    unsprung_mass: float = 59.0       # kg
    spring_stiffness: float = 35000.0  # N/m
    damper_coeff: float = 1000.0      # N*s/m
    tire_stiffness: float = 190000.0  # N/m
    tire_damping: float = 2.0         # N*s/m

    def __post_init__(self) -> None:
        _check_positive(self)


@dataclass(frozen=True)
class FcParams:
    """Full-car parameters. Defaults are the stock passenger-car set.

    ``unsprung_mass`` is per corner.  ``cg_to_front``/``cg_to_rear`` are the
    horizontal distances from the sprung-mass CG to the front/rear axles and
    ``track_width`` is the lateral spacing of the suspension mounts.
    """

    sprung_mass: float = 1500.0
    unsprung_mass: float = 59.0
    front_spring: float = 35000.0
    rear_spring: float = 3800.0
    front_damper: float = 1000.0
    rear_damper: float = 1100.0
    tire_stiffness: float = 190000.0
    tire_damping: float = 2.0
    roll_inertia: float = 460.0       # kg*m^2
    pitch_inertia: float = 2100.0     # kg*m^2
    cg_to_front: float = 1.4          # m
    cg_to_rear: float = 1.7           # m
    track_width: float = 3.0          # m

    def __post_init__(self) -> None:
        _check_positive(self)

    @property
    def wheelbase(self) -> float:
        return self.cg_to_front + self.cg_to_rear


@dataclass(frozen=True)
class StateSpaceSystem:
    """Continuous-time LTI system  xdot = A x + B u,  y = C x + D u."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    state_labels: tuple[str, ...]
    input_labels: tuple[str, ...]
    output_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        n, m, p = self.A.shape[0], self.B.shape[1], self.C.shape[0]
        if self.A.shape != (n, n):
            raise ValueError("A must be square")
        if self.B.shape != (n, m):
            raise ValueError(f"B must be {n}x{m}")
        if self.C.shape != (p, n):
            raise ValueError(f"C must have {n} columns")
        if self.D.shape != (p, m):
            raise ValueError(f"D must be {p}x{m}")
        for labels, dim, name in (
            (self.state_labels, n, "state"),
            (self.input_labels, m, "input"),
            (self.output_labels, p, "output"),
        ):
            if len(labels) != dim:
                raise ValueError(f"{name}_labels length {len(labels)} != {dim}")

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.B.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.C.shape[0]

    def road_input_indices(self) -> list[int]:
        return [i for i, lab in enumerate(self.input_labels) if lab.startswith("zdot_r")]

    def force_input_indices(self) -> list[int]:
        return [i for i, lab in enumerate(self.input_labels) if lab.startswith("f_")]

    def road_state_indices(self) -> list[int]:
        return [i for i, lab in enumerate(self.state_labels) if lab.startswith("z_r")]

    def travel_output_indices(self) -> list[int]:
        return [i for i, lab in enumerate(self.output_labels) if lab.startswith("travel")]

    def output_index(self, label: str) -> int:
        return self.output_labels.index(label)

    @property
    def sprung_accel_row(self) -> int:
        """Row of A/B holding the sprung vertical acceleration (heave)."""
        return 1


def build_qc_system(params: QcParams, active: bool = True) -> StateSpaceSystem:
    """State-space quarter car.

    States: [z_s, zdot_s, z_u, zdot_u, z_r].  Inputs: road velocity and,
    when ``active``, the actuator force (positive upward on the body).
    Outputs: all states plus the suspension travel z_s - z_u.
    """
    ms, mu = params.sprung_mass, params.unsprung_mass
    ks, cs = params.spring_stiffness, params.damper_coeff
    kt, ct = params.tire_stiffness, params.tire_damping

    A = np.array(
        [
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [-ks / ms, -cs / ms, ks / ms, cs / ms, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0],
            [ks / mu, cs / mu, -(ks + kt) / mu, -(cs + ct) / mu, kt / mu],
            [0.0, 0.0, 0.0, 0.0, 0.0],
        ]
    )
    B = np.array(
        [
            [0.0, 0.0],
            [0.0, 1.0 / ms],
            [0.0, 0.0],
            [ct / mu, -1.0 / mu],
            [1.0, 0.0],
        ]
    )
    input_labels = ("zdot_r", "f_a")
    if not active:
        B = B[:, :1]
        input_labels = ("zdot_r",)

    travel_row = np.array([[1.0, 0.0, -1.0, 0.0, 0.0]])
    C = np.vstack([np.eye(5), travel_row])
    D = np.zeros((6, B.shape[1]))
    return StateSpaceSystem(
        A=A,
        B=B,
        C=C,
        D=D,
        state_labels=("z_s", "zdot_s", "z_u", "zdot_u", "z_r"),
        input_labels=input_labels,
        output_labels=("z_s", "zdot_s", "z_u", "zdot_u", "z_r", "travel"),
    )


def corner_displacement_rows(params: FcParams) -> np.ndarray:
    """Rows mapping the 18-state vector to the four sprung corner heights.

    z_s,fl = z - a*theta + (w/2)*phi ; front right flips the roll sign,
    rear corners use +b on the pitch term.
    """
    a, b, w = params.cg_to_front, params.cg_to_rear, params.track_width
    rows = np.zeros((4, 18))
    pitch = {"fl": -a, "fr": -a, "rl": b, "rr": b}
    roll = {"fl": w / 2, "fr": -w / 2, "rl": w / 2, "rr": -w / 2}
    for i, wheel in enumerate(WHEELS):
        rows[i, 0] = 1.0
        rows[i, 2] = pitch[wheel]
        rows[i, 4] = roll[wheel]
    return rows


def build_fc_system(params: FcParams, active: bool = True) -> StateSpaceSystem:
    """State-space full car (7 DOF plus four road states).

    States: [z, zdot, theta, thetadot, phi, phidot,
             z_u and zdot_u per corner (fl, fr, rl, rr),
             z_r per corner].
    Inputs: four road velocities, then (when ``active``) four actuator
    forces, each positive upward on the body corner and reacted on the
    corresponding wheel.  Outputs: all states, the four sprung corner
    displacements, and the four suspension travels.
    """
    ms, mu = params.sprung_mass, params.unsprung_mass
    ksf, ksr = params.front_spring, params.rear_spring
    csf, csr = params.front_damper, params.rear_damper
    kt, ct = params.tire_stiffness, params.tire_damping
    ixx, iyy = params.roll_inertia, params.pitch_inertia
    a, b, w = params.cg_to_front, params.cg_to_rear, params.track_width

    Z, DZ, TH, DTH, PH, DPH = 0, 1, 2, 3, 4, 5
    ZU = {"fl": 6, "fr": 8, "rl": 10, "rr": 12}
    DZU = {wheel: ZU[wheel] + 1 for wheel in WHEELS}
    ZR = {"fl": 14, "fr": 15, "rl": 16, "rr": 17}
    k_of = {"fl": ksf, "fr": ksf, "rl": ksr, "rr": ksr}
    c_of = {"fl": csf, "fr": csf, "rl": csr, "rr": csr}
    # signed lever arms of each corner in the pitch and roll directions
    arm_p = {"fl": -a, "fr": -a, "rl": b, "rr": b}
    arm_r = {"fl": w / 2, "fr": -w / 2, "rl": w / 2, "rr": -w / 2}

    A = np.zeros((18, 18))
    A[Z, DZ] = 1.0
    A[TH, DTH] = 1.0
    A[PH, DPH] = 1.0
    # Each corner spring/damper force on the body is
    # F_c = -k_c*(z_sc - z_uc) - c_c*(zdot_sc - zdot_uc) with
    # z_sc = z + arm_p*theta + arm_r*phi.  Heave, pitch and roll rows are
    # the force, arm_p-weighted and arm_r-weighted sums respectively.
    for wheel in WHEELS:
        k, c = k_of[wheel], c_of[wheel]
        lp, lr = arm_p[wheel], arm_r[wheel]
        # contributions of (z, zdot, theta, thetadot, phi, phidot, z_uc, zdot_uc)
        cols_k = {Z: -k, TH: -k * lp, PH: -k * lr, ZU[wheel]: k}
        cols_c = {DZ: -c, DTH: -c * lp, DPH: -c * lr, DZU[wheel]: c}
        for col, val in {**cols_k, **cols_c}.items():
            A[DZ, col] += val / ms
            A[DTH, col] += lp * val / iyy
            A[DPH, col] += lr * val / ixx
        # wheel dynamics: suspension reaction plus tire spring/damper
        r = DZU[wheel]
        A[ZU[wheel], r] = 1.0
        for col, val in {**cols_k, **cols_c}.items():
            A[r, col] -= val / mu
        A[r, ZU[wheel]] += -kt / mu
        A[r, ZR[wheel]] += kt / mu
        A[r, r] += -ct / mu

    n_road = 4
    n_force = 4 if active else 0
    B = np.zeros((18, n_road + n_force))
    for j, wheel in enumerate(WHEELS):
        B[DZU[wheel], j] = ct / mu
        B[ZR[wheel], j] = 1.0
    if active:
        for j, wheel in enumerate(WHEELS):
            col = n_road + j
            B[DZ, col] = 1.0 / ms
            B[DTH, col] = arm_p[wheel] / iyy
            B[DPH, col] = arm_r[wheel] / ixx
            B[DZU[wheel], col] = -1.0 / mu

    state_labels = (
        "z", "zdot", "theta", "thetadot", "phi", "phidot",
        "z_u_fl", "zdot_u_fl", "z_u_fr", "zdot_u_fr",
        "z_u_rl", "zdot_u_rl", "z_u_rr", "zdot_u_rr",
        "z_r_fl", "z_r_fr", "z_r_rl", "z_r_rr",
    )
    input_labels = tuple(f"zdot_r_{wheel}" for wheel in WHEELS)
    if active:
        input_labels += tuple(f"f_{wheel}" for wheel in WHEELS)

    corner_rows = corner_displacement_rows(params)
    travel_rows = corner_rows.copy()
    for i, wheel in enumerate(WHEELS):
        travel_rows[i, ZU[wheel]] -= 1.0
    C = np.vstack([np.eye(18), corner_rows, travel_rows])
    D = np.zeros((C.shape[0], B.shape[1]))
    output_labels = (
        state_labels
        + tuple(f"z_s_{wheel}" for wheel in WHEELS)
        + tuple(f"travel_{wheel}" for wheel in WHEELS)
    )
    return StateSpaceSystem(
        A=A, B=B, C=C, D=D,
        state_labels=state_labels,
        input_labels=input_labels,
        output_labels=output_labels,
    )


def actuator_force_distribution(system: StateSpaceSystem) -> dict[str, int]:
    """Map actuator names to their force columns in B.

    Quarter car: ``{"qc": col}``.  Full car: one entry per corner.
    Raises :class:`ActuatorError` for passive systems.
    """
    force_cols = system.force_input_indices()
    if not force_cols:
        raise ActuatorError("system has no actuator inputs (built passive)")
    mapping: dict[str, int] = {}
    for col in force_cols:
        label = system.input_labels[col]
        suffix = label[2:]
        mapping["qc" if suffix == "a" else suffix] = col
    return mapping
