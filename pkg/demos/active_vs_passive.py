"""Active versus passive quarter-car ride comparison.

Adds a PID-driven actuator between the sprung and unsprung masses. The
controller reads the previous sample's suspension travel and pushes the
two masses apart or together to flatten the body motion. The gains here
come from a quadratic-cost tuning run (see demos/optimize_quarter_car.py
for how such gains are found).
"""

from pathlib import Path

from suspsim import (
    PidGains,
    QcParams,
    SimConfig,
    build_qc_system,
    default_scenario,
    make_qc_controller,
    simulate_active,
    simulate_passive,
    trajectory_report,
)
from suspsim.svgplot import Series, write_chart

OUT = Path(__file__).parent / "output"

# Gains from a quadratic-cost genetic tuning run on the stock parameters.
GAINS = PidGains(kp=227.13, ki=1.20, kd=5878.56)


def main() -> None:
    OUT.mkdir(exist_ok=True)

    params = QcParams()
    scenario = default_scenario("qc")
    cfg = SimConfig()

    passive = simulate_passive(build_qc_system(params, active=False),
                               scenario, cfg)
    active = simulate_active(build_qc_system(params, active=True), scenario,
                             make_qc_controller(GAINS), cfg)

    rep_p = trajectory_report(passive, scenario)
    rep_a = trajectory_report(active, scenario)

    print(f"{'metric':20s} {'passive':>10s} {'active':>10s} {'change':>8s}")
    for key in ("peak_sprung_disp", "peak_travel", "rms_sprung_accel",
                "settling_time"):
        p, a = rep_p.to_dict()[key], rep_a.to_dict()[key]
        print(f"{key:20s} {p:10.4f} {a:10.4f} {100 * (a - p) / p:+7.1f}%")

    write_chart(
        OUT / "qc_active_vs_passive.svg",
        [
            Series(passive.times, passive.state("z_s"), "passive"),
            Series(active.times, active.state("z_s"), "active"),
        ],
        title="Sprung mass displacement: passive vs PID-controlled active",
        xlabel="time [s]",
        ylabel="displacement [m]",
    )
    write_chart(
        OUT / "qc_actuator_force.svg",
        [Series(active.times, active.forces[:, 0], "actuator force")],
        title="Actuator force demanded by the PID controller",
        xlabel="time [s]",
        ylabel="force [N]",
    )
    print(f"\ncharts written to {OUT}")


if __name__ == "__main__":
    main()
