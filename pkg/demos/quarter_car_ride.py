"""Passive quarter-car ride over two cosine bumps.

Walks through the core simulation loop: build the two-mass vehicle model,
define a road scenario, integrate, and report ride metrics. Charts are
written next to this script under demos/output/.
"""

from pathlib import Path

from suspsim import (
    QcParams,
    SimConfig,
    build_qc_system,
    default_scenario,
    ride_frequencies,
    simulate_passive,
    trajectory_report,
)
from suspsim.svgplot import Series, write_chart

OUT = Path(__file__).parent / "output"


def main() -> None:
    OUT.mkdir(exist_ok=True)

    # Stock sedan corner: 375 kg sprung, 59 kg unsprung.
    params = QcParams()
    system = build_qc_system(params, active=False)

    # Two 0.1 m cosine bumps, 0.5 s long, crossed at 10 m/s.
    scenario = default_scenario("qc")
    traj = simulate_passive(system, scenario, SimConfig())

    rf = ride_frequencies(params.spring_stiffness, params.tire_stiffness,
                          params.damper_coeff, params.sprung_mass)
    print("ride rate          : %.2f N/m" % rf.ride_rate)
    print("natural frequency  : %.4f Hz" % rf.natural_freq)
    print("damping ratio      : %.4f" % rf.damping_ratio)
    print("damped frequency   : %.4f Hz" % rf.damped_freq)
    print()

    report = trajectory_report(traj, scenario)
    for key, value in report.to_dict().items():
        print(f"{key:20s}: {value:.4f}")

    write_chart(
        OUT / "qc_passive_displacement.svg",
        [
            Series(traj.times, traj.state("z_s"), "sprung mass"),
            Series(traj.times, traj.state("z_u"), "unsprung mass"),
            Series(traj.times, traj.state("z_r"), "road"),
        ],
        title="Passive quarter-car over two cosine bumps",
        xlabel="time [s]",
        ylabel="displacement [m]",
    )
    write_chart(
        OUT / "qc_passive_travel.svg",
        [Series(traj.times, traj.travels[:, 0], "suspension travel")],
        title="Suspension travel (sprung minus unsprung displacement)",
        xlabel="time [s]",
        ylabel="travel [m]",
    )
    print(f"\ncharts written to {OUT}")


if __name__ == "__main__":
    main()
