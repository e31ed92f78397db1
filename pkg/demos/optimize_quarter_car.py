"""Tune quarter-car PID gains with the genetic algorithm.

Minimizes a quadratic ride cost (weighted state energy plus control
effort) over the PID gain space. A reduced population and generation
count keep the demo under a minute; drop the GaConfig overrides to run
the full-size search (population 100, 50 generations).
"""

import time

from suspsim import (
    GaConfig,
    PidGains,
    QcParams,
    SimConfig,
    build_qc_system,
    default_scenario,
    make_qc_controller,
    qc_lqr_problem,
    run_ga,
    simulate_active,
    simulate_passive,
    trajectory_report,
)


def main() -> None:
    params = QcParams()
    scenario = default_scenario("qc")
    sim_cfg = SimConfig()

    problem = qc_lqr_problem(params, scenario, sim_cfg)
    config = GaConfig(population_size=30, generations=15, seed=1)

    start = time.perf_counter()
    result = run_ga(problem, config, n_workers=1)
    elapsed = time.perf_counter() - start

    best = result.named_best(problem.decision_names)
    print(f"search finished in {elapsed:.1f} s, best cost {result.best_cost:.4f}")
    for name, value in best.items():
        print(f"  {name}: {value:.2f}")
    print("best cost by generation:",
          " ".join(f"{c:.3f}" for c in result.best_history[::3]))

    gains = PidGains(**best)
    passive = simulate_passive(build_qc_system(params, active=False),
                               scenario, sim_cfg)
    active = simulate_active(build_qc_system(params, active=True), scenario,
                             make_qc_controller(gains), sim_cfg)
    rep_p = trajectory_report(passive, scenario)
    rep_a = trajectory_report(active, scenario)
    print(f"\npeak sprung displacement: passive {rep_p.peak_sprung_disp:.4f} m, "
          f"tuned active {rep_a.peak_sprung_disp:.4f} m "
          f"({100 * (1 - rep_a.peak_sprung_disp / rep_p.peak_sprung_disp):.1f}% lower)")
    print(f"settling time: passive {rep_p.settling_time:.2f} s, "
          f"tuned active {rep_a.settling_time:.2f} s")


if __name__ == "__main__":
    main()
