"""GA operators and the generational loop on analytic benchmarks."""

import numpy as np
import pytest

from suspsim.ga import (
    GaConfig,
    GaProblem,
    crossover_scattered,
    mutate_gaussian,
    run_ga,
    select_parents,
)


def sphere_problem(dim=3, span=5.0):
    lo = np.full(dim, -span)
    hi = np.full(dim, span)
    return GaProblem(
        decision_names=tuple(f"x{i}" for i in range(dim)),
        lower=lo, upper=hi,
        fitness=lambda v: float(np.sum(np.square(v))),
    )


class TestCrossover:
    def test_child_genes_come_from_parents(self, rng):
        a = np.array([1.0, 2.0, 3.0, 4.0])
        b = np.array([5.0, 6.0, 7.0, 8.0])
        for _ in range(50):
            child = crossover_scattered(a, b, rng)
            assert all(c in (x, y) for c, x, y in zip(child, a, b))

    def test_identical_parents(self, rng):
        a = np.array([1.0, 2.0])
        child = crossover_scattered(a, a.copy(), rng)
        np.testing.assert_array_equal(child, a)

    def test_length_mismatch_rejected(self, rng):
        with pytest.raises(ValueError):
            crossover_scattered(np.ones(2), np.ones(3), rng)


class TestMutation:
    def test_zero_scale_is_identity(self, rng):
        p = np.array([0.3, 0.7])
        child = mutate_gaussian(p, np.zeros(2), np.ones(2), 0.5, rng, scale=0.0)
        np.testing.assert_array_equal(child, p)

    def test_final_generation_with_full_shrink_is_identity(self, rng):
        p = np.array([0.3, 0.7])
        child = mutate_gaussian(p, np.zeros(2), np.ones(2), 1.0, rng,
                                scale=0.1, shrink=1.0)
        np.testing.assert_array_equal(child, p)

    def test_children_respect_bounds(self, rng):
        lo, hi = np.array([-1.0]), np.array([1.0])
        for _ in range(200):
            child = mutate_gaussian(np.array([0.95]), lo, hi, 0.0, rng, scale=0.5)
            assert lo[0] <= child[0] <= hi[0]

    def test_sample_std_matches_scale(self, rng):
        # interior gene far from the bounds; law of large numbers on sigma
        lo, hi = np.array([-100.0]), np.array([100.0])
        parent = np.array([0.0])
        samples = np.array([
            mutate_gaussian(parent, lo, hi, 0.0, rng, scale=0.1)[0]
            for _ in range(100000)
        ])
        expected = 0.1 * (hi[0] - lo[0])
        assert np.std(samples) == pytest.approx(expected, rel=0.05)


class TestSelection:
    def test_population_of_one(self, rng):
        picks = select_parents(np.array([3.0]), rng, count=20)
        assert np.all(picks == 0)

    def test_two_costs_probability(self, rng):
        # P(pick the cheaper of [1, 2]) = 3/4 over the four equiprobable draws
        picks = select_parents(np.array([1.0, 2.0]), rng, count=40000)
        assert np.mean(picks == 0) == pytest.approx(0.75, abs=0.01)

    def test_selected_never_worse_than_tournament(self, rng):
        costs = rng.uniform(0, 1, size=30)
        picks = select_parents(costs, rng, count=1000)
        assert np.all(costs[picks] <= np.max(costs))

    def test_tie_resolves_to_lower_index(self, rng):
        picks = select_parents(np.zeros(4), rng, count=2000)
        # with all-equal costs the min index of each pair wins; index 3 can
        # only win when drawn twice
        assert np.mean(picks == 3) < 0.12


class TestRunGa:
    def test_sphere_benchmark(self):
        ok = 0
        for seed in range(5):
            result = run_ga(sphere_problem(), GaConfig(seed=seed))
            if result.best_cost < 1e-2:
                ok += 1
        assert ok >= 4

    def test_best_history_monotone(self):
        result = run_ga(sphere_problem(), GaConfig(seed=3, generations=30))
        assert np.all(np.diff(result.best_history) <= 0.0)

    def test_constant_fitness(self):
        problem = GaProblem(("x",), np.array([0.0]), np.array([1.0]),
                            fitness=lambda v: 7.0)
        result = run_ga(problem, GaConfig(seed=0, population_size=20,
                                          generations=5, elite_count=2))
        assert result.best_cost == 7.0
        assert np.all(result.best_history == 7.0)

    def test_determinism(self):
        r1 = run_ga(sphere_problem(), GaConfig(seed=11, generations=10))
        r2 = run_ga(sphere_problem(), GaConfig(seed=11, generations=10))
        np.testing.assert_array_equal(r1.best_vector, r2.best_vector)
        np.testing.assert_array_equal(r1.best_history, r2.best_history)
        assert r1.best_cost == r2.best_cost

    def test_nonfinite_fitness_routed_to_inf(self):
        def fitness(v):
            if v[0] > 0:
                return float("nan")
            return float(v[0] ** 2)

        problem = GaProblem(("x",), np.array([-1.0]), np.array([1.0]), fitness)
        result = run_ga(problem, GaConfig(seed=0, population_size=30,
                                          generations=10, elite_count=2))
        assert np.isfinite(result.best_cost)
        assert result.best_vector[0] <= 0.0

    def test_exception_in_fitness_routed_to_inf(self):
        def fitness(v):
            if v[0] > 0.5:
                raise RuntimeError("diverged")
            return float(v[0] ** 2)

        problem = GaProblem(("x",), np.array([0.0]), np.array([1.0]), fitness)
        result = run_ga(problem, GaConfig(seed=1, population_size=30,
                                          generations=10, elite_count=2))
        assert result.best_cost <= 0.25

    def test_bound_closure_and_feasibility_certificate(self):
        lo = np.array([0.0, 0.0])
        hi = np.array([1.0, 1.0])
        history = []

        def fitness(v):
            history.append(v.copy())
            cost = float(np.sum((v - 0.5) ** 2))
            return cost, cost < 0.1

        def margins_fn(v):
            from suspsim.objectives import ConstraintMargin
            cost = float(np.sum((v - 0.5) ** 2))
            return [ConstraintMargin("g1", "radius", 0.1, cost - 0.1)]

        problem = GaProblem(("a", "b"), lo, hi, fitness, margins_fn=margins_fn)
        result = run_ga(problem, GaConfig(seed=0, population_size=20,
                                          generations=8, elite_count=2))
        for v in history:
            assert np.all(v >= lo) and np.all(v <= hi)
        assert result.feasible is True
        assert all(m.margin <= 1e-3 for m in result.margins)

    def test_feasible_count_tracked(self):
        def fitness(v):
            return float(v[0]), bool(v[0] < 0.5)

        problem = GaProblem(("x",), np.array([0.0]), np.array([1.0]), fitness)
        result = run_ga(problem, GaConfig(seed=0, population_size=20,
                                          generations=5, elite_count=2))
        assert np.all(result.feasible_history >= 0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            GaConfig(population_size=5, elite_count=5)
        with pytest.raises(ValueError):
            GaConfig(generations=0)
        with pytest.raises(ValueError):
            GaConfig(crossover_fraction=1.5)

    def test_bad_bounds_rejected(self):
        with pytest.raises(ValueError):
            GaProblem(("x",), np.array([1.0]), np.array([0.0]), lambda v: 0.0)
