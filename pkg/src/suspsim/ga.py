"""Real-coded genetic algorithm: elitism, scattered crossover, Gaussian
mutation with a linearly shrinking spread, binary tournament selection."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    generations: int = 50
    crossover_fraction: float = 0.8
    elite_count: int = 5
    mutation_scale: float = 0.1
    mutation_shrink: float = 1.0
    constraint_tolerance: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError("elite_count must be in [0, population_size)")
        if not 0.0 <= self.crossover_fraction <= 1.0:
            raise ValueError("crossover_fraction must be in [0, 1]")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")


@dataclass(frozen=True)
class GaProblem:
    """A bounded minimization problem over a named decision vector.

    ``fitness`` maps a vector to a cost, or to a (cost, feasible) pair
    when the problem tracks constraint feasibility per evaluation.
    ``margins_fn``, when given, recomputes the constraint margins of a
    vector for the final feasibility certificate.
    """

    decision_names: tuple[str, ...]
    lower: np.ndarray
    upper: np.ndarray
    fitness: Callable
    margins_fn: Optional[Callable] = None

    def __post_init__(self) -> None:
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if lower.shape != upper.shape or lower.shape != (len(self.decision_names),):
            raise ValueError("bounds must match the decision vector length")
        if not (lower < upper).all():
            raise ValueError("every lower bound must be below its upper bound")

    @property
    def n_genes(self) -> int:
        return len(self.decision_names)


@dataclass(frozen=True)
class GaResult:
    best_vector: np.ndarray
    best_cost: float
    best_history: np.ndarray       # per-generation best cost
    mean_history: np.ndarray       # per-generation mean of finite costs
    feasible_history: np.ndarray   # per-generation feasible count (-1 if untracked)
    feasible: Optional[bool]       # best vector satisfies all margins, or None
    margins: Optional[list] = None

    def named_best(self, names: Sequence[str]) -> dict[str, float]:
        return {n: float(v) for n, v in zip(names, self.best_vector)}


def crossover_scattered(parent_a: np.ndarray, parent_b: np.ndarray,
                        rng: np.random.Generator) -> np.ndarray:
    """Per-gene fair coin: heads takes parent_a's gene, tails parent_b's."""
    parent_a = np.asarray(parent_a, dtype=float)
    parent_b = np.asarray(parent_b, dtype=float)
    if parent_a.shape != parent_b.shape:
        raise ValueError("parents must have equal length")
    mask = rng.integers(0, 2, size=parent_a.shape).astype(bool)
    return np.where(mask, parent_a, parent_b)


def mutate_gaussian(parent: np.ndarray, lower: np.ndarray, upper: np.ndarray,
                    generation_frac: float, rng: np.random.Generator,
                    scale: float = 0.1, shrink: float = 1.0) -> np.ndarray:
    """Additive Gaussian noise scaled by the gene range, shrinking with
    generation progress; the child is clamped to the bounds."""
    sigma = scale * (upper - lower) * (1.0 - shrink * generation_frac)
    child = parent + rng.normal(0.0, 1.0, size=parent.shape) * sigma
    return np.clip(child, lower, upper)


def select_parents(costs: np.ndarray, rng: np.random.Generator,
                   count: int = 1) -> np.ndarray:
    """Binary tournament: draw two uniformly, keep the cheaper one; ties
    resolve to the lower index."""
    costs = np.asarray(costs, dtype=float)
    if costs.size == 0:
        raise ValueError("empty population")
    draws = rng.integers(0, costs.size, size=(count, 2))
    a, b = draws[:, 0], draws[:, 1]
    pick_b = (costs[b] < costs[a]) | ((costs[b] == costs[a]) & (b < a))
    return np.where(pick_b, b, a)


def _evaluate(problem: GaProblem, population: np.ndarray,
              n_workers: int) -> tuple[np.ndarray, np.ndarray]:
    def one(vec):
        try:
            out = problem.fitness(vec)
        except (ArithmeticError, RuntimeError):
            return math.inf, False
        if isinstance(out, tuple):
            cost, feas = out
        else:
            cost, feas = out, None
        if not math.isfinite(cost):
            return math.inf, False
        return float(cost), feas

    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(one, population))
    else:
        results = [one(vec) for vec in population]
    costs = np.array([c for c, _ in results])
    # feasibility per individual: 1/0 when tracked, -1 when untracked
    feas = np.array([-1 if f is None else int(f) for _, f in results], dtype=int)
    return costs, feas


def run_ga(problem: GaProblem, config: GaConfig, n_workers: int = 1) -> GaResult:
    """Generational loop: elites carried over, a crossover block bred by
    tournament selection, the remainder filled with Gaussian mutants.
    Deterministic for a fixed (problem, config) pair."""
    rng = np.random.default_rng(config.seed)
    pop_size, n_genes = config.population_size, problem.n_genes
    lo, hi = problem.lower, problem.upper

    population = lo + rng.random((pop_size, n_genes)) * (hi - lo)
    costs, feas = _evaluate(problem, population, n_workers)

    n_elite = config.elite_count
    n_cross = int(round(config.crossover_fraction * (pop_size - n_elite)))
    n_mut = pop_size - n_elite - n_cross

    best_hist = np.zeros(config.generations)
    mean_hist = np.zeros(config.generations)
    feas_hist = np.full(config.generations, -1, dtype=int)

    for gen in range(config.generations):
        order = np.argsort(costs, kind="stable")
        new_pop = np.empty_like(population)
        new_pop[:n_elite] = population[order[:n_elite]]

        parents = select_parents(costs, rng, count=2 * n_cross + n_mut)
        for i in range(n_cross):
            a, b = parents[2 * i], parents[2 * i + 1]
            new_pop[n_elite + i] = crossover_scattered(population[a], population[b], rng)
        frac = gen / max(config.generations - 1, 1)
        for i in range(n_mut):
            p = parents[2 * n_cross + i]
            new_pop[n_elite + n_cross + i] = mutate_gaussian(
                population[p], lo, hi, frac, rng,
                scale=config.mutation_scale, shrink=config.mutation_shrink)

        # elites keep their known costs (fitness is deterministic)
        child_costs, child_feas = _evaluate(problem, new_pop[n_elite:], n_workers)
        new_costs = np.concatenate([costs[order[:n_elite]], child_costs])
        new_feas = np.concatenate([feas[order[:n_elite]], child_feas])
        population, costs, feas = new_pop, new_costs, new_feas

        best_hist[gen] = costs.min()
        finite = costs[np.isfinite(costs)]
        mean_hist[gen] = finite.mean() if finite.size else math.inf
        if (feas >= 0).all():
            feas_hist[gen] = int((feas == 1).sum())

    best_idx = int(np.argmin(costs))
    best_vec = population[best_idx].copy()
    best_cost = float(costs[best_idx])
    feasible = None
    margins = None
    if problem.margins_fn is not None:
        margins = problem.margins_fn(best_vec)
        feasible = all(m.margin <= config.constraint_tolerance for m in margins)
    return GaResult(
        best_vector=best_vec,
        best_cost=best_cost,
        best_history=best_hist,
        mean_history=mean_hist,
        feasible_history=feas_hist,
        feasible=feasible,
        margins=margins,
    )
