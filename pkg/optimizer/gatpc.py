# optimizer/gatpc.py
"""
GATPC: genetic algorithm for transmit power control.

Generation 0 is filled with RTPC solutions. Each following generation keeps
the elites, then breeds pairs of offspring: binary tournament on the
ranked population, geographic crossover with probability crossover_rate
(otherwise the parents are cloned), power-off mutation of each child with
probability mutation_rate, and evaluation. Fitness is lexicographic:
coverage shortfall first, normalised interference second, and the smaller
level vector when both tie.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np
import pandas as pd

from optimizer.individual import Individual, evaluated, sort_key
from optimizer.operators import crossover, mutate
from optimizer.parallel import WorkerPool, stream
from optimizer.repair import rtpc_generate
from utils.errors import ConfigError
from utils.units import round_half_up

logger = logging.getLogger(__name__)

INIT_STAGE = 0
TRACE_COLUMNS = ["generation", "best", "mean", "shortfall"]


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 60
    elitism_rate: float = 0.04
    crossover_rate: float = 0.7
    mutation_rate: float = 0.4
    stop_iterations: int = 50
    mu: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise ConfigError(f"must be >= 2, got {self.population_size}", "ga.populationSize")
        for name, key in (("elitism_rate", "ga.elitismRate"), ("crossover_rate", "ga.crossoverRate"),
                          ("mutation_rate", "ga.mutationRate")):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError(f"must lie in [0, 1], got {getattr(self, name)}", key)
        if self.stop_iterations < 1:
            raise ConfigError(f"must be >= 1, got {self.stop_iterations}", "ga.stopIterations")
        if not 0.0 < self.mu <= 1.0:
            raise ConfigError(f"coverage rate must lie in (0, 1], got {self.mu}", "mu")

    @property
    def elite_count(self) -> int:
        return min(self.population_size, max(1, round_half_up(self.elitism_rate * self.population_size)))


@dataclass
class GaResult:
    best: Individual
    trace: pd.DataFrame
    population: List[Individual] = field(repr=False)


def _init_slot(tables, task) -> Individual:
    mu, seed, slot = task
    return rtpc_generate(tables, mu, stream(seed, INIT_STAGE, slot))


def _breed_pair(tables, task) -> List[Individual]:
    ranked_levels, config, generation, pair = task
    rng = stream(config.seed, generation, pair)
    size = len(ranked_levels)

    # binary tournament on a ranked list: the lower rank wins
    a = min(int(rng.integers(size)), int(rng.integers(size)))
    b = min(int(rng.integers(size)), int(rng.integers(size)))
    parent_a = Individual(levels=ranked_levels[a].copy())
    parent_b = Individual(levels=ranked_levels[b].copy())

    if rng.random() < config.crossover_rate:
        children = list(crossover(parent_a, parent_b, tables, config.mu, rng))
    else:
        children = [parent_a, parent_b]
    children = [mutate(c, tables, config.mu, rng) if rng.random() < config.mutation_rate else c
                for c in children]
    return [evaluated(c, tables, config.mu) for c in children]


def evolve(population: List[Individual], config: GaConfig, tables, generation: int,
           pool: WorkerPool = None) -> List[Individual]:
    """Next generation, ranked best first. ``population`` must be evaluated."""
    pool = WorkerPool(tables, 1) if pool is None else pool
    ranked = sorted(population, key=sort_key)
    elites = ranked[:config.elite_count]
    open_slots = config.population_size - len(elites)
    snapshot = [ind.levels for ind in ranked]
    tasks = [(snapshot, config, generation, pair) for pair in range(math.ceil(open_slots / 2))]
    offspring = [child for pair in pool.map(_breed_pair, tasks) for child in pair][:open_slots]
    return sorted(elites + offspring, key=sort_key)


def _trace_row(generation: int, population: List[Individual]) -> dict:
    best = population[0].evaluation
    return {"generation": generation, "best": best.objective_pct,
            "mean": float(np.mean([ind.evaluation.objective_pct for ind in population])),
            "shortfall": best.shortfall}


def run_gatpc(tables, config: GaConfig, workers: int = 1, log_every: int = 10) -> GaResult:
    rows = []
    with WorkerPool(tables, workers) as pool:
        population = pool.map(_init_slot, [(config.mu, config.seed, s) for s in range(config.population_size)])
        population = sorted(population, key=sort_key)
        best = population[0]
        rows.append(_trace_row(0, population))

        for generation in range(1, config.stop_iterations + 1):
            population = evolve(population, config, tables, generation, pool)
            if sort_key(population[0]) < sort_key(best):
                best = population[0]
            rows.append(_trace_row(generation, population))
            if log_every and generation % log_every == 0:
                logger.info("Generation %d: best %.4f%% (shortfall %d), mean %.4f%%",
                            generation, rows[-1]["best"], rows[-1]["shortfall"], rows[-1]["mean"])

    if best.evaluation.shortfall > 0:
        logger.warning("Best solution misses the coverage target by %d GP(s)", best.evaluation.shortfall)
    return GaResult(best=best, trace=pd.DataFrame(rows, columns=TRACE_COLUMNS), population=population)
