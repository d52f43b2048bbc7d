# optimizer/operators.py
"""
Geographic crossover and power-off mutation.

Crossover cuts the floor plan with a random vertical line that leaves at
least one AP on each side and swaps the parents' levels across it.
Mutation powers off one of the APs sitting at the highest level present.
Both hand their children to the coverage repair.
"""
from typing import Tuple

import numpy as np

from models.radio import OFF
from optimizer.individual import Individual
from optimizer.repair import repair


def split_genes(levels_a: np.ndarray, levels_b: np.ndarray, ap_x: np.ndarray,
                rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Swap levels across a random cut; returns (child1, child2, from_a mask of child1).

    APs left of the vertical line (x < cut) take child1's levels from parent A.
    When every AP shares one x the cut falls between AP indices instead.
    """
    n = ap_x.shape[0]
    if n < 2:
        left = np.ones(n, dtype=bool)
    else:
        lo, hi = float(ap_x.min()), float(ap_x.max())
        if lo == hi:
            cut = int(rng.integers(1, n))
            left = np.arange(n) < cut
        else:
            x_cut = float(rng.uniform(lo, hi))
            if x_cut <= lo:
                x_cut = float(np.nextafter(lo, np.inf))
            left = ap_x < x_cut
    child1 = np.where(left, levels_a, levels_b)
    child2 = np.where(left, levels_b, levels_a)
    return child1, child2, left


def crossover(parent_a: Individual, parent_b: Individual, tables, mu: float,
              rng: np.random.Generator) -> Tuple[Individual, Individual]:
    ap_x = np.asarray([x for x, _ in tables.env.ap_positions], dtype=float)
    child1, child2, _ = split_genes(parent_a.levels, parent_b.levels, ap_x, rng)
    return (Individual(levels=repair(child1, tables, mu, rng).levels),
            Individual(levels=repair(child2, tables, mu, rng).levels))


def mutate(child: Individual, tables, mu: float, rng: np.random.Generator) -> Individual:
    levels = child.levels
    if not np.any(levels > OFF):
        return child
    top = np.flatnonzero(levels == levels.max())
    victim = int(top[0]) if top.size == 1 else int(rng.choice(top))
    new_levels = levels.copy()
    new_levels[victim] = OFF
    return Individual(levels=repair(new_levels, tables, mu, rng).levels)
