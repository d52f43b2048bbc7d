# optimizer/repair.py
"""
Coverage repair and random qualified solutions (RTPC).

repair() is the correction loop shared by initialisation, crossover and
mutation: while the coverage target is not met it takes a random blank GP,
finds the nearest AP that could cover it at maximum power and is not yet at
maximum power, and raises that AP to the lowest level that covers the GP.
A GP with no such AP is dropped from the blank set. Levels only ever go up
during repair.
"""
import logging
from dataclasses import dataclass

import numpy as np

from models.coverage import required_count
from models.radio import OFF
from optimizer.individual import Individual, evaluated

logger = logging.getLogger(__name__)


@dataclass
class RepairResult:
    levels: np.ndarray
    covered: np.ndarray
    dropped: np.ndarray     # blank GPs removed for lack of a GP-AP link

    @property
    def covered_count(self) -> int:
        return int(self.covered.sum())


def coverage_mask(levels: np.ndarray, tables, loss: np.ndarray = None) -> np.ndarray:
    loss = tables.loss_matrix() if loss is None else loss
    eirp = tables.model.eirp_table()
    covered = np.zeros(tables.grid.size, dtype=bool)
    for j in np.flatnonzero(levels > OFF):
        cand = tables.candidates(j, int(levels[j]))
        covered[cand[eirp[levels[j]] - loss[cand, j] >= tables.model.thld]] = True
    return covered & tables.grid.eligible


def repair(levels, tables, mu: float, rng: np.random.Generator) -> RepairResult:
    model = tables.model
    n_p = model.n_levels
    thld = model.thld
    eirp = model.eirp_table()
    loss = tables.loss_matrix()
    eligible = tables.grid.eligible

    levels = np.array(levels, dtype=np.int64, copy=True)
    covered = coverage_mask(levels, tables, loss)
    blank = eligible & ~covered
    dropped = np.zeros_like(blank)
    target = required_count(mu, int(eligible.sum()))
    covered_count = int(covered.sum())

    while covered_count < target:
        blank_idx = np.flatnonzero(blank)
        if blank_idx.size == 0:
            break
        g = int(blank_idx[rng.integers(blank_idx.size)])

        # GP-AP links of g: APs below max level that reach g at max level
        linked = np.flatnonzero((levels < n_p) & (eirp[n_p] - loss[g, :] >= thld))
        if linked.size == 0:
            blank[g] = False
            dropped[g] = True
            continue

        j = int(linked[np.argmin(tables.ap_distances(g)[linked])])
        level = max(int(levels[j]), 1)
        while eirp[level] - loss[g, j] < thld:
            level += 1
        levels[j] = level

        cand = tables.candidates(j, level)
        newly = cand[blank[cand] & (eirp[level] - loss[cand, j] >= thld)]
        blank[newly] = False
        covered[newly] = True
        covered_count += newly.size

    return RepairResult(levels=levels, covered=covered, dropped=dropped)


def repair_certificate(levels, tables, mu: float) -> bool:
    """True when the coverage target is met or no uncovered GP is reachable at max power."""
    covered = coverage_mask(np.asarray(levels, dtype=np.int64), tables)
    eligible = tables.grid.eligible
    if covered.sum() >= required_count(mu, int(eligible.sum())):
        return True
    uncovered = np.flatnonzero(eligible & ~covered)
    if uncovered.size == 0:
        return True
    model = tables.model
    reach = model.eirp_table()[model.n_levels] - tables.loss_matrix()[uncovered, :] >= model.thld
    return not reach.any()


def rtpc_generate(tables, mu: float, rng: np.random.Generator) -> Individual:
    """Random levels in 0..N_p, repaired towards the coverage target, evaluated."""
    levels = rng.integers(0, tables.model.n_levels + 1, size=tables.env.ap_count)
    fixed = repair(levels, tables, mu, rng)
    return evaluated(Individual(levels=fixed.levels), tables, mu)
