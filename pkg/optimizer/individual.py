from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from models.coverage import Evaluation, evaluate


@dataclass
class Individual:
    """A power vector and, once evaluated, its (shortfall, interference %) fitness."""
    levels: np.ndarray
    evaluation: Optional[Evaluation] = None

    @property
    def evaluated(self) -> bool:
        return self.evaluation is not None

    @property
    def fitness(self) -> Tuple[int, float]:
        if self.evaluation is None:
            raise ValueError("individual has not been evaluated")
        return self.evaluation.shortfall, self.evaluation.objective_pct

    @property
    def powered_on(self) -> int:
        return int(np.count_nonzero(self.levels))


def sort_key(ind: Individual) -> Tuple[int, float, Tuple[int, ...]]:
    """Fitness, then the lexicographically smallest level vector among equal scores."""
    return ind.fitness + (tuple(int(v) for v in ind.levels),)


def evaluated(ind: Individual, tables, mu: float) -> Individual:
    if ind.evaluated:
        return ind
    return Individual(levels=ind.levels, evaluation=evaluate(ind.levels, tables, mu))
