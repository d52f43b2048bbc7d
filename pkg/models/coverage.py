# models/coverage.py
"""
AP connection, coverage and interference for a power vector.

Every receiver connects to the powered-on AP it hears loudest (lowest AP
index on ties). Interference at a receiver is the linear sum of the powers
it receives from every other powered-on AP; the objective normalises the
network total by the same total under full power-on.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from models.radio import OFF, check_power_vector
from utils.units import dbm_to_mw, mw_to_dbm

NO_AP = -1


@dataclass
class CoverageState:
    best_rx_dbm: np.ndarray = field(repr=False)     # -inf where no AP is on or GP ineligible
    connected_ap: np.ndarray = field(repr=False)    # NO_AP where unconnected
    covered: np.ndarray = field(repr=False)
    interference_mw: np.ndarray = field(repr=False)
    eligible: np.ndarray = field(repr=False)

    @property
    def eligible_count(self) -> int:
        return int(self.eligible.sum())

    @property
    def covered_count(self) -> int:
        return int(self.covered.sum())

    @property
    def coverage_rate(self) -> float:
        n = self.eligible_count
        return self.covered_count / n if n else 0.0

    @property
    def total_interference_mw(self) -> float:
        """Network interference over connected eligible receivers."""
        connected = self.eligible & (self.connected_ap != NO_AP)
        return float(self.interference_mw[connected].sum())


@dataclass(frozen=True)
class Evaluation:
    shortfall: int
    objective_pct: float
    covered_count: int
    eligible_count: int
    interference_mw: float
    degenerate: bool = False

    @property
    def coverage_rate(self) -> float:
        return self.covered_count / self.eligible_count if self.eligible_count else 0.0

    @property
    def interference_dbm(self) -> float:
        return float(mw_to_dbm(self.interference_mw))

    @property
    def feasible(self) -> bool:
        return self.shortfall == 0


def required_count(mu: float, eligible_count: int) -> int:
    """ceil(mu * N), guarded against 0.9 * 100 = 90.00000000000001."""
    return math.ceil(round(mu * eligible_count, 9))


def connect(solution, tables) -> CoverageState:
    model, grid = tables.model, tables.grid
    levels = check_power_vector(solution, tables.env.ap_count, model)
    eligible = grid.eligible
    n = grid.size
    on = np.flatnonzero(levels > OFF)

    if on.size == 0:
        return CoverageState(best_rx_dbm=np.full(n, -np.inf), connected_ap=np.full(n, NO_AP),
                             covered=np.zeros(n, dtype=bool), interference_mw=np.zeros(n),
                             eligible=eligible)

    loss = tables.loss_matrix()[:, on]
    rx = model.eirp_table()[levels[on]][None, :] - loss
    rows = np.arange(n)
    pick = np.argmax(rx, axis=1)
    best = rx[rows, pick]

    lin = dbm_to_mw(rx)
    lin[rows, pick] = 0.0
    interference = lin.sum(axis=1)

    connected = np.where(eligible, on[pick], NO_AP)
    return CoverageState(best_rx_dbm=np.where(eligible, best, -np.inf),
                         connected_ap=connected,
                         covered=eligible & (best >= model.thld),
                         interference_mw=np.where(eligible, interference, 0.0),
                         eligible=eligible)


def is_covered(gp: int, ap: int, level: int, tables) -> bool:
    """alpha_ij via the square prefilter and the path loss table."""
    if level == OFF:
        return False
    ax, ay = tables.env.ap_positions[ap]
    reach = tables.square_half_side(level)
    if abs(tables.grid.xs[gp] - ax) > reach or abs(tables.grid.ys[gp] - ay) > reach:
        return False
    return bool(tables.model.eirp_dbm(level) - tables.loss_at(gp, ap) >= tables.model.thld)


def interference_at(gp: int, state: CoverageState, solution, tables) -> float:
    """Linear mW sum at ``gp`` from every powered-on AP except its serving one."""
    levels = np.asarray(solution, dtype=np.int64)
    serving = state.connected_ap[gp]
    total = 0.0
    for j in np.flatnonzero(levels > OFF):
        if j == serving:
            continue
        total += float(dbm_to_mw(tables.model.eirp_dbm(int(levels[j])) - tables.loss_at(gp, j)))
    return total


def objective(solution, tables) -> float:
    return evaluate(solution, tables, mu=1.0).objective_pct


def feasible(solution, mu: float, tables):
    """(feasible, shortfall) for the coverage constraint at rate ``mu``."""
    state = connect(solution, tables)
    shortfall = max(0, required_count(mu, state.eligible_count) - state.covered_count)
    return shortfall == 0, shortfall


def evaluate(solution, tables, mu: float, state: CoverageState = None) -> Evaluation:
    """Objective and constraint from a single connection pass."""
    state = connect(solution, tables) if state is None else state
    shortfall = max(0, required_count(mu, state.eligible_count) - state.covered_count)
    total = state.total_interference_mw
    reference = tables.reference_interference_mw
    degenerate = reference == 0.0
    pct = 0.0 if degenerate else 100.0 * total / reference
    return Evaluation(shortfall=shortfall, objective_pct=pct, covered_count=state.covered_count,
                      eligible_count=state.eligible_count, interference_mw=total, degenerate=degenerate)
