# models/tables.py
"""
Link providers: everything the optimiser asks about an (AP, GP) pair.

LookupTables precomputes before the search starts:
  - d_max for every power level (a constant vector)
  - the obstacle loss table OL_ij (dense |Omega| x |A|)
  - the path loss table PL_ij (obstacle loss included)
and answers "which GPs can AP j reach at level l" from a square of
half-side d_max centred on the AP, built from grid arithmetic on demand.

OnTheFlyLinks answers the same questions by recomputing distances, obstacle
blockage and d_max on every call and scanning the whole grid. It exists as
the reference the tables are checked against and as the naive benchmark
mode. Both build path loss columns with ``link_columns`` so their answers
agree bit for bit.
"""
import logging
from functools import cached_property
from typing import Tuple

import numpy as np

from geometry.environment import Environment, GridArrays, grid_arrays
from geometry.obstacles import obstacle_loss_column
from models import radio
from models.radio import RadioModel, full_power
from utils.errors import ConfigError, ResourceError

logger = logging.getLogger(__name__)

DEFAULT_MEMORY_CAP = 2 * 1024 ** 3
_BYTES_PER_ENTRY = 8
# relative + absolute slack so rounding in log10 never drops a coverable GP from the square
_SQUARE_SLACK = 1e-9


def link_columns(env: Environment, model: RadioModel, grid: GridArrays, ap: int) -> Tuple[np.ndarray, np.ndarray]:
    """(OL column, PL column) for AP ``ap`` against every grid point."""
    ol = obstacle_loss_column(env, ap, grid.xs, grid.ys)
    d = radio.distances_3d(env.ap_xyz(ap), grid.xs, grid.ys, env.rx_height)
    return ol, radio.path_loss(d, ol, model)


def table_bytes(env: Environment) -> int:
    """Memory needed by the two dense |Omega| x |A| tables."""
    return 2 * env.size * env.ap_count * _BYTES_PER_ENTRY


class LinkProvider:
    """Abstract link source; LookupTables and OnTheFlyLinks implement the loss and candidate methods."""
    naive = False

    def __init__(self, env: Environment, model: RadioModel):
        if abs(env.ap_height - model.ap_height) > 1e-12 or abs(env.rx_height - model.rx_height) > 1e-12:
            raise ConfigError("environment and radio model disagree on AP/Rx heights", "radio.apHeight")
        self.env = env
        self.model = model
        self.grid = grid_arrays(env)

    def loss_matrix(self) -> np.ndarray:
        raise NotImplementedError

    def loss_at(self, gp: int, ap: int) -> float:
        raise NotImplementedError

    def d_max(self, level: int) -> float:
        raise NotImplementedError

    def candidates(self, ap: int, level: int) -> np.ndarray:
        raise NotImplementedError

    def square_half_side(self, level: int) -> float:
        return self.d_max(level) * (1.0 + _SQUARE_SLACK) + _SQUARE_SLACK

    def ap_distances(self, gp: int) -> np.ndarray:
        """3D distance from grid position ``gp`` to every AP."""
        if self.env.ap_count == 0:
            return np.empty(0)
        aps = np.asarray(self.env.ap_positions, dtype=float)
        dz = self.env.rx_height - self.env.ap_height
        return np.sqrt((aps[:, 0] - self.grid.xs[gp]) ** 2 + (aps[:, 1] - self.grid.ys[gp]) ** 2 + dz ** 2)

    @cached_property
    def reference_interference_mw(self) -> float:
        """Denominator of the normalised objective: total interference at full power-on."""
        from models.coverage import connect

        total = connect(full_power(self.env.ap_count, self.model), self).total_interference_mw
        if total == 0.0:
            logger.warning("Full power-on interference is zero (%d AP(s)); objective will read 0%%",
                           self.env.ap_count)
        return total


class LookupTables(LinkProvider):
    def __init__(self, env: Environment, model: RadioModel):
        super().__init__(env, model)
        self.d_max_by_level = np.array([radio.d_max(lv, model) for lv in range(model.n_levels + 1)])
        ol_cols, pl_cols = [], []
        for j in range(env.ap_count):
            ol, pl = link_columns(env, model, self.grid, j)
            ol_cols.append(ol)
            pl_cols.append(pl)
        self.obstacle_loss_table = _stack(ol_cols, self.grid.size)
        self.path_loss_table = _stack(pl_cols, self.grid.size)

    def loss_matrix(self) -> np.ndarray:
        return self.path_loss_table

    def loss_at(self, gp: int, ap: int) -> float:
        return float(self.path_loss_table[gp, ap])

    def d_max(self, level: int) -> float:
        return float(self.d_max_by_level[level])

    def candidates(self, ap: int, level: int) -> np.ndarray:
        return gp_candidates(ap, level, self)


class OnTheFlyLinks(LinkProvider):
    naive = True

    def loss_matrix(self) -> np.ndarray:
        cols = [link_columns(self.env, self.model, self.grid, j)[1] for j in range(self.env.ap_count)]
        return _stack(cols, self.grid.size)

    def loss_at(self, gp: int, ap: int) -> float:
        return float(link_columns(self.env, self.model, self.grid, ap)[1][gp])

    def d_max(self, level: int) -> float:
        return radio.d_max(level, self.model)

    def candidates(self, ap: int, level: int) -> np.ndarray:
        return np.flatnonzero(self.grid.eligible)


def _stack(cols, rows: int) -> np.ndarray:
    if not cols:
        return np.empty((rows, 0))
    return np.column_stack(cols)


def precompute(env: Environment, model: RadioModel, memory_cap: int = DEFAULT_MEMORY_CAP) -> LookupTables:
    need = table_bytes(env)
    if need > memory_cap:
        raise ResourceError(f"lookup tables need {need} bytes, cap is {memory_cap} bytes",
                            required_bytes=need, cap_bytes=memory_cap)
    tables = LookupTables(env, model)
    logger.info("Precomputed link tables: %d GPs x %d APs, %d levels (%.1f MB)",
                env.size, env.ap_count, model.n_levels, need / 1e6)
    return tables


def gp_candidates(ap: int, level: int, tables: LinkProvider) -> np.ndarray:
    """Eligible GP positions inside the square of half-side d_max(level) around AP ``ap``."""
    if level < 1:
        raise ValueError("candidates are only defined for powered-on levels")
    ax, ay = tables.env.ap_positions[ap]
    square = tables.grid.points_in_square(ax, ay, tables.square_half_side(level))
    return square[tables.grid.eligible[square]]
