# geometry/environment.py
"""
Rectangular environment, its grid points and the metal obstacles inside it.

Grid points sit on the upper-left corner of each gs x gs cell and are
numbered in lexicographic (x, y) order: every column of constant x is
listed bottom to top before moving to the next x. Index 1 is (xMin, yMin).
"""
import math
from dataclasses import dataclass, field, replace
from typing import List, Sequence, Tuple

import numpy as np

from utils.errors import ConfigError

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
ORIENTATIONS = (HORIZONTAL, VERTICAL)

# coincidence tolerance for "a GP sits on an AP / on an obstacle edge"
_EPS = 1e-9


@dataclass(frozen=True)
class Obstacle:
    """Axis-aligned box standing on the floor.

    (x, y) is the footprint's minimum corner. A horizontal obstacle runs its
    length along x, a vertical one along y.
    """
    k: int
    x: float
    y: float
    length: float
    width: float
    height: float
    loss_db: float
    orientation: str = HORIZONTAL

    def __post_init__(self):
        for name in ("length", "width", "height"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"must be > 0, got {getattr(self, name)}", f"obstacles[{self.k}].{name}")
        if self.loss_db < 0:
            raise ConfigError(f"must be >= 0, got {self.loss_db}", f"obstacles[{self.k}].lossDb")
        if self.orientation not in ORIENTATIONS:
            raise ConfigError(f"unknown orientation {self.orientation!r}", f"obstacles[{self.k}].orientation")

    @property
    def footprint(self) -> Tuple[float, float, float, float]:
        if self.orientation == HORIZONTAL:
            dx, dy = self.length, self.width
        else:
            dx, dy = self.width, self.length
        return self.x, self.y, self.x + dx, self.y + dy

    @property
    def box(self) -> Tuple[Tuple[float, float, float], Tuple[float, float, float]]:
        x0, y0, x1, y1 = self.footprint
        return (x0, y0, 0.0), (x1, y1, self.height)

    def covers(self, x: float, y: float) -> bool:
        """True when (x, y) is inside the footprint or on its boundary."""
        x0, y0, x1, y1 = self.footprint
        return x0 <= x <= x1 and y0 <= y <= y1


@dataclass(frozen=True)
class GridPoint:
    index: int
    x: float
    y: float
    occupied_by_obstacle: bool = False
    occupied_by_ap: bool = False

    @property
    def eligible(self) -> bool:
        """A receiver is placed here (not inside a rack, not on an AP)."""
        return not (self.occupied_by_obstacle or self.occupied_by_ap)


@dataclass(frozen=True)
class Environment:
    x_min: float
    y_min: float
    x_max: float
    y_max: float
    gs: float
    obstacles: Tuple[Obstacle, ...] = ()
    ap_positions: Tuple[Tuple[float, float], ...] = ()
    ap_height: float = 2.0
    rx_height: float = 1.4

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "ap_positions", tuple((float(x), float(y)) for x, y in self.ap_positions))
        if not self.gs > 0:
            raise ConfigError(f"grid size must be > 0, got {self.gs}", "environment.gs")
        if not self.x_max > self.x_min:
            raise ConfigError(f"xMax ({self.x_max}) must exceed xMin ({self.x_min})", "environment.xMax")
        if not self.y_max > self.y_min:
            raise ConfigError(f"yMax ({self.y_max}) must exceed yMin ({self.y_min})", "environment.yMax")
        for ob in self.obstacles:
            x0, y0, x1, y1 = ob.footprint
            if not self.encloses(x0, y0, x1, y1):
                raise ConfigError("obstacle footprint must be enclosed in the environment", f"obstacles[{ob.k}]")
        for j, (x, y) in enumerate(self.ap_positions):
            if not self.encloses(x, y, x, y):
                raise ConfigError(f"AP at ({x}, {y}) lies outside the environment", f"aps[{j}]")

    def encloses(self, x0: float, y0: float, x1: float, y1: float) -> bool:
        return (x0 >= self.x_min - _EPS and y0 >= self.y_min - _EPS
                and x1 <= self.x_max + _EPS and y1 <= self.y_max + _EPS)

    @property
    def nx(self) -> int:
        return math.ceil((self.x_max - self.x_min) / self.gs)

    @property
    def ny(self) -> int:
        return math.ceil((self.y_max - self.y_min) / self.gs)

    @property
    def size(self) -> int:
        """|Omega|, the number of grid points."""
        return self.nx * self.ny

    @property
    def ap_count(self) -> int:
        return len(self.ap_positions)

    def ap_xyz(self, j: int) -> Tuple[float, float, float]:
        x, y = self.ap_positions[j]
        return x, y, self.ap_height

    def with_obstacles(self, obstacles: Sequence[Obstacle]) -> "Environment":
        return replace(self, obstacles=tuple(obstacles))

    def with_aps(self, positions: Sequence[Tuple[float, float]]) -> "Environment":
        return replace(self, ap_positions=tuple(positions))


def lex_less(a: Tuple[float, float], b: Tuple[float, float]) -> bool:
    """(x1, y1) < (x2, y2) iff x1 < x2, or x1 == x2 and y1 < y2."""
    return a[0] < b[0] or (a[0] == b[0] and a[1] < b[1])


@dataclass(frozen=True)
class GridArrays:
    """Column-vector view of the grid used by every numeric routine.

    Position ``i`` in each array corresponds to the grid point with index
    ``i + 1``.
    """
    nx: int
    ny: int
    x_min: float
    y_min: float
    gs: float
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)
    occupied_by_obstacle: np.ndarray = field(repr=False)
    occupied_by_ap: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.nx * self.ny

    @property
    def eligible(self) -> np.ndarray:
        return ~(self.occupied_by_obstacle | self.occupied_by_ap)

    def flat_index(self, ix: np.ndarray, iy: np.ndarray) -> np.ndarray:
        return ix * self.ny + iy

    def points_in_square(self, cx: float, cy: float, half_side: float) -> np.ndarray:
        """0-based positions of all GPs with |x-cx| <= r and |y-cy| <= r, in grid order."""
        ix_lo = max(0, math.ceil((cx - half_side - self.x_min) / self.gs))
        ix_hi = min(self.nx - 1, math.floor((cx + half_side - self.x_min) / self.gs))
        iy_lo = max(0, math.ceil((cy - half_side - self.y_min) / self.gs))
        iy_hi = min(self.ny - 1, math.floor((cy + half_side - self.y_min) / self.gs))
        if ix_lo > ix_hi or iy_lo > iy_hi:
            return np.empty(0, dtype=np.int64)
        ix = np.arange(ix_lo, ix_hi + 1, dtype=np.int64)
        iy = np.arange(iy_lo, iy_hi + 1, dtype=np.int64)
        return np.add.outer(ix * self.ny, iy).ravel()


def grid_arrays(env: Environment) -> GridArrays:
    nx, ny = env.nx, env.ny
    ix, iy = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    xs = (env.x_min + ix * env.gs).ravel().astype(float)
    ys = (env.y_min + iy * env.gs).ravel().astype(float)

    on_obstacle = np.zeros(xs.shape, dtype=bool)
    for ob in env.obstacles:
        x0, y0, x1, y1 = ob.footprint
        on_obstacle |= (xs >= x0) & (xs <= x1) & (ys >= y0) & (ys <= y1)

    on_ap = np.zeros(xs.shape, dtype=bool)
    for ax, ay in env.ap_positions:
        on_ap |= (np.abs(xs - ax) <= _EPS) & (np.abs(ys - ay) <= _EPS)

    return GridArrays(nx=nx, ny=ny, x_min=env.x_min, y_min=env.y_min, gs=env.gs,
                      xs=xs, ys=ys, occupied_by_obstacle=on_obstacle, occupied_by_ap=on_ap)


def build_grid(env: Environment) -> List[GridPoint]:
    """Enumerate every grid point of ``env`` in lexicographic order."""
    g = grid_arrays(env)
    return [
        GridPoint(index=i + 1, x=float(g.xs[i]), y=float(g.ys[i]),
                  occupied_by_obstacle=bool(g.occupied_by_obstacle[i]),
                  occupied_by_ap=bool(g.occupied_by_ap[i]))
        for i in range(g.size)
    ]
