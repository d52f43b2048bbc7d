# experiments/scenario.py
"""
Scenarios: an environment, a radio model and GA settings that travel
together, plus the helpers that generate AP layouts and rack placements.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

import numpy as np

from geometry.environment import ORIENTATIONS, Environment, Obstacle
from models.coverage import connect, required_count
from models.radio import RadioModel, full_power
from models.tables import DEFAULT_MEMORY_CAP, LinkProvider, OnTheFlyLinks, precompute
from optimizer.gatpc import GaConfig
from utils.errors import ConfigError, PlacementError

logger = logging.getLogger(__name__)

HAND_WRITTEN = "hand-written"
GENERATED = "generated"

RACK_DIMS = (20.0, 3.0, 9.0)
RACK_LOSS_DB = 7.37


@dataclass(frozen=True)
class Scenario:
    environment: Environment
    radio: RadioModel
    ga: GaConfig
    name: str = "scenario"
    provenance: str = HAND_WRITTEN

    @property
    def mu(self) -> float:
        return self.ga.mu

    @property
    def seed(self) -> int:
        return self.ga.seed

    def with_ga(self, **changes) -> "Scenario":
        return replace(self, ga=replace(self.ga, **changes))

    def with_environment(self, env: Environment, provenance: str = None) -> "Scenario":
        return replace(self, environment=env, provenance=provenance or self.provenance)

    def links(self, fast: bool = True, memory_cap: int = DEFAULT_MEMORY_CAP) -> LinkProvider:
        if fast:
            return precompute(self.environment, self.radio, memory_cap)
        return OnTheFlyLinks(self.environment, self.radio)


def grid_place_aps(env: Environment, spacing: float = None, columns: int = None,
                   rows: int = None) -> List[Tuple[float, float]]:
    """Centres of a regular grid of cells.

    Either cells no larger than ``spacing`` in each direction, or exactly
    ``columns`` x ``rows`` cells. APs are listed column by column.
    """
    width, height = env.x_max - env.x_min, env.y_max - env.y_min
    if spacing is not None:
        if not spacing > 0:
            raise ConfigError(f"AP spacing must be > 0, got {spacing}", "aps.spacing")
        nx = max(1, math.ceil(width / spacing))
        ny = max(1, math.ceil(height / spacing))
    else:
        if columns is None or rows is None or columns < 1 or rows < 1:
            raise ConfigError("need spacing or columns and rows >= 1", "aps")
        nx, ny = int(columns), int(rows)
    return [(env.x_min + (ix + 0.5) * width / nx, env.y_min + (iy + 0.5) * height / ny)
            for ix in range(nx) for iy in range(ny)]


def rack_at(k: int, x: float, y: float, orientation: str, dims: Sequence[float] = RACK_DIMS,
            loss_db: float = RACK_LOSS_DB) -> Obstacle:
    length, width, height = dims
    return Obstacle(k=k, x=x, y=y, length=length, width=width, height=height,
                    loss_db=loss_db, orientation=orientation)


def rack_fits(env: Environment, rack: Obstacle) -> bool:
    """Enclosed in the environment and not standing on an AP."""
    x0, y0, x1, y1 = rack.footprint
    if not env.encloses(x0, y0, x1, y1):
        return False
    return not any(rack.covers(ax, ay) for ax, ay in env.ap_positions)


def full_power_qualified(env: Environment, radio: RadioModel, mu: float) -> bool:
    links = OnTheFlyLinks(env, radio)
    state = connect(full_power(env.ap_count, radio), links)
    return state.covered_count >= required_count(mu, state.eligible_count)


def generate_obstructed_scenario(base: Scenario, rack_count: int, rack_dims: Sequence[float] = RACK_DIMS,
                                 seed: int = 0, loss_db: float = RACK_LOSS_DB,
                                 require_feasible: bool = False, max_retries: int = 1000) -> Scenario:
    """Drop ``rack_count`` racks uniformly into ``base``'s environment.

    Orientation is a fair coin; the anchor is uniform over positions that keep
    the whole rack inside the environment. Racks may overlap each other. With
    ``require_feasible`` the whole layout is redrawn until full power-on meets
    the coverage target.
    """
    if rack_count <= 0:
        return base
    env = base.environment
    rng = np.random.default_rng(np.random.SeedSequence(int(seed) & ((1 << 64) - 1)))
    first_k = len(env.obstacles) + 1
    attempts = 0

    while True:
        racks: List[Obstacle] = []
        while len(racks) < rack_count:
            attempts += 1
            if attempts > max_retries:
                raise PlacementError(f"could not place {rack_count} rack(s) of {tuple(rack_dims)} m "
                                     f"after {max_retries} attempts; environment too small?")
            orientation = ORIENTATIONS[int(rng.integers(2))]
            probe = rack_at(first_k + len(racks), env.x_min, env.y_min, orientation, rack_dims, loss_db)
            fx, fy = probe.footprint[2] - env.x_min, probe.footprint[3] - env.y_min
            if fx > env.x_max - env.x_min or fy > env.y_max - env.y_min:
                continue
            x = float(rng.uniform(env.x_min, env.x_max - fx))
            y = float(rng.uniform(env.y_min, env.y_max - fy))
            rack = rack_at(probe.k, x, y, orientation, rack_dims, loss_db)
            if rack_fits(env, rack):
                racks.append(rack)
        candidate = env.with_obstacles(tuple(env.obstacles) + tuple(racks))
        if not require_feasible or full_power_qualified(candidate, base.radio, base.mu):
            break
        logger.info("Rack layout fails coverage at full power; redrawing")

    if attempts > 10 * rack_count:
        logger.warning("Rack placement needed %d attempts for %d rack(s)", attempts, rack_count)
    return base.with_environment(candidate, provenance=GENERATED)



def build_scenario(cfg, seed: int = None, mu: float = None) -> Scenario:
    """Turn a validated ScenarioConfig into a Scenario; ``seed``/``mu`` override the file."""
    from utils.config import ApGridSpec, RackGeneratorSpec

    r = cfg.radio
    radio = RadioModel.from_components(
        gain_ap=r.gainAp, gain_rx=r.gainRx, margin_shadowing=r.marginShadowing,
        margin_fading=r.marginFading, margin_interference=r.marginInterference,
        pl0=r.pl0, n=r.n, thld=r.thld, p_min=r.pMin, p_max=r.pMax, delta_p=r.deltaP,
        ap_height=r.apHeight, rx_height=r.rxHeight)

    e = cfg.environment
    env = Environment(x_min=e.xMin, y_min=e.yMin, x_max=e.xMax, y_max=e.yMax, gs=e.gs,
                      ap_height=r.apHeight, rx_height=r.rxHeight)
    if isinstance(cfg.aps, ApGridSpec):
        env = env.with_aps(grid_place_aps(env, cfg.aps.spacing, cfg.aps.columns, cfg.aps.rows))
    else:
        env = env.with_aps([(a.x, a.y) for a in cfg.aps])

    g = cfg.ga
    ga = GaConfig(population_size=g.populationSize, elitism_rate=g.elitismRate,
                  crossover_rate=g.crossoverRate, mutation_rate=g.mutationRate,
                  stop_iterations=g.stopIterations,
                  mu=cfg.mu if mu is None else mu,
                  seed=cfg.seed if seed is None else seed)

    obstacles = cfg.obstacles
    if isinstance(obstacles, RackGeneratorSpec):
        scenario = Scenario(environment=env, radio=radio, ga=ga, name=cfg.name)
        return generate_obstructed_scenario(scenario, obstacles.count, obstacles.dims, seed=obstacles.seed,
                                            loss_db=obstacles.lossDb, require_feasible=obstacles.requireFeasible)
    env = env.with_obstacles([
        Obstacle(k=k, x=o.x, y=o.y, length=o.length, width=o.width, height=o.height,
                 loss_db=o.lossDb, orientation=o.orientation)
        for k, o in enumerate(obstacles, start=1)
    ])
    return Scenario(environment=env, radio=radio, ga=ga, name=cfg.name)
