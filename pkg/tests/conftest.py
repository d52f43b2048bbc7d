"""Shared fixtures: tiny environments, their link tables and a random scenario factory."""
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from experiments.scenario import Scenario  # noqa: E402
from geometry.environment import Environment, Obstacle  # noqa: E402
from models.radio import RadioModel  # noqa: E402
from models.tables import OnTheFlyLinks, precompute  # noqa: E402
from optimizer.gatpc import GaConfig  # noqa: E402


@pytest.fixture
def radio() -> RadioModel:
    return RadioModel()


@pytest.fixture
def tiny_env() -> Environment:
    """20 m x 10 m, two APs, no obstacles."""
    return Environment(x_min=0, y_min=0, x_max=20, y_max=10, gs=1, ap_positions=[(5, 5), (15, 5)])


@pytest.fixture
def tiny_tables(tiny_env, radio):
    return precompute(tiny_env, radio)


@pytest.fixture
def hall_env() -> Environment:
    """40 m x 12 m, three APs, one small rack."""
    rack = Obstacle(k=1, x=18, y=3, length=4, width=2, height=9, loss_db=7.37)
    return Environment(x_min=0, y_min=0, x_max=40, y_max=12, gs=1, obstacles=[rack],
                       ap_positions=[(6, 6), (20, 9), (34, 6)])


@pytest.fixture
def hall_tables(hall_env, radio):
    return precompute(hall_env, radio)


@pytest.fixture
def shadowed_env() -> Environment:
    """One AP behind a wall that no signal gets through: everything past x=11 is uncoverable."""
    wall = Obstacle(k=1, x=10, y=0, length=1, width=10, height=9, loss_db=100.0)
    return Environment(x_min=0, y_min=0, x_max=30, y_max=10, gs=1, obstacles=[wall], ap_positions=[(5, 5)])


@pytest.fixture
def small_ga() -> GaConfig:
    return GaConfig(population_size=10, stop_iterations=5, mu=1.0, seed=7)


@pytest.fixture
def hall_scenario(hall_env, radio, small_ga) -> Scenario:
    return Scenario(environment=hall_env, radio=radio, ga=small_ga, name="hall")


def _random_env(rng: np.random.Generator) -> Environment:
    width = float(rng.integers(10, 31))
    height = float(rng.integers(8, 17))
    ap_count = int(rng.integers(2, 6))
    aps = [(float(rng.integers(0, 2 * int(width) + 1)) / 2, float(rng.integers(0, 2 * int(height) + 1)) / 2)
           for _ in range(ap_count)]
    racks = []
    for k in range(int(rng.integers(0, 3))):
        length, width_r = float(rng.integers(2, 7)), float(rng.integers(1, 3))
        orientation = "horizontal" if rng.random() < 0.5 else "vertical"
        fx, fy = (length, width_r) if orientation == "horizontal" else (width_r, length)
        if fx >= width or fy >= height:
            continue
        racks.append(Obstacle(k=k + 1, x=float(rng.uniform(0, width - fx)), y=float(rng.uniform(0, height - fy)),
                              length=length, width=width_r, height=float(rng.choice([1.0, 9.0])),
                              loss_db=7.37, orientation=orientation))
    return Environment(x_min=0, y_min=0, x_max=width, y_max=height, gs=1, obstacles=racks, ap_positions=aps)


@pytest.fixture
def random_env():
    """Factory: ``random_env(seed)`` builds a small random environment with 2-5 APs and up to 2 racks."""
    def make(seed: int) -> Environment:
        return _random_env(np.random.default_rng(seed))
    return make


@pytest.fixture
def both_links(radio):
    """Factory: ``both_links(env)`` returns (table-backed, on-the-fly) providers for ``env``."""
    def make(env: Environment):
        return precompute(env, radio), OnTheFlyLinks(env, radio)
    return make
