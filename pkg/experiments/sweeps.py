# experiments/sweeps.py
"""
Parameter studies.

qualification_sweep: anchor one rack on every grid point in both
orientations and ask, for each coverage rate mu, what fraction of those
placements still meets the target with every AP at full power.

interference_vs_mu_sweep: GATPC over a (mu, rack count) grid with repeated
seeds; reports mean interference (averaged in mW), mean objective and mean
powered-on APs.
"""
import logging
from typing import Sequence

import numpy as np
import pandas as pd

from experiments.scenario import RACK_DIMS, RACK_LOSS_DB, Scenario, generate_obstructed_scenario, rack_at, rack_fits
from geometry.environment import ORIENTATIONS, grid_arrays
from models.coverage import connect, required_count
from models.radio import full_power
from models.tables import OnTheFlyLinks
from optimizer.gatpc import run_gatpc
from optimizer.parallel import WorkerPool, derive_seed
from utils.units import mean_dbm

logger = logging.getLogger(__name__)

COMBINED = "combined"
LAYOUT_STAGE = 11
GA_STAGE = 12


def _placement_coverage(template: Scenario, task):
    """(covered, eligible) at full power with one rack anchored at (x, y)."""
    x, y, orientation, dims, loss_db = task
    env = template.environment
    rack = rack_at(len(env.obstacles) + 1, x, y, orientation, dims, loss_db)
    placed = env.with_obstacles(tuple(env.obstacles) + (rack,))
    state = connect(full_power(placed.ap_count, template.radio), OnTheFlyLinks(placed, template.radio))
    return state.covered_count, state.eligible_count


def qualification_sweep(template: Scenario, mu_values: Sequence[float], rack_dims=RACK_DIMS,
                        loss_db: float = RACK_LOSS_DB, workers: int = 1) -> pd.DataFrame:
    env = template.environment
    grid = grid_arrays(env)
    tasks = []
    for orientation in ORIENTATIONS:
        for x, y in zip(grid.xs, grid.ys):
            rack = rack_at(0, float(x), float(y), orientation, rack_dims, loss_db)
            if rack_fits(env, rack):
                tasks.append((float(x), float(y), orientation, tuple(rack_dims), loss_db))
    logger.info("Qualification sweep: %d rack placements x %d mu values", len(tasks), len(mu_values))

    with WorkerPool(template, workers) as pool:
        results = pool.map(_placement_coverage, tasks)

    placements = pd.DataFrame({
        "orientation": [t[2] for t in tasks],
        "covered": [r[0] for r in results],
        "eligible": [r[1] for r in results],
    })
    rows = []
    for mu in mu_values:
        ok = placements["covered"] >= placements["eligible"].map(lambda n: required_count(mu, n))
        for orientation in ORIENTATIONS + (COMBINED,):
            if orientation == COMBINED:
                mask = pd.Series(True, index=placements.index)
            else:
                mask = placements["orientation"].eq(orientation)
            n = int(mask.sum())
            rate = float(ok[mask].mean()) if n else float("nan")
            rows.append({"mu": mu, "orientation": orientation, "qualification_rate": rate, "placements": n})
    return pd.DataFrame(rows, columns=["mu", "orientation", "qualification_rate", "placements"])


def _sweep_run(template: Scenario, task) -> dict:
    mu, rack_count, run = task
    layout_seed = derive_seed(template.seed, LAYOUT_STAGE, rack_count, run)
    scenario = generate_obstructed_scenario(template, rack_count, seed=layout_seed)
    scenario = scenario.with_ga(mu=mu, seed=derive_seed(template.seed, GA_STAGE, rack_count, run))
    best = run_gatpc(scenario.links(), scenario.ga, workers=1, log_every=0).best
    ev = best.evaluation
    return {"mu": mu, "rack_count": rack_count, "run": run, "objective_pct": ev.objective_pct,
            "interference_dbm": ev.interference_dbm, "powered_on": best.powered_on,
            "shortfall": ev.shortfall}


def interference_vs_mu_sweep(template: Scenario, mu_values: Sequence[float], rack_counts: Sequence[int],
                             runs_per_point: int = 30, workers: int = 1) -> pd.DataFrame:
    """Mean GATPC outcome per (mu, rack count); each run owns a derived layout and GA seed.

    The layout and GA seed depend on (rack count, run) only, so every mu value
    is measured on the same set of layouts.
    """
    tasks = [(float(mu), int(rc), run) for mu in mu_values for rc in rack_counts for run in range(runs_per_point)]
    logger.info("Interference sweep: %d GATPC runs", len(tasks))
    with WorkerPool(template, workers) as pool:
        runs = pd.DataFrame(pool.map(_sweep_run, tasks))

    return summarise_runs(runs)


def summarise_runs(runs: pd.DataFrame) -> pd.DataFrame:
    """One row per (mu, rack count). Interference is averaged in milliwatts;
    runs with a single AP on contribute zero power rather than -inf dBm.
    """
    grouped = runs.groupby(["mu", "rack_count"], sort=True)
    out = grouped.agg(mean_objective_pct=("objective_pct", "mean"),
                      std_objective_pct=("objective_pct", "std"),
                      mean_interference_dbm=("interference_dbm", mean_dbm),
                      zero_interference_runs=("interference_dbm", lambda s: int(np.isneginf(s).sum())),
                      mean_powered_on=("powered_on", "mean"),
                      infeasible_runs=("shortfall", lambda s: int((s > 0).sum())),
                      runs=("run", "count")).reset_index()
    out["std_objective_pct"] = out["std_objective_pct"].fillna(0.0)
    return out
