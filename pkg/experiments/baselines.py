# experiments/baselines.py
"""Benchmark schemes: full power-on, RTPC, the exhaustive oracle and a side-by-side comparison."""
import itertools
import logging
import time

import numpy as np

from experiments.report import ExperimentReport
from experiments.scenario import Scenario
from models.coverage import evaluate
from models.radio import full_power
from optimizer.gatpc import run_gatpc
from optimizer.individual import Individual, sort_key
from optimizer.parallel import WorkerPool, stream
from optimizer.repair import rtpc_generate
from utils.errors import SearchSpaceError

logger = logging.getLogger(__name__)

RTPC_STAGE = 1_000_003
DEFAULT_ORACLE_CAP = 1_000_000


def full_power_on(tables, mu: float) -> Individual:
    levels = full_power(tables.env.ap_count, tables.model)
    return Individual(levels=levels, evaluation=evaluate(levels, tables, mu))


def _rtpc_run(tables, task):
    mu, seed, run = task
    start = time.perf_counter()
    ind = rtpc_generate(tables, mu, stream(seed, RTPC_STAGE, run))
    return ind, time.perf_counter() - start


def rtpc_baseline(scenario: Scenario, runs: int, tables=None, workers: int = 1) -> ExperimentReport:
    tables = scenario.links() if tables is None else tables
    report = ExperimentReport()
    with WorkerPool(tables, workers) as pool:
        results = pool.map(_rtpc_run, [(scenario.mu, scenario.seed, r) for r in range(runs)])
    for run, (ind, seconds) in enumerate(results):
        report.add("RTPC", ind, run=run, seed=scenario.seed, seconds=seconds)
    return report


def search_space_size(tables) -> int:
    return (tables.model.n_levels + 1) ** tables.env.ap_count


def brute_force_oracle(tables, mu: float, cap: int = DEFAULT_ORACLE_CAP) -> Individual:
    """Lexicographic optimum over every power vector; ties go to the smallest vector."""
    size = search_space_size(tables)
    if size > cap:
        logger.warning("Oracle refused: %d solutions exceed the cap of %d", size, cap)
        raise SearchSpaceError(size, cap)
    best = None
    for combo in itertools.product(range(tables.model.n_levels + 1), repeat=tables.env.ap_count):
        levels = np.asarray(combo, dtype=np.int64)
        cand = Individual(levels=levels, evaluation=evaluate(levels, tables, mu))
        if best is None or sort_key(cand) < sort_key(best):
            best = cand
    logger.info("Oracle searched %d solutions; optimum %.6f%% (shortfall %d)",
                size, best.evaluation.objective_pct, best.evaluation.shortfall)
    return best


def compare_schemes(scenario: Scenario, rtpc_runs: int = 1, workers: int = 1, tables=None) -> ExperimentReport:
    """GATPC, RTPC and full power-on on the same scenario, one record per run."""
    tables = scenario.links() if tables is None else tables
    report = ExperimentReport()

    start = time.perf_counter()
    result = run_gatpc(tables, scenario.ga, workers=workers)
    report.add("GATPC", result.best, seed=scenario.seed, seconds=time.perf_counter() - start)

    report.rows.extend(rtpc_baseline(scenario, rtpc_runs, tables=tables, workers=workers).rows)

    start = time.perf_counter()
    ind = full_power_on(tables, scenario.mu)
    report.add("full power-on", ind, seed=scenario.seed, seconds=time.perf_counter() - start)
    return report
