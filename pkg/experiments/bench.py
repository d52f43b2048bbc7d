# experiments/bench.py
"""
Fast vs naive GATPC wall-clock comparison.

fast:  lookup tables (d_max vector, obstacle/path loss tables, square
       prefilter) and the worker pool.
naive: the same algorithm with every quantity recomputed on demand, full
       grid scans, one process.
Both modes use the same seed and must return the same best solution and trace.
"""
import logging
import time
from dataclasses import dataclass

import numpy as np
import pandas as pd

from experiments.scenario import Scenario
from optimizer.gatpc import GaResult, run_gatpc

logger = logging.getLogger(__name__)

FAST = "fast"
NAIVE = "naive"


@dataclass
class ModeRun:
    mode: str
    seconds: float
    result: GaResult


@dataclass
class BenchReport:
    fast: ModeRun
    naive: ModeRun

    @property
    def speedup(self) -> float:
        return self.naive.seconds / self.fast.seconds if self.fast.seconds > 0 else float("inf")

    @property
    def identical(self) -> bool:
        a, b = self.fast.result, self.naive.result
        return (np.array_equal(a.best.levels, b.best.levels)
                and a.trace.equals(b.trace))

    def frame(self) -> pd.DataFrame:
        rows = []
        for run in (self.fast, self.naive):
            ev = run.result.best.evaluation
            rows.append({"mode": run.mode, "seconds": run.seconds, "objective_pct": ev.objective_pct,
                         "shortfall": ev.shortfall,
                         "levels": ";".join(str(int(v)) for v in run.result.best.levels)})
        df = pd.DataFrame(rows)
        df["speedup"] = self.speedup
        df["identical"] = self.identical
        return df


def run_mode(scenario: Scenario, mode: str, workers: int = None) -> ModeRun:
    if mode not in (FAST, NAIVE):
        raise ValueError(f"unknown benchmark mode {mode!r}")
    start = time.perf_counter()
    if mode == FAST:
        result = run_gatpc(scenario.links(fast=True), scenario.ga, workers=workers)
    else:
        result = run_gatpc(scenario.links(fast=False), scenario.ga, workers=1)
    seconds = time.perf_counter() - start
    logger.info("%s mode finished in %.2f s", mode, seconds)
    return ModeRun(mode=mode, seconds=seconds, result=result)


def speedup_benchmark(scenario: Scenario, workers: int = None) -> BenchReport:
    report = BenchReport(fast=run_mode(scenario, FAST, workers), naive=run_mode(scenario, NAIVE))
    if not report.identical:
        logger.warning("Fast and naive modes disagree on the best solution")
    logger.info("Speedup %.1fx", report.speedup)
    return report
