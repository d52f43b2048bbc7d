# experiments/report.py
"""Tabular outputs: experiment records and the files written by the solver."""
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd

from models.coverage import NO_AP, CoverageState
from models.radio import OFF, RadioModel
from optimizer.individual import Individual
from utils.units import mean_dbm

FLOAT_FORMAT = "%.6f"
RECORD_COLUMNS = ["scheme", "run", "seed", "objective_pct", "interference_dbm", "coverage_rate",
                  "shortfall", "powered_on", "levels", "seconds"]
TIMING_COLUMNS = ["seconds"]


def levels_text(levels) -> str:
    return ";".join(str(int(v)) for v in levels)


def write_csv(df: pd.DataFrame, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


@dataclass
class ExperimentReport:
    """Per-run records of one or more schemes plus their aggregate statistics."""
    rows: List[dict] = field(default_factory=list)

    def add(self, scheme: str, ind: Individual, run: int = 0, seed: Optional[int] = None,
            seconds: float = 0.0) -> None:
        ev = ind.evaluation
        self.rows.append({
            "scheme": scheme, "run": run, "seed": seed,
            "objective_pct": ev.objective_pct, "interference_dbm": ev.interference_dbm,
            "coverage_rate": ev.coverage_rate, "shortfall": ev.shortfall,
            "powered_on": ind.powered_on, "levels": levels_text(ind.levels), "seconds": seconds,
        })

    @property
    def records(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=RECORD_COLUMNS)

    def __len__(self) -> int:
        return len(self.rows)

    def aggregate(self) -> pd.DataFrame:
        df = self.records
        stats = (df.groupby("scheme", sort=False)[["objective_pct", "interference_dbm", "coverage_rate", "powered_on"]]
                 .agg(["mean", "min", "max"]))
        stats.columns = [f"{col}_{stat}" for col, stat in stats.columns]
        stats["interference_dbm_mean"] = df.groupby("scheme", sort=False)["interference_dbm"].agg(mean_dbm)
        stats.insert(0, "runs", df.groupby("scheme", sort=False).size())
        return stats.reset_index()

    def write(self, out_dir, stem: str = "runs") -> None:
        """``<stem>.csv`` and ``summary.csv`` are reproducible; wall-clock goes to ``timing.csv``."""
        out_dir = Path(out_dir)
        records = self.records
        write_csv(records.drop(columns=TIMING_COLUMNS), out_dir / f"{stem}.csv")
        write_csv(self.aggregate(), out_dir / "summary.csv")
        write_csv(records[["scheme", "run"] + TIMING_COLUMNS], out_dir / "timing.csv")

    def summary_text(self) -> str:
        lines = []
        for _, row in self.aggregate().iterrows():
            lines.append(f"{row['scheme']:>14}: interference {row['interference_dbm_mean']:8.2f} dBm | "
                         f"objective {row['objective_pct_mean']:7.2f}% | "
                         f"coverage {100 * row['coverage_rate_mean']:6.2f}% | "
                         f"APs on {row['powered_on_mean']:.1f} ({int(row['runs'])} run(s))")
        return "\n".join(lines)


def coverage_map_frame(state: CoverageState, tables) -> pd.DataFrame:
    grid = tables.grid
    rows = np.flatnonzero(state.eligible)
    conn = state.connected_ap[rows]
    return pd.DataFrame({
        "gp_index": rows + 1,
        "x": grid.xs[rows],
        "y": grid.ys[rows],
        "best_rx_dbm": state.best_rx_dbm[rows],
        "connected_ap": np.where(conn == NO_AP, 0, conn + 1),
        "covered": state.covered[rows].astype(int),
        "interference_mw": state.interference_mw[rows],
    })


def solution_frame(levels, model: RadioModel) -> pd.DataFrame:
    levels = np.asarray(levels, dtype=np.int64)
    tx = np.where(levels > OFF, model.tx_dbm(levels), np.nan)
    return pd.DataFrame({
        "apIndex": np.arange(1, levels.size + 1),
        "level": levels,
        "txDbm": tx,
        "state": np.where(levels > OFF, "on", "off"),
    })


def summary_frame(ind: Individual, scenario, scheme: str = "GATPC") -> pd.DataFrame:
    ev = ind.evaluation
    return pd.DataFrame([{
        "scheme": scheme,
        "objective_pct": ev.objective_pct,
        "interference_dbm": ev.interference_dbm,
        "coverage_rate": ev.coverage_rate,
        "covered": ev.covered_count,
        "eligible": ev.eligible_count,
        "shortfall": ev.shortfall,
        "mu": scenario.mu,
        "powered_on": ind.powered_on,
        "seed": scenario.seed,
    }])
