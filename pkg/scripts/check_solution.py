#!/usr/bin/env python3
"""Sanity-check a `gatpc.py solve` output directory.

    python scripts/check_solution.py outputs/solve [--n-levels 13] [--mu 1.0]
"""
import argparse
import sys
from pathlib import Path

import pandas as pd

SOLUTION_COLS = {"apIndex", "level", "txDbm", "state"}
MAP_COLS = {"gp_index", "x", "y", "best_rx_dbm", "connected_ap", "covered", "interference_mw"}
SUMMARY_COLS = {"coverage_rate", "covered", "eligible", "shortfall", "mu", "powered_on"}


def fail(msg):
    print(f"VALIDATION FAIL: {msg}", file=sys.stderr)
    sys.exit(1)


def _read(path: Path, required: set) -> pd.DataFrame:
    try:
        df = pd.read_csv(path)
    except Exception as e:
        fail(f"Could not read {path}: {e}")
    if not required.issubset(df.columns):
        fail(f"{path.name}: missing columns {sorted(required - set(df.columns))}")
    return df


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="Validate solve outputs")
    ap.add_argument("out_dir")
    ap.add_argument("--n-levels", type=int, default=None, help="Highest power level allowed")
    ap.add_argument("--mu", type=float, default=None, help="Coverage rate to check against (default: summary)")
    args = ap.parse_args(argv)
    out = Path(args.out_dir)

    sol = _read(out / "solution.csv", SOLUTION_COLS)
    cmap = _read(out / "coverage_map.csv", MAP_COLS)
    summary = _read(out / "summary.csv", SUMMARY_COLS)
    if len(summary) != 1:
        fail(f"summary.csv: expected 1 row, got {len(summary)}")
    s = summary.iloc[0]

    if (sol["level"] < 0).any() or (args.n_levels is not None and (sol["level"] > args.n_levels).any()):
        fail(f"power levels out of range: {sorted(sol['level'].unique().tolist())}")
    on = sol["level"] > 0
    if not (sol.loc[on, "state"].eq("on").all() and sol.loc[~on, "state"].eq("off").all()):
        fail("state column disagrees with level")
    if sol.loc[~on, "txDbm"].notna().any() or sol.loc[on, "txDbm"].isna().any():
        fail("txDbm must be set exactly for powered-on APs")
    if int(on.sum()) != int(s["powered_on"]):
        fail(f"powered_on {int(s['powered_on'])} != {int(on.sum())} APs on in solution.csv")

    if len(cmap) != int(s["eligible"]):
        fail(f"coverage_map.csv has {len(cmap)} rows, expected {int(s['eligible'])} eligible GPs")
    covered = int(cmap["covered"].sum())
    if covered != int(s["covered"]):
        fail(f"coverage map counts {covered} covered GPs, summary says {int(s['covered'])}")
    bad_ap = ~cmap["connected_ap"].between(0, len(sol))
    if bad_ap.any():
        fail(f"connected_ap out of range at gp_index {cmap.loc[bad_ap, 'gp_index'].tolist()[:5]}")

    mu = float(s["mu"]) if args.mu is None else args.mu
    rate = covered / len(cmap) if len(cmap) else 0.0
    if int(s["shortfall"]) == 0 and rate + 1e-12 < mu:
        fail(f"coverage rate {rate:.4f} below mu {mu} but shortfall is 0")

    status = "OK ✅" if int(s["shortfall"]) == 0 else "OK ⚠️ (coverage target missed)"
    print(f"{status} {int(on.sum())}/{len(sol)} APs on | coverage {100 * rate:.2f}% | mu {mu}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
