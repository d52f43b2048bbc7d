#!/usr/bin/env python3
"""
GATPC command line.

    python scripts/gatpc.py solve    --config config/small_hall.yml --out outputs/solve
    python scripts/gatpc.py baseline --config config/small_hall.yml --scheme rtpc --runs 30
    python scripts/gatpc.py compare  --config config/small_obstructed.yml --runs 10
    python scripts/gatpc.py sweep    --config config/small_obstructed.yml --kind qualification
    python scripts/gatpc.py oracle   --config config/oracle_small.yml --cap 100000
    python scripts/gatpc.py bench    --config config/bench_medium.yml

Exit codes: 0 ok, 2 bad configuration or arguments, 3 resource limit.
"""
import argparse
import logging
import os
import sys
import time
from pathlib import Path

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from experiments.baselines import DEFAULT_ORACLE_CAP, brute_force_oracle, compare_schemes, full_power_on, rtpc_baseline
from experiments.bench import speedup_benchmark
from experiments.report import ExperimentReport, coverage_map_frame, solution_frame, summary_frame, write_csv
from experiments.scenario import build_scenario
from experiments.sweeps import interference_vs_mu_sweep, qualification_sweep
from models.coverage import connect, evaluate
from optimizer.individual import Individual
from optimizer.gatpc import run_gatpc
from optimizer.parallel import default_workers
from utils.config import load_config
from utils.errors import ConfigError, PlacementError, ResourceError

import numpy as np
import pandas as pd

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

logger = logging.getLogger("gatpc")


def _floats(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text: str):
    return [int(v) for v in text.split(",") if v.strip()]


def _load(args):
    cfg = load_config(args.config)
    return build_scenario(cfg, seed=args.seed, mu=args.mu)


def _links(scenario, args):
    return scenario.links(fast=True, memory_cap=int(args.memory_cap_mb * 1024 * 1024))


def _write_solution_files(out: Path, ind, scenario, tables, scheme: str) -> None:
    state = connect(ind.levels, tables)
    write_csv(coverage_map_frame(state, tables), out / "coverage_map.csv")
    write_csv(solution_frame(ind.levels, tables.model), out / "solution.csv")
    write_csv(summary_frame(ind, scenario, scheme), out / "summary.csv")


def _report_best(ind, scheme: str) -> None:
    ev = ind.evaluation
    print(f"✅ {scheme}: objective {ev.objective_pct:.4f}% | interference {ev.interference_dbm:.2f} dBm | "
          f"coverage {100 * ev.coverage_rate:.2f}% | APs on {ind.powered_on}")
    if ev.shortfall > 0:
        print(f"⚠️  coverage target missed by {ev.shortfall} GP(s)")


def cmd_solve(args) -> int:
    scenario = _load(args)
    out = Path(args.out)
    start = time.perf_counter()
    tables = _links(scenario, args)
    result = run_gatpc(tables, scenario.ga, workers=args.workers)
    seconds = time.perf_counter() - start

    _write_solution_files(out, result.best, scenario, tables, "GATPC")
    write_csv(result.trace, out / "trace.csv")
    write_csv(pd.DataFrame([{"scheme": "GATPC", "seconds": seconds}]), out / "timing.csv")
    _report_best(result.best, "GATPC")
    print(f"✅ Wrote coverage_map.csv, solution.csv, summary.csv, trace.csv to {out} ({seconds:.1f} s)")
    return EXIT_OK


def cmd_baseline(args) -> int:
    scenario = _load(args)
    out = Path(args.out)
    tables = _links(scenario, args)
    if args.scheme == "full":
        start = time.perf_counter()
        best = full_power_on(tables, scenario.mu)
        report = ExperimentReport()
        report.add("full power-on", best, seed=scenario.seed, seconds=time.perf_counter() - start)
        scheme = "full power-on"
    else:
        report = rtpc_baseline(scenario, args.runs, tables=tables, workers=args.workers)
        runs = report.records
        pick = runs.sort_values(["shortfall", "objective_pct", "run"]).index[0]
        levels = np.array([int(v) for v in runs.loc[pick, "levels"].split(";")], dtype=np.int64)
        best = Individual(levels=levels, evaluation=evaluate(levels, tables, scenario.mu))
        scheme = "RTPC"
    report.write(out)
    state = connect(best.levels, tables)
    write_csv(coverage_map_frame(state, tables), out / "coverage_map.csv")
    write_csv(solution_frame(best.levels, tables.model), out / "solution.csv")
    print(report.summary_text())
    _report_best(best, scheme)
    print(f"✅ Wrote runs.csv, summary.csv, coverage_map.csv, solution.csv to {out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    scenario = _load(args)
    out = Path(args.out)
    report = compare_schemes(scenario, rtpc_runs=args.runs, workers=args.workers, tables=_links(scenario, args))
    report.write(out, stem="comparison")
    print(report.summary_text())
    print(f"✅ Wrote comparison.csv and summary.csv to {out}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    scenario = _load(args)
    out = Path(args.out)
    mu_values = _floats(args.mu_values)
    if not mu_values or any(not 0 < mu <= 1 for mu in mu_values):
        raise ConfigError("every value must lie in (0, 1]", "--mu-values")
    if args.kind == "qualification":
        df = qualification_sweep(scenario, mu_values, workers=args.workers)
        path = write_csv(df, out / "qualification.csv")
    else:
        rack_counts = _ints(args.rack_counts)
        if not rack_counts or min(rack_counts) < 0:
            raise ConfigError("rack counts must be non-negative integers", "--rack-counts")
        if args.runs_per_point < 1:
            raise ConfigError("must be >= 1", "--runs-per-point")
        df = interference_vs_mu_sweep(scenario, mu_values, rack_counts, args.runs_per_point, workers=args.workers)
        path = write_csv(df, out / "interference.csv")
    print(df.to_string(index=False))
    print(f"✅ Wrote {path}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    scenario = _load(args)
    out = Path(args.out)
    tables = _links(scenario, args)
    best = brute_force_oracle(tables, scenario.mu, cap=args.cap)
    write_csv(solution_frame(best.levels, tables.model), out / "oracle.csv")
    write_csv(summary_frame(best, scenario, "oracle"), out / "summary.csv")
    _report_best(best, "oracle")
    print(f"✅ Wrote oracle.csv and summary.csv to {out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    scenario = _load(args)
    out = Path(args.out)
    report = speedup_benchmark(scenario, workers=args.workers)
    path = write_csv(report.frame(), out / "bench.csv")
    status = "✅" if report.identical else "❌"
    print(f"{status} fast {report.fast.seconds:.2f} s | naive {report.naive.seconds:.2f} s | "
          f"speedup {report.speedup:.1f}x | identical best solutions: {report.identical}")
    print(f"✅ Wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="Scenario YAML file")
    common.add_argument("--out", default="outputs", help="Output directory")
    common.add_argument("--seed", type=int, default=None, help="Override the scenario seed")
    common.add_argument("--workers", type=int, default=default_workers(),
                        help="Worker processes (1 = serial reference)")
    common.add_argument("--mu", type=float, default=None, help="Override the required coverage rate")
    common.add_argument("--memory-cap-mb", type=float, default=2048.0, help="Cap for the lookup tables")
    common.add_argument("--log-level", default="INFO", help="Logging level")

    ap = argparse.ArgumentParser(description="Transmit power control for dense indoor WLANs (GATPC)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="Run GATPC on a scenario")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("baseline", parents=[common], help="Run a benchmark scheme")
    p.add_argument("--scheme", choices=["rtpc", "full"], required=True)
    p.add_argument("--runs", type=int, default=30, help="RTPC repetitions")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("compare", parents=[common], help="GATPC vs RTPC vs full power-on")
    p.add_argument("--runs", type=int, default=30, help="RTPC repetitions")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", parents=[common], help="Qualification-rate or interference sweep")
    p.add_argument("--kind", choices=["qualification", "interference"], required=True)
    p.add_argument("--mu-values", default="0.5,0.6,0.7,0.8,0.85,0.9,0.95,1.0")
    p.add_argument("--rack-counts", default="1,3", help="Interference sweep only")
    p.add_argument("--runs-per-point", type=int, default=30, help="Interference sweep only")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", parents=[common], help="Exhaustive search for small scenarios")
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP, help="Largest search space to enumerate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", parents=[common], help="Fast vs naive wall-clock comparison")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.INFO),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logger.info("%s: %s", args.command, args.config)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as e:
        print(f"❌ Resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except PlacementError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
