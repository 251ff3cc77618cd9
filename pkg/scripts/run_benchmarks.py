#!/usr/bin/env python3
"""Experiment driver: random always-unsatisfiable instances vs solvers.

Generates a grid of instances, runs every configured solver over them
and writes one CSV row per (instance, solver).  Any SAT verdict is a
soundness alarm and makes the run fail loudly.

Example:
    python3 scripts/run_benchmarks.py --grid 2:12,2:24 --seeds 10 \
        --solver-cmd "python3 scripts/cdcl_solve.py {input}" \
        --timeout 120 --out results.csv
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gammakit.bench import SolverSpec, run_benchmark  # noqa: E402

DEFAULT_SOLVER = (f"{sys.executable} "
                  f"{Path(__file__).resolve().parent / 'cdcl_solve.py'} {{input}}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", default="2:12,2:24", help="comma list of s:k cells")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--solver-cmd", action="append", default=None)
    ap.add_argument("--timeout", type=float, default=120.0)
    ap.add_argument("--jobs", type=int, default=2)
    ap.add_argument("--workdir", default="bench-instances")
    ap.add_argument("--out", default="results.csv")
    args = ap.parse_args()

    grid = [tuple(int(x) for x in cell.split(":")) for cell in args.grid.split(",")]
    solvers = [SolverSpec(f"solver{i}", tmpl) for i, tmpl in
               enumerate(args.solver_cmd or [DEFAULT_SOLVER], start=1)]
    result = run_benchmark(grid, list(range(args.seeds)), solvers,
                           args.timeout, args.workdir, jobs=args.jobs)
    result.write_csv(args.out)
    verdicts = {}
    for row in result.rows:
        verdicts[row["verdict"]] = verdicts.get(row["verdict"], 0) + 1
    print(f"{len(result.rows)} runs -> {verdicts}; results in {args.out}")
    if result.alarms:
        print(f"SOUNDNESS ALARM: {len(result.alarms)} SAT verdicts "
              f"on always-unsatisfiable instances", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
