"""Solver benchmark harness for the random instance generator.

Instances are written to disk, solver commands are spawned per instance
with a timeout, and verdicts are parsed from the conventional output
line ("s SATISFIABLE" / "s UNSATISFIABLE") or the 10/20 exit codes.
Any SAT verdict on these instances disproves the generator and is
flagged as a soundness alarm rather than silently recorded.
"""

from __future__ import annotations

import csv
import io
import shlex
import shutil
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParamError
from .randgen import RandomProcessConfig, generate_instance

CSV_COLUMNS = ["instance", "s", "k", "seed", "solver", "verdict",
               "wall-time", "exit-code"]


@dataclass(frozen=True)
class SolverSpec:
    name: str
    template: str  # shell-less command template with an {input} placeholder

    def argv(self, path: str) -> list[str]:
        if "{input}" not in self.template:
            raise ParamError(f"solver template for {self.name} lacks {{input}}")
        return [tok.replace("{input}", path) for tok in shlex.split(self.template)]


def check_solver_available(spec: SolverSpec) -> None:
    exe = shlex.split(spec.template)[0]
    if shutil.which(exe) is None and not Path(exe).exists():
        raise ParamError(f"solver executable {exe!r} not found")


def parse_verdict(stdout: str, returncode: int) -> str:
    for line in stdout.splitlines():
        line = line.strip()
        if line == "s SATISFIABLE":
            return "sat"
        if line == "s UNSATISFIABLE":
            return "unsat"
    if returncode == 10:
        return "sat"
    if returncode == 20:
        return "unsat"
    return "unknown"


def run_solver(spec: SolverSpec, path: str, timeout: float) -> dict:
    start = time.monotonic()
    try:
        proc = subprocess.run(spec.argv(path), capture_output=True, text=True,
                              timeout=timeout)
        wall = time.monotonic() - start
        verdict = parse_verdict(proc.stdout, proc.returncode)
        code = proc.returncode
    except subprocess.TimeoutExpired:
        wall = time.monotonic() - start
        verdict, code = "timeout", -1
    except OSError as exc:
        wall = time.monotonic() - start
        verdict, code = f"error:{exc.__class__.__name__}", -1
    return {"verdict": verdict, "wall-time": round(wall, 3), "exit-code": code}


@dataclass
class BenchmarkResult:
    rows: list[dict] = field(default_factory=list)
    alarms: list[dict] = field(default_factory=list)

    def write_csv(self, sink) -> None:
        if isinstance(sink, (str, Path)):
            with open(sink, "w", newline="") as fh:
                self.write_csv(fh)
            return
        writer = csv.DictWriter(sink, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)

    def csv_text(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def run_benchmark(grid: list[tuple[int, int]], seeds: list[int],
                  solvers: list[SolverSpec], timeout: float,
                  workdir: str, jobs: int = 1) -> BenchmarkResult:
    """One row per (cell, seed, solver), merged back in that order.

    Instance generation is deterministic and cheap; only the solver
    subprocesses run on the pool when jobs > 1.
    """
    for spec in solvers:
        check_solver_available(spec)
    out = BenchmarkResult()
    work = Path(workdir)
    work.mkdir(parents=True, exist_ok=True)
    tasks = []
    for s, k in grid:
        for seed in seeds:
            config = RandomProcessConfig(s=s, k=k, seed=seed)
            instance = generate_instance(config)
            path = work / f"gamma_s{s}_k{k}_seed{seed}.cnf"
            instance.write_dimacs(str(path))
            for spec in solvers:
                tasks.append((path, s, k, seed, spec))
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                lambda t: run_solver(t[4], str(t[0]), timeout), tasks))
    else:
        results = [run_solver(spec, str(path), timeout)
                   for path, _, _, _, spec in tasks]
    for (path, s, k, seed, spec), result in zip(tasks, results):
        row = {"instance": path.name, "s": s, "k": k, "seed": seed,
               "solver": spec.name}
        row.update(result)
        out.rows.append(row)
        if row["verdict"] == "sat":
            out.alarms.append(row)
    return out
