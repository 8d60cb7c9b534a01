"""Policy x server-count comparison grids over seeded workloads.

Each seed yields one trace that every grid cell reuses, so differences
between cells come from the policy and the farm size only.

Config files are JSON::

    {
      "policies": ["fcfs", "srpt", "hrrn"],
      "server_counts": [1, 6, 15, 25],
      "workload": {"n_jobs": 100,
                   "arrival": "uniform:10000000",
                   "service": "uniform:1000,2000000"},
      "seeds": [1, 2, 3],
      "output_dir": "results/paper_scenario"
    }

``arrival`` and ``service`` use the same syntax as the ``gen`` command.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .core import POLICY_NAMES, FarmConfig, ParameterError, SummaryMetrics
from .engine import simulate
from .metrics import round_half_up, summarize
from .rng import MASK64
from .workload import WorkloadSpec, generate, parse_arrival, parse_service, trace_bytes

THREADS_ENV = "FARMSCHED_THREADS"

RESULT_COLUMNS = (
    "seed",
    "policy",
    "servers",
    "mean_turnaround_us",
    "mean_wait_us",
    "max_wait_us",
    "mean_slowdown",
    "makespan_us",
    "trace_digest",
)


@dataclass(frozen=True)
class ExperimentConfig:
    policies: tuple[str, ...]
    server_counts: tuple[int, ...]
    workload: WorkloadSpec
    seeds: tuple[int, ...]
    output_dir: Path

    def __post_init__(self) -> None:
        if not self.policies or not self.server_counts or not self.seeds:
            raise ParameterError("policies, server_counts and seeds must be non-empty")
        for p in self.policies:
            if p not in POLICY_NAMES:
                raise ParameterError(f"unknown policy {p!r}")
        if len(set(self.policies)) != len(self.policies):
            raise ParameterError("policies contains duplicates")
        for m in self.server_counts:
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise ParameterError(f"server count must be an integer >= 1, got {m!r}")
        for s in self.seeds:
            if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s <= MASK64:
                raise ParameterError(f"seed must be an unsigned 64-bit integer, got {s!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ParameterError("config must be a JSON object")
        required = {"policies", "server_counts", "workload", "seeds", "output_dir"}
        missing = required - data.keys()
        if missing:
            raise ParameterError(f"config missing fields: {', '.join(sorted(missing))}")
        unknown = data.keys() - required
        if unknown:
            raise ParameterError(f"config has unknown fields: {', '.join(sorted(unknown))}")
        wl = data["workload"]
        if not isinstance(wl, dict) or set(wl) != {"n_jobs", "arrival", "service"}:
            raise ParameterError("workload must have exactly n_jobs, arrival and service")
        if not isinstance(wl["arrival"], str) or not isinstance(wl["service"], str):
            raise ParameterError("workload.arrival and workload.service must be strings")
        for key in ("policies", "server_counts", "seeds"):
            if not isinstance(data[key], list):
                raise ParameterError(f"{key} must be a list")
        if not isinstance(data["output_dir"], str):
            raise ParameterError("output_dir must be a string")
        workload = WorkloadSpec(
            n_jobs=wl["n_jobs"],
            arrival_model=parse_arrival(wl["arrival"]),
            service_model=parse_service(wl["service"]),
        )
        return cls(
            policies=tuple(str(p).lower() for p in data["policies"]),
            server_counts=tuple(data["server_counts"]),
            workload=workload,
            seeds=tuple(data["seeds"]),
            output_dir=Path(data["output_dir"]),
        )

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ExperimentConfig":
        """Read a JSON config; a relative ``output_dir`` resolves against the working directory."""
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParameterError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_dict(data)


@dataclass(frozen=True)
class CellResult:
    seed: int
    summary: SummaryMetrics
    trace_digest: str

    def csv_row(self) -> str:
        s = self.summary
        return ",".join(
            str(v)
            for v in (
                self.seed,
                s.policy_label,
                s.server_count,
                s.mean_turnaround_us,
                s.mean_wait_us,
                s.max_wait_us,
                s.mean_slowdown,
                s.makespan_us,
                self.trace_digest,
            )
        )


def run_seed(
    workload: WorkloadSpec, seed: int, policies: Sequence[str], server_counts: Sequence[int]
) -> list[CellResult]:
    """All grid cells for one seed, in (policy, m) order, on a single trace."""
    spec = WorkloadSpec(workload.n_jobs, workload.arrival_model, workload.service_model, seed)
    trace = generate(spec)
    digest = hashlib.sha256(trace_bytes(trace)).hexdigest()[:16]
    cells = []
    for policy in policies:
        for m in server_counts:
            config = FarmConfig.for_policy(policy, m, seed=seed)
            cells.append(CellResult(seed, summarize(simulate(trace, config), policy, m), digest))
    return cells


def thread_count(default: int | None = None) -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return default if default is not None else (os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ParameterError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}")
    return n


def run_experiment(config: ExperimentConfig, threads: int | None = None) -> list[CellResult]:
    """Run every cell; results are ordered by (seed order, policy, m) regardless of threads."""
    workers = min(threads if threads is not None else thread_count(), len(config.seeds))
    args = [(config.workload, s, config.policies, config.server_counts) for s in config.seeds]
    if workers <= 1:
        per_seed = [run_seed(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_seed = list(pool.map(run_seed, *zip(*args)))
    return [cell for cells in per_seed for cell in cells]


def averaged_grid_ms(config: ExperimentConfig, cells: Sequence[CellResult]) -> dict[tuple[str, int], int]:
    """Seed-averaged mean turnaround per (policy, m), in whole milliseconds."""
    totals: dict[tuple[str, int], int] = {}
    for c in cells:
        key = (c.summary.policy_label, c.summary.server_count)
        totals[key] = totals.get(key, 0) + c.summary.mean_turnaround_us
    k = len(config.seeds)
    return {key: round_half_up(Fraction(total, k * 1000)) for key, total in totals.items()}


def _table(title: str, policies: Sequence[str], server_counts: Sequence[int], value) -> list[str]:
    width = max(8, *(len(p) for p in policies))
    lines = [title, "servers".ljust(width) + "".join(f"{m:>10}" for m in server_counts)]
    for p in policies:
        lines.append(p.ljust(width) + "".join(f"{value(p, m):>10}" for m in server_counts))
    return lines


def format_averaged_grid(config: ExperimentConfig, cells: Sequence[CellResult]) -> str:
    grid = averaged_grid_ms(config, cells)
    title = f"mean turnaround (ms), averaged over {len(config.seeds)} seed(s)"
    return "\n".join(_table(title, config.policies, config.server_counts, lambda p, m: grid[p, m])) + "\n"


def format_per_seed_grids(config: ExperimentConfig, cells: Sequence[CellResult]) -> str:
    by_key = {(c.seed, c.summary.policy_label, c.summary.server_count): c for c in cells}
    blocks = []
    for seed in config.seeds:
        digest = by_key[seed, config.policies[0], config.server_counts[0]].trace_digest
        title = f"seed {seed} (trace {digest}): mean turnaround (us)"
        blocks.append(
            "\n".join(
                _table(
                    title,
                    config.policies,
                    config.server_counts,
                    lambda p, m: by_key[seed, p, m].summary.mean_turnaround_us,
                )
            )
        )
    return "\n\n".join(blocks) + "\n"


def format_results_csv(cells: Sequence[CellResult]) -> str:
    return "\n".join([",".join(RESULT_COLUMNS), *(c.csv_row() for c in cells)]) + "\n"


def write_outputs(config: ExperimentConfig, cells: Sequence[CellResult]) -> dict[str, Path]:
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "results.csv": format_results_csv(cells),
        "grid_per_seed.txt": format_per_seed_grids(config, cells),
        "grid_mean_ms.txt": format_averaged_grid(config, cells),
    }
    paths = {}
    for name, text in files.items():
        path = out / name
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        paths[name] = path
    return paths
