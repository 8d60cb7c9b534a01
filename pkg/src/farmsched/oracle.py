"""Exhaustive single-server reference schedules for small batch instances."""

from __future__ import annotations

import itertools
from typing import Sequence

from .core import FarmConfig, Job, JobTrace, ParameterError
from .engine import simulate_central

MAX_ORACLE_JOBS = 9


def _check_batch(jobs: Sequence[Job]) -> None:
    if not 1 <= len(jobs) <= MAX_ORACLE_JOBS:
        raise ParameterError(f"oracle handles 1..{MAX_ORACLE_JOBS} jobs, got {len(jobs)}")
    if len({j.arrival_us for j in jobs}) != 1:
        raise ParameterError("oracle requires all jobs to share one arrival time")


def optimal_batch_order(jobs: Sequence[Job]) -> tuple[tuple[int, ...], int]:
    """Try every single-server order and return ``(order, total_turnaround_us)``.

    ``order`` holds positions into ``jobs``. Among equally good orders the
    lexicographically smallest wins, since permutations are enumerated in
    lexicographic order and only a strict improvement replaces the incumbent.
    """
    _check_batch(jobs)
    n = len(jobs)
    services = [j.service_us for j in jobs]
    # the k-th job served (0-based) is counted in n - k turnarounds
    weights = range(n, 0, -1)
    best_order: tuple[int, ...] | None = None
    best_total = 0
    for order in itertools.permutations(range(n)):
        total = sum(w * services[i] for w, i in zip(weights, order))
        if best_order is None or total < best_total:
            best_order, best_total = order, total
    assert best_order is not None
    return best_order, best_total


def verify_spt_optimal(jobs: Sequence[Job]) -> bool:
    """Does the simulated SPT schedule reach the exhaustive optimum?"""
    _check_batch(jobs)
    records = simulate_central(JobTrace.from_jobs(jobs), FarmConfig.for_policy("srpt", 1))
    return sum(r.turnaround_us for r in records) == optimal_batch_order(jobs)[1]
