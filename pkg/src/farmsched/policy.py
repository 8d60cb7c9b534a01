"""Ordering policies (which waiting job runs next) and routing policies
(which server receives an arrival)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .core import Job, Ordering, OrderingPolicy, ParameterError, compare_ratio
from .rng import Xoshiro256


def _hrrn_beats(a: Job, b: Job, now_us: int) -> bool:
    """True if ``a`` outranks ``b`` under HRRN, ties going to the shorter job."""
    order = compare_ratio(now_us - a.arrival_us, a.service_us, now_us - b.arrival_us, b.service_us)
    if order is not Ordering.EQUAL:
        return order is Ordering.GREATER
    return (a.service_us, a.arrival_us, a.id) < (b.service_us, b.arrival_us, b.id)


def select_next(waiting: Iterable[Job], now_us: int, policy: OrderingPolicy) -> int:
    """Return the id of the job ``policy`` would start at ``now_us``.

    FCFS takes the smallest ``(arrival_us, id)``; SPT the smallest service
    time; HRRN the largest ``wait / service``. SPT breaks ties by earlier
    arrival, then lower id. HRRN breaks ties by shorter service first, so
    jobs that have not waited at all (every ratio zero) go shortest-first.
    """
    jobs = list(waiting)
    if not jobs:
        raise ParameterError("select_next needs a non-empty waiting set")
    for job in jobs:
        if job.arrival_us > now_us:
            raise ParameterError(f"job {job.id} has not arrived by t={now_us}")
    if policy is OrderingPolicy.FCFS:
        return min(jobs, key=lambda j: (j.arrival_us, j.id)).id
    if policy is OrderingPolicy.SPT:
        return min(jobs, key=lambda j: (j.service_us, j.arrival_us, j.id)).id
    if policy is OrderingPolicy.HRRN:
        best = jobs[0]
        for job in jobs[1:]:
            if _hrrn_beats(job, best, now_us):
                best = job
        return best.id
    raise ParameterError(f"unknown ordering policy {policy!r}")


def hrrn_argmax(jobs: Sequence[Job], now_us: int) -> int:
    """Index into ``jobs`` of the HRRN choice.

    Same decision as :func:`select_next`, with the cross-multiplication
    inlined; the engine calls this once per dispatch.
    """
    best_i = 0
    best = jobs[0]
    bw = now_us - best.arrival_us
    bs = best.service_us
    for i in range(1, len(jobs)):
        job = jobs[i]
        w = now_us - job.arrival_us
        lhs = w * bs
        rhs = bw * job.service_us
        if lhs > rhs or (
            lhs == rhs and (job.service_us, job.arrival_us, job.id) < (bs, best.arrival_us, best.id)
        ):
            best_i, best, bw, bs = i, job, w, job.service_us
    return best_i


@dataclass
class RoutingState:
    """Mutable cursor state for RR, WRR and random routing."""

    seed: int = 0
    rr_cursor: int = -1
    wrr_cursor: int = -1
    wrr_current_weight: int = 0
    rng: Xoshiro256 = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = Xoshiro256(self.seed)


def rr_next(state: RoutingState, m: int) -> int:
    if m < 1:
        raise ParameterError("m must be >= 1")
    state.rr_cursor = (state.rr_cursor + 1) % m
    return state.rr_cursor


def wrr_next(state: RoutingState, weights: Sequence[int]) -> int:
    """Classic gcd-stepped weighted round-robin.

    Weights (4, 3, 2) give the period ``0 0 1 0 1 2 0 1 2``.
    """
    if not weights or any(w < 1 for w in weights):
        raise ParameterError("weights must be a non-empty sequence of integers >= 1")
    n = len(weights)
    step = reduce(math.gcd, weights)
    top = max(weights)
    while True:
        state.wrr_cursor = (state.wrr_cursor + 1) % n
        if state.wrr_cursor == 0:
            state.wrr_current_weight -= step
            if state.wrr_current_weight <= 0:
                state.wrr_current_weight = top
        if weights[state.wrr_cursor] >= state.wrr_current_weight:
            return state.wrr_cursor


def random_next(state: RoutingState, m: int) -> int:
    if m < 1:
        raise ParameterError("m must be >= 1")
    return state.rng.randbelow(m)
