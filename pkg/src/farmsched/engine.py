"""Discrete-event simulation of a dispatcher in front of ``m`` servers.

Two queueing models are supported:

* central queue: waiting jobs stay at the dispatcher and an ordering policy
  picks one whenever a server is idle;
* immediate dispatch: a routing policy sends every arrival straight to a
  server's private FIFO queue.

Servers are homogeneous, serve one job at a time and never preempt.
Events are handled in ``(time, kind, id)`` order with completions ahead of
arrivals. All events sharing a timestamp are applied before any dispatch
decision, so simultaneous arrivals compete on equal terms.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .core import (
    CompletionRecord,
    FarmConfig,
    Job,
    JobTrace,
    OrderingPolicy,
    ParameterError,
    QueueModel,
    RoutingPolicy,
)
from .policy import RoutingState, hrrn_argmax, random_next, rr_next, wrr_next

COMPLETION = 0
ARRIVAL = 1


class EngineEvent(NamedTuple):
    time_us: int
    kind: int  # COMPLETION sorts before ARRIVAL
    key: int  # server id for completions, job id for arrivals
    job_id: int


@dataclass
class ServerState:
    server_id: int
    busy_until_us: int | None = None
    current_job: int | None = None
    local_queue: deque = field(default_factory=deque)

    @property
    def idle(self) -> bool:
        return self.current_job is None


class _DispatchQueue:
    """Waiting room of the central dispatcher for one ordering policy."""

    def __init__(self, policy: OrderingPolicy) -> None:
        self.policy = policy
        self._heap: list[tuple] = []
        self._pool: list[Job] = []

    def __len__(self) -> int:
        return len(self._heap) if self.policy is not OrderingPolicy.HRRN else len(self._pool)

    def push(self, job: Job) -> None:
        if self.policy is OrderingPolicy.FCFS:
            heapq.heappush(self._heap, (job.arrival_us, job.id, job))
        elif self.policy is OrderingPolicy.SPT:
            heapq.heappush(self._heap, (job.service_us, job.arrival_us, job.id, job))
        else:
            self._pool.append(job)

    def pop(self, now_us: int) -> Job:
        if self.policy is not OrderingPolicy.HRRN:
            return heapq.heappop(self._heap)[-1]
        pool = self._pool
        i = hrrn_argmax(pool, now_us)
        job = pool[i]
        pool[i] = pool[-1]
        pool.pop()
        return job


def _check_inputs(trace: JobTrace, config: FarmConfig, model: QueueModel) -> None:
    if len(trace) == 0:
        raise ParameterError("cannot simulate an empty trace")
    if config.queue_model is not model:
        raise ParameterError(f"config uses the {config.queue_model.value} model, expected {model.value}")


def _finish(records: list[CompletionRecord]) -> list[CompletionRecord]:
    records.sort(key=lambda r: (r.completion_us, r.job_id))
    return records


def _initial_events(trace: JobTrace) -> list[EngineEvent]:
    events = [EngineEvent(j.arrival_us, ARRIVAL, j.id, j.id) for j in trace.jobs]
    heapq.heapify(events)
    return events


def simulate_central(trace: JobTrace, config: FarmConfig) -> list[CompletionRecord]:
    """Run the central-queue model; records come back sorted by ``(completion_us, job_id)``."""
    _check_inputs(trace, config, QueueModel.CENTRAL)
    jobs = {j.id: j for j in trace.jobs}
    servers = [ServerState(i) for i in range(config.server_count)]
    idle = list(range(config.server_count))  # min-heap of idle server ids
    queue = _DispatchQueue(config.ordering_policy)
    events = _initial_events(trace)
    records: list[CompletionRecord] = []

    while events:
        now = events[0].time_us
        while events and events[0].time_us == now:
            ev = heapq.heappop(events)
            if ev.kind == COMPLETION:
                server = servers[ev.key]
                server.current_job = None
                server.busy_until_us = None
                heapq.heappush(idle, server.server_id)
            else:
                queue.push(jobs[ev.job_id])
        while idle and len(queue):
            job = queue.pop(now)
            server = servers[heapq.heappop(idle)]
            end = now + job.service_us
            server.current_job = job.id
            server.busy_until_us = end
            records.append(CompletionRecord(job.id, job.arrival_us, job.service_us, server.server_id, now, end))
            heapq.heappush(events, EngineEvent(end, COMPLETION, server.server_id, job.id))
        assert not (idle and len(queue)), "work conservation violated"

    return _finish(records)


def simulate_immediate(trace: JobTrace, config: FarmConfig) -> list[CompletionRecord]:
    """Run the immediate-dispatch model: route on arrival, FIFO at each server."""
    _check_inputs(trace, config, QueueModel.IMMEDIATE)
    m = config.server_count
    jobs = {j.id: j for j in trace.jobs}
    servers = [ServerState(i) for i in range(m)]
    state = RoutingState(seed=config.seed)
    policy = config.routing_policy
    events = _initial_events(trace)
    records: list[CompletionRecord] = []

    def route() -> int:
        if policy is RoutingPolicy.RR:
            return rr_next(state, m)
        if policy is RoutingPolicy.WRR:
            return wrr_next(state, config.weights)
        return random_next(state, m)

    def start(server: ServerState, job: Job, now: int) -> None:
        end = now + job.service_us
        server.current_job = job.id
        server.busy_until_us = end
        records.append(CompletionRecord(job.id, job.arrival_us, job.service_us, server.server_id, now, end))
        heapq.heappush(events, EngineEvent(end, COMPLETION, server.server_id, job.id))

    while events:
        now = events[0].time_us
        while events and events[0].time_us == now:
            ev = heapq.heappop(events)
            if ev.kind == COMPLETION:
                server = servers[ev.key]
                server.current_job = None
                server.busy_until_us = None
                if server.local_queue:
                    start(server, server.local_queue.popleft(), now)
            else:
                server = servers[route()]
                if server.idle:
                    start(server, jobs[ev.job_id], now)
                else:
                    server.local_queue.append(jobs[ev.job_id])
        assert all(s.current_job is not None or not s.local_queue for s in servers), (
            "server idle with a non-empty local queue"
        )

    return _finish(records)


def simulate(trace: JobTrace, config: FarmConfig) -> list[CompletionRecord]:
    if config.queue_model is QueueModel.CENTRAL:
        return simulate_central(trace, config)
    return simulate_immediate(trace, config)
