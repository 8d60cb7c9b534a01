"""Independent checks on simulator output.

These re-derive every invariant from the records alone; nothing here calls
into the engine.
"""

from __future__ import annotations

from collections import defaultdict
from functools import reduce
from math import gcd

from farmsched.core import POLICY_NAMES, FarmConfig, Job, JobTrace, OrderingPolicy, QueueModel, RoutingPolicy
from farmsched.policy import select_next
from farmsched.rng import Xoshiro256


def reference_wrr(weights, count):
    """Weighted round-robin by explicit per-round expansion.

    Round r (r = max, max - g, ..., g) lists, in server order, every server
    whose weight is at least r. Concatenating rounds gives one period.
    """
    g = reduce(gcd, weights)
    period = []
    for level in range(max(weights), 0, -g):
        period.extend(i for i, w in enumerate(weights) if w >= level)
    return [period[k % len(period)] for k in range(count)]


def check_records(trace: JobTrace, config: FarmConfig, records) -> list[str]:
    """Return a list of violated invariants (empty when the schedule is sound)."""
    problems: list[str] = []
    jobs = {j.id: j for j in trace.jobs}
    m = config.server_count

    ids = [r.job_id for r in records]
    if sorted(ids) != sorted(jobs):
        problems.append("completeness: record ids differ from trace ids")
        return problems

    if [(r.completion_us, r.job_id) for r in records] != sorted((r.completion_us, r.job_id) for r in records):
        problems.append("records not sorted by (completion_us, job_id)")

    for r in records:
        j = jobs[r.job_id]
        if (r.arrival_us, r.service_us) != (j.arrival_us, j.service_us):
            problems.append(f"job {r.job_id}: fields not copied from trace")
        if r.start_us < r.arrival_us:
            problems.append(f"causality: job {r.job_id} starts before it arrives")
        if r.completion_us != r.start_us + r.service_us:
            problems.append(f"non-preemption: job {r.job_id} interval length != service")
        if r.turnaround_us != r.wait_us + r.service_us:
            problems.append(f"job {r.job_id}: turnaround != wait + service")
        if not 0 <= r.server_id < m:
            problems.append(f"job {r.job_id}: server id {r.server_id} out of range")

    by_server = defaultdict(list)
    for r in records:
        by_server[r.server_id].append(r)
    busy = 0
    for sid, rs in by_server.items():
        rs.sort(key=lambda r: r.start_us)
        for a, b in zip(rs, rs[1:]):
            if b.start_us < a.completion_us:
                problems.append(f"overlap on server {sid}: jobs {a.job_id} and {b.job_id}")
        busy += sum(r.completion_us - r.start_us for r in rs)
    if busy != sum(j.service_us for j in trace.jobs):
        problems.append("busy time != total service")

    if config.queue_model is QueueModel.CENTRAL:
        problems += _check_central(jobs, config, records)
    else:
        problems += _check_immediate(trace, config, records, by_server)
    return problems


def _busy_count(records, t: int) -> int:
    return sum(1 for r in records if r.start_us <= t < r.completion_us)


def _check_central(jobs: dict[int, Job], config: FarmConfig, records) -> list[str]:
    problems = []
    m = config.server_count
    instants = sorted({r.arrival_us for r in records} | {r.completion_us for r in records})
    # work conservation: a job only waits while every server is busy
    for r in records:
        if r.wait_us == 0:
            continue
        for t in instants:
            if r.arrival_us <= t < r.start_us and _busy_count(records, t) < m:
                problems.append(f"work conservation: job {r.job_id} waits at t={t} with an idle server")
                break

    # each pick at an instant must be the policy's choice among jobs still waiting,
    # with picks going to idle servers in increasing id order
    starts = defaultdict(list)
    for r in records:
        starts[r.start_us].append(r)
    for t, started in starts.items():
        waiting = [jobs[r.job_id] for r in records if r.arrival_us <= t <= r.start_us]
        for r in sorted(started, key=lambda r: r.server_id):
            pick = select_next(waiting, t, config.ordering_policy)
            if pick != r.job_id:
                problems.append(f"policy: at t={t} expected job {pick}, engine started {r.job_id}")
                break
            waiting = [j for j in waiting if j.id != pick]

    if config.ordering_policy is OrderingPolicy.FCFS:
        ordered = sorted(records, key=lambda r: (r.arrival_us, r.job_id))
        if any(b.start_us < a.start_us for a, b in zip(ordered, ordered[1:])):
            problems.append("FCFS order preservation violated")
    return problems


def _check_immediate(trace: JobTrace, config: FarmConfig, records, by_server) -> list[str]:
    problems = []
    m = config.server_count
    assigned = {r.job_id: r.server_id for r in records}
    order = [j.id for j in trace.jobs]
    if config.routing_policy is RoutingPolicy.RR:
        expected = [k % m for k in range(len(order))]
    elif config.routing_policy is RoutingPolicy.WRR:
        expected = reference_wrr(config.weights, len(order))
    else:
        expected = None
    if expected is not None and [assigned[i] for i in order] != expected:
        problems.append("routing sequence differs from the reference")

    rank = {jid: k for k, jid in enumerate(order)}
    for sid, rs in by_server.items():
        rs = sorted(rs, key=lambda r: rank[r.job_id])
        free = 0
        for r in rs:
            want = max(r.arrival_us, free)
            if r.start_us != want:
                problems.append(f"server {sid}: job {r.job_id} should start at {want}, started {r.start_us}")
                break
            free = r.completion_us
    return problems


def random_case(rng, max_jobs: int = 40, max_servers: int = 6, policy: str | None = None):
    """A random (trace, config) pair; small integer ranges so ties are common."""
    n = rng.randint(1, max_jobs)
    span = rng.choice_of((0, 50, 500, 5000))
    jobs = [Job(i, rng.randint(0, span), rng.randint(1, rng.choice_of((5, 100, 1000)))) for i in range(n)]
    trace = JobTrace.from_jobs(jobs)
    if policy is None:
        policy = POLICY_NAMES[rng.randbelow(len(POLICY_NAMES))]
    m = rng.randint(1, max_servers)
    weights = [rng.randint(1, 5) for _ in range(m)] if policy == "wrr" else None
    return trace, FarmConfig.for_policy(policy, m, weights=weights, seed=rng.next_u64())


class CaseRng:
    """Xoshiro256 plus a ``choice_of`` convenience for test case generation."""

    def __init__(self, seed: int) -> None:
        self._rng = Xoshiro256(seed)
        self.randint = self._rng.randint
        self.randbelow = self._rng.randbelow
        self.next_u64 = self._rng.next_u64

    def choice_of(self, options):
        return options[self._rng.randbelow(len(options))]
