"""Domain types and exact integer-time arithmetic.

All times are integer microseconds. Nothing in the simulator touches floating
point on the scheduling path, so tie-breaks are identical on every platform.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable, Sequence


class ParameterError(ValueError):
    """Invalid argument or configuration value."""


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare_ratio(w1: int, s1: int, w2: int, s2: int) -> Ordering:
    """Order ``w1/s1`` against ``w2/s2`` exactly.

    This is the response-ratio comparison ``1 + w/s``; the shared ``+1`` does
    not affect the ordering and is dropped. Python integers are unbounded, so
    the cross products cannot overflow.
    """
    if s1 <= 0 or s2 <= 0:
        raise ParameterError("service times must be positive")
    if w1 < 0 or w2 < 0:
        raise ParameterError("waiting times must be non-negative")
    lhs = w1 * s2
    rhs = w2 * s1
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


@dataclass(frozen=True)
class Job:
    id: int
    arrival_us: int
    service_us: int

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ParameterError(f"job id must be >= 0, got {self.id}")
        if self.arrival_us < 0:
            raise ParameterError(f"job {self.id}: arrival_us must be >= 0")
        if self.service_us <= 0:
            raise ParameterError(f"job {self.id}: service_us must be > 0")


@dataclass(frozen=True)
class JobTrace:
    """Jobs sorted by ``(arrival_us, id)`` plus a provenance string."""

    jobs: tuple[Job, ...]
    spec_digest: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        seen: set[int] = set()
        prev: tuple[int, int] | None = None
        for job in self.jobs:
            if job.id in seen:
                raise ParameterError(f"duplicate job id {job.id}")
            seen.add(job.id)
            key = (job.arrival_us, job.id)
            if prev is not None and key < prev:
                raise ParameterError(f"job {job.id} out of (arrival_us, id) order")
            prev = key

    @classmethod
    def from_jobs(cls, jobs: Iterable[Job], spec_digest: str = "") -> "JobTrace":
        """Build a trace from jobs in any order."""
        return cls(tuple(sorted(jobs, key=lambda j: (j.arrival_us, j.id))), spec_digest)

    def __len__(self) -> int:
        return len(self.jobs)

    def __iter__(self):
        return iter(self.jobs)

    def __eq__(self, other: object) -> bool:
        # provenance is descriptive only
        if not isinstance(other, JobTrace):
            return NotImplemented
        return self.jobs == other.jobs

    def __hash__(self) -> int:
        return hash(self.jobs)


class QueueModel(enum.Enum):
    CENTRAL = "central"
    IMMEDIATE = "immediate"


class OrderingPolicy(enum.Enum):
    FCFS = "fcfs"
    SPT = "srpt"  # non-preemptive SRPT: remaining time == service time
    HRRN = "hrrn"


class RoutingPolicy(enum.Enum):
    RR = "rr"
    WRR = "wrr"
    RANDOM = "random"


POLICY_NAMES = ("fcfs", "srpt", "hrrn", "rr", "wrr", "random")

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class FarmConfig:
    server_count: int
    queue_model: QueueModel
    ordering_policy: OrderingPolicy = OrderingPolicy.FCFS
    routing_policy: RoutingPolicy = RoutingPolicy.RR
    weights: tuple[int, ...] = ()
    seed: int = 0

    def __post_init__(self) -> None:
        if self.server_count < 1:
            raise ParameterError(f"server_count must be >= 1, got {self.server_count}")
        weights = tuple(self.weights) or (1,) * self.server_count
        if len(weights) != self.server_count:
            raise ParameterError(
                f"weights has {len(weights)} entries, expected {self.server_count}"
            )
        if any(w < 1 for w in weights):
            raise ParameterError("weights must all be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ParameterError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def for_policy(
        cls,
        policy: str,
        server_count: int,
        weights: Sequence[int] | None = None,
        seed: int = 0,
    ) -> "FarmConfig":
        """Config for one of the canonical policy names; the name fixes the queue model."""
        name = policy.lower()
        if name in ("fcfs", "srpt", "hrrn"):
            if weights is not None:
                raise ParameterError("weights only apply to wrr")
            return cls(server_count, QueueModel.CENTRAL, ordering_policy=OrderingPolicy(name), seed=seed)
        if name in ("rr", "wrr", "random"):
            if weights is not None and name != "wrr":
                raise ParameterError("weights only apply to wrr")
            return cls(
                server_count,
                QueueModel.IMMEDIATE,
                routing_policy=RoutingPolicy(name),
                weights=tuple(weights or ()),
                seed=seed,
            )
        raise ParameterError(f"unknown policy {policy!r}; expected one of {', '.join(POLICY_NAMES)}")

    @property
    def policy_label(self) -> str:
        if self.queue_model is QueueModel.CENTRAL:
            return self.ordering_policy.value
        return self.routing_policy.value


@dataclass(frozen=True)
class CompletionRecord:
    job_id: int
    arrival_us: int
    service_us: int
    server_id: int
    start_us: int
    completion_us: int
    wait_us: int = field(init=False)
    turnaround_us: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "wait_us", self.start_us - self.arrival_us)
        object.__setattr__(self, "turnaround_us", self.completion_us - self.arrival_us)


@dataclass(frozen=True)
class SummaryMetrics:
    policy_label: str
    server_count: int
    n_jobs: int
    mean_turnaround_us: int
    mean_wait_us: int
    max_wait_us: int
    mean_slowdown: Decimal
    makespan_us: int

    def summary_line(self) -> str:
        return (
            f"policy={self.policy_label} m={self.server_count} "
            f"mean_turnaround_us={self.mean_turnaround_us} "
            f"mean_wait_us={self.mean_wait_us} max_wait_us={self.max_wait_us} "
            f"mean_slowdown={self.mean_slowdown} makespan_us={self.makespan_us}"
        )
