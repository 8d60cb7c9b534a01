"""Deterministic simulator of a dispatcher-fronted server farm.

Compares FCFS, non-preemptive SRPT and HRRN ordering at a central dispatcher
queue, and RR / WRR / random routing to per-server FIFO queues.
"""

from .core import (
    CompletionRecord,
    FarmConfig,
    Job,
    JobTrace,
    Ordering,
    OrderingPolicy,
    ParameterError,
    QueueModel,
    RoutingPolicy,
    SummaryMetrics,
    compare_ratio,
)
from .engine import simulate, simulate_central, simulate_immediate
from .metrics import StarvationReport, starvation_report, summarize
from .oracle import optimal_batch_order, verify_spt_optimal
from .policy import RoutingState, random_next, rr_next, select_next, wrr_next
from .workload import (
    BatchAtZero,
    BoundedPareto,
    Exponential,
    Poisson,
    TraceFormatError,
    UniformInt,
    UniformWindow,
    WorkloadSpec,
    generate,
    read_trace,
    write_trace,
)

__version__ = "0.1.0"
