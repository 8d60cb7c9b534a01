"""Aggregate completion records into summary and starvation figures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

from .core import CompletionRecord, ParameterError, SummaryMetrics

_SLOWDOWN_SCALE = 10_000


def round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def _decimal4(value: Fraction) -> Decimal:
    """``value`` rounded half-up to exactly four fractional digits."""
    return Decimal(round_half_up(value * _SLOWDOWN_SCALE)).scaleb(-4)


def summarize(records: Sequence[CompletionRecord], policy_label: str, server_count: int) -> SummaryMetrics:
    if not records:
        raise ParameterError("cannot summarize an empty record set")
    n = len(records)
    slowdown = sum((Fraction(r.turnaround_us, r.service_us) for r in records), Fraction(0))
    return SummaryMetrics(
        policy_label=policy_label,
        server_count=server_count,
        n_jobs=n,
        mean_turnaround_us=round_half_up(Fraction(sum(r.turnaround_us for r in records), n)),
        mean_wait_us=round_half_up(Fraction(sum(r.wait_us for r in records), n)),
        max_wait_us=max(r.wait_us for r in records),
        mean_slowdown=_decimal4(slowdown / n),
        makespan_us=max(r.completion_us for r in records) - min(r.arrival_us for r in records),
    )


@dataclass(frozen=True)
class StarvationReport:
    max_wait_us: int
    max_wait_job_id: int
    p99_wait_us: int
    threshold_us: int
    count_wait_exceeding: int  # waits strictly above threshold_us
    max_slowdown: Decimal


def starvation_report(records: Sequence[CompletionRecord], threshold_us: int) -> StarvationReport:
    if not records:
        raise ParameterError("cannot report on an empty record set")
    if threshold_us < 0:
        raise ParameterError("threshold_us must be >= 0")
    waits = sorted(r.wait_us for r in records)
    # nearest rank: the ceil(0.99 n)-th smallest wait
    rank = -(-99 * len(waits) // 100)
    worst = min(records, key=lambda r: (-r.wait_us, r.job_id))
    return StarvationReport(
        max_wait_us=worst.wait_us,
        max_wait_job_id=worst.job_id,
        p99_wait_us=waits[rank - 1],
        threshold_us=threshold_us,
        count_wait_exceeding=sum(1 for w in waits if w > threshold_us),
        max_slowdown=_decimal4(max(Fraction(r.turnaround_us, r.service_us) for r in records)),
    )
