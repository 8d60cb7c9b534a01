"""Seeded job generation and the trace CSV format.

Trace files look like::

    job_id,arrival_us,service_us
    0,0,1000

LF line endings, no trailing whitespace, rows in ``(arrival_us, job_id)``
order. ``read_trace(write_trace(t)) == t`` for every valid trace.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import IO, Union

from .core import Job, JobTrace, ParameterError
from .rng import MASK64, Xoshiro256

TRACE_HEADER = "job_id,arrival_us,service_us"

PathOrFile = Union[str, os.PathLike, IO[str]]


class TraceFormatError(ValueError):
    """A trace file failed validation; ``line`` is 1-based."""

    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


# -- arrival models ---------------------------------------------------------


@dataclass(frozen=True)
class BatchAtZero:
    def __str__(self) -> str:
        return "batch"


@dataclass(frozen=True)
class UniformWindow:
    """Arrivals uniform over the integer range ``[0, window_us)``."""

    window_us: int

    def __post_init__(self) -> None:
        _require(isinstance(self.window_us, int) and self.window_us > 0, "arrival.window_us", "must be an integer > 0")

    def __str__(self) -> str:
        return f"uniform:{self.window_us}"


@dataclass(frozen=True)
class Poisson:
    """Exponential inter-arrival gaps accumulated from t=0."""

    mean_interarrival_us: int

    def __post_init__(self) -> None:
        _require(
            isinstance(self.mean_interarrival_us, int) and self.mean_interarrival_us > 0,
            "arrival.mean_interarrival_us",
            "must be an integer > 0",
        )

    def __str__(self) -> str:
        return f"poisson:{self.mean_interarrival_us}"


# -- service models ---------------------------------------------------------


@dataclass(frozen=True)
class UniformInt:
    lo_us: int
    hi_us: int

    def __post_init__(self) -> None:
        _require(isinstance(self.lo_us, int) and self.lo_us > 0, "service.lo_us", "must be an integer > 0")
        _require(isinstance(self.hi_us, int) and self.hi_us >= self.lo_us, "service.hi_us", "must be an integer >= lo_us")

    def __str__(self) -> str:
        return f"uniform:{self.lo_us},{self.hi_us}"


@dataclass(frozen=True)
class Exponential:
    mean_us: int

    def __post_init__(self) -> None:
        _require(isinstance(self.mean_us, int) and self.mean_us > 0, "service.mean_us", "must be an integer > 0")

    def __str__(self) -> str:
        return f"exp:{self.mean_us}"


@dataclass(frozen=True)
class BoundedPareto:
    alpha: float
    lo_us: int
    hi_us: int

    def __post_init__(self) -> None:
        _require(
            isinstance(self.alpha, (int, float)) and math.isfinite(self.alpha) and self.alpha > 0,
            "service.alpha",
            "must be a finite number > 0",
        )
        _require(isinstance(self.lo_us, int) and self.lo_us > 0, "service.lo_us", "must be an integer > 0")
        _require(isinstance(self.hi_us, int) and self.hi_us > self.lo_us, "service.hi_us", "must be an integer > lo_us")

    def mean(self) -> float:
        """Closed-form mean of the bounded Pareto distribution."""
        a, lo, hi = self.alpha, float(self.lo_us), float(self.hi_us)
        norm = lo**a / (1.0 - (lo / hi) ** a)
        if a == 1.0:
            return norm * math.log(hi / lo)
        return norm * a / (a - 1.0) * (lo ** (1.0 - a) - hi ** (1.0 - a))

    def __str__(self) -> str:
        return f"bpareto:{self.alpha!r},{self.lo_us},{self.hi_us}"


ArrivalModel = Union[BatchAtZero, UniformWindow, Poisson]
ServiceModel = Union[UniformInt, Exponential, BoundedPareto]


@dataclass(frozen=True)
class WorkloadSpec:
    n_jobs: int
    arrival_model: ArrivalModel
    service_model: ServiceModel
    seed: int = 0

    def __post_init__(self) -> None:
        _require(isinstance(self.n_jobs, int) and self.n_jobs >= 1, "n_jobs", "must be an integer >= 1")
        _require(
            isinstance(self.arrival_model, (BatchAtZero, UniformWindow, Poisson)),
            "arrival_model",
            "must be BatchAtZero, UniformWindow or Poisson",
        )
        _require(
            isinstance(self.service_model, (UniformInt, Exponential, BoundedPareto)),
            "service_model",
            "must be UniformInt, Exponential or BoundedPareto",
        )
        _require(isinstance(self.seed, int) and 0 <= self.seed <= MASK64, "seed", "must be an unsigned 64-bit integer")

    def describe(self) -> str:
        return f"n={self.n_jobs} arrival={self.arrival_model} service={self.service_model} seed={self.seed}"


def _require(ok: bool, name: str, message: str) -> None:
    if not ok:
        raise ParameterError(f"{name} {message}")


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def parse_arrival(text: str) -> ArrivalModel:
    """Parse ``batch``, ``uniform:WINDOW_US`` or ``poisson:MEAN_US``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "batch" and not arg:
            return BatchAtZero()
        if kind == "uniform":
            return UniformWindow(int(arg))
        if kind == "poisson":
            return Poisson(int(arg))
    except ValueError as exc:
        raise ParameterError(f"arrival {text!r}: {exc}") from None
    raise ParameterError(f"arrival {text!r}: expected batch, uniform:WINDOW_US or poisson:MEAN_US")


def parse_service(text: str) -> ServiceModel:
    """Parse ``uniform:LO,HI``, ``exp:MEAN`` or ``bpareto:ALPHA,LO,HI``."""
    kind, _, arg = text.partition(":")
    parts = arg.split(",") if arg else []
    try:
        if kind == "uniform" and len(parts) == 2:
            return UniformInt(int(parts[0]), int(parts[1]))
        if kind == "exp" and len(parts) == 1:
            return Exponential(int(parts[0]))
        if kind == "bpareto" and len(parts) == 3:
            return BoundedPareto(float(parts[0]), int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ParameterError(f"service {text!r}: {exc}") from None
    raise ParameterError(f"service {text!r}: expected uniform:LO,HI, exp:MEAN or bpareto:ALPHA,LO,HI")


# -- generation -------------------------------------------------------------


def _sample_service(model: ServiceModel, rng: Xoshiro256) -> int:
    if isinstance(model, UniformInt):
        return rng.randint(model.lo_us, model.hi_us)
    if isinstance(model, Exponential):
        x = rng.exponential(model.mean_us)
    else:
        # inverse CDF of the bounded Pareto
        u = rng.random()
        a = model.alpha
        ratio = (model.lo_us / model.hi_us) ** a
        x = model.lo_us * (1.0 - u * (1.0 - ratio)) ** (-1.0 / a)
        x = min(x, float(model.hi_us))
    return max(1, round_half_up(x))


def generate(spec: WorkloadSpec) -> JobTrace:
    """Draw ``spec.n_jobs`` jobs.

    Draw order per job is arrival then service. Jobs are then stably sorted
    by arrival and renumbered ``0..n-1`` in that order.
    """
    rng = Xoshiro256(spec.seed)
    arrivals_model = spec.arrival_model
    clock = 0.0
    draws: list[tuple[int, int]] = []
    for _ in range(spec.n_jobs):
        if isinstance(arrivals_model, BatchAtZero):
            arrival = 0
        elif isinstance(arrivals_model, UniformWindow):
            arrival = rng.randbelow(arrivals_model.window_us)
        else:
            # round the running sum, not each gap, so rounding never drifts
            clock += rng.exponential(arrivals_model.mean_interarrival_us)
            arrival = round_half_up(clock)
        draws.append((arrival, _sample_service(spec.service_model, rng)))
    draws.sort(key=lambda d: d[0])
    jobs = tuple(Job(i, a, s) for i, (a, s) in enumerate(draws))
    return JobTrace(jobs, spec.describe())


# -- trace I/O --------------------------------------------------------------


def format_trace(trace: JobTrace) -> str:
    lines = [TRACE_HEADER]
    lines.extend(f"{j.id},{j.arrival_us},{j.service_us}" for j in trace.jobs)
    return "\n".join(lines) + "\n"


def write_trace(trace: JobTrace, destination: PathOrFile) -> None:
    text = format_trace(trace)
    if hasattr(destination, "write"):
        destination.write(text)  # type: ignore[union-attr]
        return
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _parse_int(field: str, name: str, line: int) -> int:
    # int() would also accept " 12", "+12" and "1_2"
    if not field or not (field.isdigit() or (field[0] == "-" and field[1:].isdigit())):
        raise TraceFormatError(line, f"{name} is not an integer: {field!r}")
    return int(field)


def parse_trace(text: str, source: str = "") -> JobTrace:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].rstrip("\r") != TRACE_HEADER:
        raise TraceFormatError(1, f"missing header {TRACE_HEADER!r}")
    jobs: list[Job] = []
    seen: set[int] = set()
    prev: tuple[int, int] | None = None
    for lineno, raw in enumerate(lines[1:], start=2):
        row = raw.rstrip("\r")
        fields = row.split(",")
        if len(fields) != 3:
            raise TraceFormatError(lineno, f"expected 3 fields, got {len(fields)}")
        job_id = _parse_int(fields[0], "job_id", lineno)
        arrival = _parse_int(fields[1], "arrival_us", lineno)
        service = _parse_int(fields[2], "service_us", lineno)
        if job_id < 0:
            raise TraceFormatError(lineno, "job_id must be >= 0")
        if arrival < 0:
            raise TraceFormatError(lineno, "arrival_us must be >= 0")
        if service <= 0:
            raise TraceFormatError(lineno, f"service_us must be > 0, got {service}")
        if job_id in seen:
            raise TraceFormatError(lineno, f"duplicate job_id {job_id}")
        key = (arrival, job_id)
        if prev is not None and key < prev:
            raise TraceFormatError(lineno, "row out of (arrival_us, job_id) order")
        seen.add(job_id)
        prev = key
        jobs.append(Job(job_id, arrival, service))
    return JobTrace(tuple(jobs), source)


def read_trace(source: PathOrFile) -> JobTrace:
    if hasattr(source, "read"):
        return parse_trace(source.read())  # type: ignore[union-attr]
    with open(source, encoding="ascii", newline="") as fh:
        text = fh.read()
    return parse_trace(text, os.fspath(source))


def trace_bytes(trace: JobTrace) -> bytes:
    return format_trace(trace).encode("ascii")



def long_job_with_stream(
    long_service_us: int,
    n_short: int,
    short_service_us: int,
    gap_us: int,
    first_short_us: int,
    long_arrival_us: int = 0,
) -> JobTrace:
    """One long job (id 0) plus a regular stream of short jobs (ids 1..n).

    Short job ``k`` arrives at ``first_short_us + k * gap_us``.
    """
    jobs = [Job(0, long_arrival_us, long_service_us)]
    jobs += [Job(k + 1, first_short_us + k * gap_us, short_service_us) for k in range(n_short)]
    return JobTrace.from_jobs(jobs, f"long={long_service_us}@{long_arrival_us} short={n_short}x{short_service_us}/{gap_us}")
