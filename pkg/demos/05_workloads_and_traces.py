"""
Generating workloads and saving traces
======================================

Workloads are drawn from a seeded xoshiro256** stream, so a spec and seed
always give the same jobs. Traces round-trip through a small CSV format.
"""

import io
import statistics

from farmsched import BatchAtZero, BoundedPareto, Exponential, Poisson, WorkloadSpec, generate, read_trace, write_trace

spec = WorkloadSpec(5, Poisson(mean_interarrival_us=200_000), Exponential(mean_us=150_000), seed=1)
buf = io.StringIO()
write_trace(generate(spec), buf)
print(buf.getvalue())
buf.seek(0)
assert read_trace(buf) == generate(spec)

# Heavy-tailed service times: a bounded Pareto with shape 1.1. Most jobs are
# near the 1 ms floor, yet the largest few dominate the total work.
heavy = BoundedPareto(alpha=1.1, lo_us=1_000, hi_us=10_000_000)
services = sorted(j.service_us for j in generate(WorkloadSpec(100_000, BatchAtZero(), heavy, seed=7)))
top = sum(services[-1000:]) / sum(services)
print(f"analytic mean {heavy.mean():.0f} us, sample mean {statistics.fmean(services):.0f} us")
print(f"median {services[len(services) // 2]} us; largest 1% of jobs carry {top:.0%} of the work")
