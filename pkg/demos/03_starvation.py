"""
Starvation of a long job under SRPT, and how HRRN avoids it
===========================================================

A 10 s job competes with a stream of 100 ms jobs on a single server. The
stream arrives back to back, so when the server frees up there is always a
short job waiting. Non-preemptive SRPT keeps choosing the short jobs. HRRN
ranks jobs by (wait + service) / service, so the long job's priority grows
while it waits.
"""

from farmsched import FarmConfig, simulate, starvation_report
from farmsched.workload import long_job_with_stream

trace = long_job_with_stream(10_000_000, n_short=500, short_service_us=100_000, gap_us=100_000, first_short_us=0)

for policy in ("srpt", "hrrn", "fcfs"):
    records = simulate(trace, FarmConfig.for_policy(policy, 1))
    long_job = next(r for r in records if r.job_id == 0)
    report = starvation_report(records, threshold_us=1_000_000)
    print(
        f"{policy:5s} long job waits {long_job.wait_us / 1e6:6.1f} s; "
        f"max wait {report.max_wait_us / 1e6:5.1f} s (job {report.max_wait_job_id}); "
        f"p99 wait {report.p99_wait_us / 1e6:5.1f} s; max slowdown {report.max_slowdown}"
    )

# If the stream alone overloads the server (100 ms of work every 90 ms), the
# short jobs' own waits keep growing and their ratios outrun the long job's,
# so HRRN defers it to the end as well.
overloaded = long_job_with_stream(10_000_000, 500, 100_000, 90_000, first_short_us=0)
for policy in ("srpt", "hrrn"):
    long_job = next(r for r in simulate(overloaded, FarmConfig.for_policy(policy, 1)) if r.job_id == 0)
    print(f"overloaded stream, {policy}: long job waits {long_job.wait_us / 1e6:.1f} s")
