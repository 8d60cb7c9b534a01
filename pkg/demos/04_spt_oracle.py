"""
SRPT against an exhaustive search
=================================

With every job present at t=0 and one server, serving the shortest job first
minimises total turnaround time. Here the simulator's SRPT schedule is
compared with a brute-force search over all orders.
"""

from farmsched import FarmConfig, Job, JobTrace, optimal_batch_order, simulate, verify_spt_optimal
from farmsched.rng import Xoshiro256

jobs = [Job(0, 0, 3000), Job(1, 0, 1000), Job(2, 0, 2000)]
order, total = optimal_batch_order(jobs)
print(f"best order {order}, total turnaround {total} us")

for policy in ("fcfs", "srpt", "hrrn"):
    records = simulate(JobTrace(tuple(jobs)), FarmConfig.for_policy(policy, 1))
    print(f"{policy:5s} order {[r.job_id for r in records]}, total {sum(r.turnaround_us for r in records)} us")

rng = Xoshiro256(3)
instances = [[Job(i, 0, rng.randint(1, 10_000)) for i in range(rng.randint(2, 8))] for _ in range(100)]
print(f"SRPT optimal on {sum(map(verify_spt_optimal, instances))}/100 random instances")
