"""
Routing arrivals to servers
===========================

With immediate dispatch, the front end sends each job to a server the
moment it arrives. Three routing rules are available: round-robin,
weighted round-robin and uniform random.
"""

from collections import Counter

from farmsched import FarmConfig, JobTrace, Job, RoutingState, random_next, rr_next, simulate, wrr_next

# Round-robin over three servers A, B, C: the fourth request wraps back to A.
state = RoutingState()
print("RR   ", "".join("ABC"[rr_next(state, 3)] for _ in range(6)))

# Weighted round-robin with weights 4, 3, 2. The gcd-stepped cursor
# produces one period of length sum(weights) = 9.
state = RoutingState()
print("WRR  ", "".join("ABC"[wrr_next(state, (4, 3, 2))] for _ in range(9)))

# Equal weights reduce WRR to plain RR.
a, b = RoutingState(), RoutingState()
assert [wrr_next(a, (2, 2, 2)) for _ in range(12)] == [rr_next(b, 3) for _ in range(12)]

# Random routing is uniform and fully determined by the seed.
state = RoutingState(seed=11)
print("RAND ", Counter(random_next(state, 4) for _ in range(100_000)))

# The same rules drive the simulator. Nine identical jobs arrive at once;
# WRR spreads them 4/3/2 and each server works through its own FIFO queue.
trace = JobTrace(tuple(Job(i, 0, 1_000) for i in range(9)))
records = simulate(trace, FarmConfig.for_policy("wrr", 3, weights=[4, 3, 2]))
for server in range(3):
    mine = [r for r in records if r.server_id == server]
    print(f"server {server}: jobs {[r.job_id for r in mine]}, busy until {max(r.completion_us for r in mine)} us")
