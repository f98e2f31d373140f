"""Local updates, schedules and fixed points on two tiny networks.

A fixed point of the synchronous map stays put under every update schedule,
while other configurations can move differently depending on the order.
"""

import numpy as np

from fixpoint.core import (
    Schedule,
    System,
    config_to_string,
    cycle_graph,
    enumerate_fixed_points,
    path_graph,
    run_schedule,
    trajectory,
)
from fixpoint.functions import AND2, XOR2
from fixpoint.generate import random_system

# vertex 1 computes x1 xor x2, vertex 2 computes x1 and x2
S = System(path_graph(2), [XOR2, AND2])
print("fixed points:", [config_to_string(c) for c in enumerate_fixed_points(S)])

sync = Schedule.synchronous(2, 1)
seq = Schedule.sequential([1, 2])
for name, sched in [("synchronous", sync), ("1 then 2", seq)]:
    print(f"{name:12} from 11 ->", config_to_string(run_schedule(S, sched, (1, 1))))

# a random 6-cycle: fixed points survive arbitrary schedules
rng = np.random.default_rng(9)
C = random_system(rng, 6, graph=cycle_graph(6))
fps = enumerate_fixed_points(C)
print(f"\n6-cycle has {len(fps)} fixed points")
for c in fps:
    for _ in range(200):
        steps = [frozenset(int(v) + 1 for v in np.flatnonzero(rng.random(6) < 0.5)) for _ in range(5)]
        assert run_schedule(C, Schedule(tuple(steps)), c) == c
print("each one survived 200 random schedules")

start = tuple(int(b) for b in rng.integers(0, 2, size=6))
print("\nsynchronous trajectory from", config_to_string(start))
for t, c in enumerate(trajectory(C, Schedule.synchronous(6, 8), start)):
    print(f"  t={t}: {config_to_string(c)}{'  fixed' if c in fps else ''}")
