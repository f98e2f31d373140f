"""The auto solver on random systems of every class, checked against brute force."""

import time
from collections import Counter

import numpy as np

from fixpoint.core import enumerate_fixed_points
from fixpoint.generate import random_system
from fixpoint.solve import solve_fpe

rng = np.random.default_rng(3)
methods = Counter()
agree = 0
start = time.perf_counter()
for k in range(120):
    cls = ["R0", "R1", "M", "L", "D", "BF"][k % 6]
    repr = ["lookup", "formula", "circuit"][k % 3]
    S = random_system(rng, int(rng.integers(4, 13)), "gnp", cls, repr, 0.3)
    out = solve_fpe(S)
    methods[(cls, out.method.value)] += 1
    agree += out.exists == bool(enumerate_fixed_points(S))
print(f"{agree}/120 verdicts agree with brute force ({time.perf_counter() - start:.1f}s)\n")
for (cls, method), n in sorted(methods.items()):
    print(f"  {cls:3} -> {method:24} x{n}")

# a 40-vertex path is far beyond brute force but has treewidth 1
S = random_system(rng, 40, "path", "BF", "lookup")
out = solve_fpe(S)
print(f"\n40-vertex path: {out.status} via {out.method.value}",
      "" if out.witness is None else "".join(map(str, out.witness.config)))
