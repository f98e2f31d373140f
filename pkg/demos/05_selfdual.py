"""Self-dual constructions: the table lift and the D-formula star.

Both keep fixed-point existence while forcing every local function to be
self-dual, so fixed points come in complementary pairs.
"""

import numpy as np

from fixpoint.classify import is_self_dual
from fixpoint.core import complement, config_to_string, enumerate_fixed_points
from fixpoint.functions import AND2, expr_size
from fixpoint.gadgets import CNF, planar_selfdual_lift, sat_to_star_system, sd_dformula, self_dualize
from fixpoint.generate import random_graph, random_system
from fixpoint.graphs import has_vertex_cover_one, is_planar

sd = self_dualize(AND2, 1)
print("AND extended with one guard:", sd.bits, "self-dual:", is_self_dual(sd))

rng = np.random.default_rng(0)
G = random_graph(rng, 4, "planar", 0.6)
S = random_system(rng, 4, graph=G)
L = planar_selfdual_lift(S)
fps = enumerate_fixed_points(L)
print(f"\nlift: {S.n} -> {L.n} vertices, planar {is_planar(L.graph)}, "
      f"all self-dual {all(is_self_dual(f) for f in L.functions)}")
print(f"  original has fixed point: {bool(enumerate_fixed_points(S))}, lift has {len(fps)}")
print("  complements are fixed too:", all(complement(c) in fps for c in fps))

print("\nD-formula sizes grow quadratically at most:")
for m in (1, 2, 4, 8, 16):
    clauses = tuple(tuple(int(v) for v in rng.choice([-1, 1], 3) * rng.integers(1, 7, 3)) for _ in range(m))
    H = CNF(6, clauses)
    print(f"  m={m:2}  |H|={H.size:3}  formula size={expr_size(sd_dformula(H).expr)}")

for text, H in [("(x1 | -x2)", CNF(2, ((1, -2),))), ("(x1) & (-x1)", CNF(1, ((1,), (-1,))))]:
    T = sat_to_star_system(H)
    fps = enumerate_fixed_points(T)
    print(f"\nstar for {text}: {T.n} vertices, vertex cover one {has_vertex_cover_one(T.graph)}, "
          f"{len(fps)} fixed points", [config_to_string(c) for c in fps[:4]])
