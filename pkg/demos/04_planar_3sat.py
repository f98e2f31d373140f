"""Planar 3CNF formulas become planar degree-three systems.

The system has a fixed point exactly when the formula is satisfiable; the
fixed points spell out satisfying assignments on the variable cycles.
"""

from fixpoint.core import enumerate_fixed_points
from fixpoint.gadgets import CNF, brute_force_sat, planar3sat_to_system
from fixpoint.graphs import is_planar

formulas = {
    "(x1 | x2 | x3) & (-x1 | -x2 | x3)": CNF(3, ((1, 2, 3), (-1, -2, 3))),
    "(x1) & (-x1)": CNF(1, ((1,), (-1,))),
    "all four 2-clauses over x1, x2": CNF(2, ((1, 2), (1, -2), (-1, 2), (-1, -2))),
    "x1 occurs in three clauses": CNF(3, ((1, 2), (1, -3), (-1, 2, 3))),
}
for text, H in formulas.items():
    S, layout = planar3sat_to_system(H, return_layout=True)
    fps = enumerate_fixed_points(S)
    print(f"{text}")
    print(f"  {S.n} vertices, max degree {S.graph.max_degree()}, planar {is_planar(S.graph)}")
    print(f"  satisfiable {brute_force_sat(H) is not None}, fixed points {len(fps)}")
    if fps:
        c = fps[0]
        x = {i: c[cs[0][1] - 1] for i, cs in layout.copies.items()}
        print(f"  first fixed point reads x = {x}")
