"""Which (function class, graph class, representation) triples are hard?

Prints the full verdict table.  Only classes whose clone contains the
self-dual functions can be hard; the graph class then decides.
"""

from fixpoint.classify import FunctionClassSpec, GraphClassSpec, dichotomy, member_classes
from fixpoint.core import star_graph
from fixpoint.functions import AND2, D3, NOT1, OR2, XOR2
from fixpoint.graphs import K4

for name, f in [("AND", AND2), ("OR", OR2), ("XOR", XOR2), ("NOT", NOT1), ("D", D3)]:
    print(f"{name:4} lies in {sorted(c.value for c in member_classes(f))}")

graphs = {
    "ALL": GraphClassSpec.of("ALL"),
    "PLANAR": GraphClassSpec.of("PLANAR"),
    "VC1": GraphClassSpec.of("VC1"),
    "Forb(K4)": GraphClassSpec.forbidding(K4),
    "Forb(K1,3)": GraphClassSpec.forbidding(star_graph(3)),
}
print()
for mode in ("lookup", "formula"):
    print(f"-- {mode} (circuit mode matches formula mode)")
    print(f"{'':5}" + "".join(f"{g:>30}" for g in graphs))
    for cls in ("R0", "R1", "M", "L", "D", "BF"):
        row = [str(dichotomy(FunctionClassSpec.of(cls), spec, mode)) for spec in graphs.values()]
        print(f"{cls:5}" + "".join(f"{v:>30}" for v in row))
    print()

# a clone given by a basis: AND with NOT generates everything
print("clone of {AND, NOT}:", dichotomy(FunctionClassSpec.generated([AND2, NOT1]), graphs["PLANAR"], "lookup"))
print("clone of {XOR, AND}:", dichotomy(FunctionClassSpec.generated([XOR2, AND2]), graphs["PLANAR"], "lookup"))
