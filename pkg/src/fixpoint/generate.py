"""Seeded random networks, local functions and systems.

Every generator takes a ``numpy.random.Generator``; nothing here touches
global or unseeded entropy.
"""

from __future__ import annotations

import numpy as np

from fixpoint.classify import PostClass
from fixpoint.core import Graph, System, complete_graph, cycle_graph, grid_graph, path_graph, star_graph
from fixpoint.errors import InputError
from fixpoint.functions import Circuit, Expr, Formula, LocalFunction, Lookup, input_rows, var

CLASS_BASIS: dict[PostClass, tuple[str, ...]] = {
    PostClass.R0: ("AND", "XOR"),
    PostClass.R1: ("OR", "XNOR"),
    PostClass.L: ("XOR", "CONST0", "CONST1"),
    PostClass.M: ("AND", "OR", "CONST0", "CONST1"),
    PostClass.D: ("D",),
    PostClass.BF: ("AND", "OR", "XOR", "NOT"),
}

DEGREE_MODELS = ("gnp", "tree", "path", "cycle", "star", "grid", "planar", "complete")
REPRS = ("lookup", "formula", "circuit")


def _cls(name) -> PostClass:
    try:
        return PostClass(str(getattr(name, "value", name)).upper())
    except ValueError:
        raise InputError(f"unknown function class {name!r}") from None


# --------------------------------------------------------------------------
# tables

def random_table(rng: np.random.Generator, arity: int, cls="BF") -> Lookup:
    """A random truth table lying in the requested Post class."""
    cls = _cls(cls)
    size = 1 << arity
    if cls is PostClass.BF:
        t = rng.integers(0, 2, size=size)
    elif cls is PostClass.R0:
        t = rng.integers(0, 2, size=size)
        t[0] = 0
    elif cls is PostClass.R1:
        t = rng.integers(0, 2, size=size)
        t[-1] = 1
    elif cls is PostClass.L:
        coeffs = rng.integers(0, 2, size=arity + 1)
        rows = input_rows(arity).astype(np.int64)
        t = (rows @ coeffs[1:] + coeffs[0]) % 2 if arity else np.array([coeffs[0]])
    elif cls is PostClass.M:
        # up-set generated by a few random minimal points
        points = rng.integers(0, size, size=int(rng.integers(0, 4)))
        r = np.arange(size)
        t = np.zeros(size, dtype=np.int64)
        for p in points:
            t |= (r & p) == p
    else:  # self-dual: choose the lower half freely, mirror the rest
        half = rng.integers(0, 2, size=size // 2) if arity else np.array([], dtype=np.int64)
        if arity == 0:
            raise InputError("there is no self-dual function of arity 0")
        t = np.concatenate([half, 1 - half[::-1]])
    return Lookup(np.asarray(t, dtype=np.uint8))


# --------------------------------------------------------------------------
# formulas and circuits

def random_expr(rng: np.random.Generator, arity: int, cls="BF", extra_leaves: int | None = None) -> Expr:
    """Random expression over the class basis that mentions every argument."""
    cls = _cls(cls)
    basis = CLASS_BASIS[cls]
    gates = [s for s in basis if not s.startswith("CONST")]
    consts = [s for s in basis if s.startswith("CONST")]
    if extra_leaves is None:
        extra_leaves = int(rng.integers(0, 3))
    pool: list[Expr] = [var(k) for k in range(arity)]
    pool += [var(int(rng.integers(arity))) for _ in range(extra_leaves)]
    if consts and rng.random() < 0.3:
        pool.append((str(rng.choice(consts)),))
    rng.shuffle(pool)
    if not pool:
        raise InputError("cannot build an expression without arguments")
    while len(pool) > 1 or (pool and rng.random() < 0.15 and "NOT" in gates):
        sym = str(rng.choice(gates))
        if sym == "NOT":
            k = int(rng.integers(len(pool)))
            pool[k] = ("NOT", pool[k])
            continue
        width = 3 if sym == "D" else 2
        take = [pool.pop(int(rng.integers(len(pool)))) for _ in range(min(width, len(pool)))]
        while len(take) < width:
            take.append(take[int(rng.integers(len(take)))])
        pool.append((sym, *take))
    return pool[0]


def random_formula(rng: np.random.Generator, arity: int, cls="BF") -> Formula:
    return Formula(random_expr(rng, arity, cls), arity)


def random_circuit(rng: np.random.Generator, arity: int, cls="BF") -> Circuit:
    """Random gate list over the class basis whose output depends on a spanning set of gates."""
    cls = _cls(cls)
    basis = CLASS_BASIS[cls]
    syms = [s for s in basis if not s.startswith("CONST")]
    gates: list[tuple] = []
    pending = list(range(arity))
    rng.shuffle(pending)
    # fold all inputs together, occasionally reusing earlier entries (fan-out)
    while len(pending) > 1 or not gates:
        sym = str(rng.choice(syms))
        width = {"NOT": 1, "D": 3}.get(sym, 2)
        ins = [pending.pop() for _ in range(min(width, len(pending)))]
        top = arity + len(gates)
        while len(ins) < width:
            ins.append(int(rng.integers(top)))
        gates.append((sym, *ins))
        pending.append(arity + len(gates) - 1)
        if rng.random() < 0.2:
            pending.insert(0, int(rng.integers(arity + len(gates))))
    return Circuit(gates, arity)


def random_function(rng: np.random.Generator, arity: int, cls="BF", repr: str = "lookup") -> LocalFunction:
    if repr == "lookup":
        return random_table(rng, arity, cls)
    if repr == "formula":
        return random_formula(rng, arity, cls)
    if repr == "circuit":
        return random_circuit(rng, arity, cls)
    raise InputError(f"unknown representation {repr!r}")


# --------------------------------------------------------------------------
# networks

def random_graph(rng: np.random.Generator, n: int, model: str = "gnp", p: float = 0.3) -> Graph:
    if n < 1:
        raise InputError("networks need at least one vertex")
    if model == "gnp":
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
        return Graph(n, frozenset(edges))
    if model == "tree":
        return Graph(n, frozenset((int(rng.integers(1, v)), v) for v in range(2, n + 1)))
    if model == "path":
        return path_graph(n)
    if model == "cycle":
        if n < 3:
            raise InputError("cycle model needs n >= 3")
        return cycle_graph(n)
    if model == "star":
        return star_graph(n - 1)
    if model == "complete":
        return complete_graph(n)
    if model == "grid":
        rows = int(np.floor(np.sqrt(n)))
        while n % rows:
            rows -= 1
        return grid_graph(rows, n // rows)
    if model == "planar":
        from fixpoint.graphs import is_planar

        g = random_graph(rng, n, "tree")
        edges = set(g.edges)
        candidates = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if (i, j) not in edges]
        rng.shuffle(candidates)
        for e in candidates:
            if rng.random() < p and is_planar(Graph(n, frozenset(edges | {e}))):
                edges.add(e)
        return Graph(n, frozenset(edges))
    raise InputError(f"unknown degree model {model!r}; expected one of {DEGREE_MODELS}")


def random_system(rng: np.random.Generator, n: int, model: str = "gnp", cls="BF",
                  repr: str = "lookup", p: float = 0.3, graph: Graph | None = None) -> System:
    """Random system; ``repr='mixed'`` draws a representation per vertex."""
    g = graph if graph is not None else random_graph(rng, n, model, p)
    funcs = []
    for v in g.vertices:
        r = str(rng.choice(REPRS)) if repr == "mixed" else repr
        funcs.append(random_function(rng, g.degree(v) + 1, cls, r))
    return System(g, funcs)
