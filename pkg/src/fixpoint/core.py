"""Boolean dynamical systems: networks, systems, schedules and fixed points.

Vertices are numbered ``1..n``.  A configuration is a tuple of ``n`` bits
where position ``i - 1`` holds the state of vertex ``i``.  The local function
of vertex ``i`` reads the closed neighbourhood ``N0(i)`` (``i`` plus its
neighbours) in ascending vertex order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from fixpoint.errors import BudgetExceeded, InputError
from fixpoint.functions import LocalFunction, eval_local

Config = tuple[int, ...]

DEFAULT_BRUTE_FORCE_CAP = 25
_CHUNK_BITS = 20


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InputError(f"edge {{{u}, {v}}} has an endpoint outside 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        edges = [tuple(e) for e in edges]
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {{{u}, {v}}}")
            seen.add(key)
        return cls(n, frozenset(edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self.adjacency[i]

    def closed_neighborhood(self, i: int) -> tuple[int, ...]:
        """``N0(i)`` in ascending order; this is the argument order of ``f_i``."""
        return tuple(sorted(self.adjacency[i] + (i,)))

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def isolated_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self.adjacency[v]]

    def induced(self, keep: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``keep``, relabelled ``1..len(keep)`` in the given order."""
        index = {v: k + 1 for k, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), frozenset(edges)), index

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g) -> tuple["Graph", dict]:
        nodes = sorted(g.nodes)
        index = {v: k + 1 for k, v in enumerate(nodes)}
        return cls(len(nodes), frozenset((index[u], index[v]) for u, v in g.edges)), index


# --------------------------------------------------------------------------
# named graphs

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(1, n + 1), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, frozenset((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a simple cycle needs at least three vertices")
    return Graph(n, frozenset([(i, i + 1) for i in range(1, n)] + [(1, n)]))


def star_graph(k: int) -> Graph:
    """``K_{1,k}`` with centre 1."""
    return Graph(k + 1, frozenset((1, i) for i in range(2, k + 2)))


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r: int, c: int) -> int:
        return r * cols + c + 1

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph(rows * cols, frozenset(edges))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return Graph(g.n + h.n, g.edges | frozenset(shifted))


# --------------------------------------------------------------------------
# systems

class System:
    """A network together with one local function per vertex."""

    def __init__(self, graph: Graph, functions: Mapping[int, LocalFunction] | Sequence[LocalFunction]):
        if isinstance(functions, Mapping):
            missing = set(graph.vertices) - set(functions)
            if missing:
                raise InputError(f"no local function for vertices {sorted(missing)}")
            funcs = tuple(functions[v] for v in graph.vertices)
        else:
            funcs = tuple(functions)
            if len(funcs) != graph.n:
                raise InputError(f"expected {graph.n} local functions, got {len(funcs)}")
        for v, f in zip(graph.vertices, funcs):
            if f.arity != graph.degree(v) + 1:
                raise InputError(
                    f"vertex {v}: function arity {f.arity} != degree + 1 = {graph.degree(v) + 1}"
                )
        self.graph = graph
        self.functions = funcs
        self._nbhd = tuple(graph.closed_neighborhood(v) for v in graph.vertices)

    @property
    def n(self) -> int:
        return self.graph.n

    def function(self, i: int) -> LocalFunction:
        return self.functions[i - 1]

    def neighborhood(self, i: int) -> tuple[int, ...]:
        return self._nbhd[i - 1]

    def local_update(self, i: int, c: Sequence[int]) -> int:
        return eval_local(self.functions[i - 1], [c[j - 1] for j in self._nbhd[i - 1]])

    def representations(self) -> set[str]:
        return {f.kind for f in self.functions}

    def with_functions(self, functions: Sequence[LocalFunction]) -> "System":
        return System(self.graph, functions)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, System)
            and self.graph == other.graph
            and self.functions == other.functions
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.functions))

    def __repr__(self) -> str:
        return f"System(n={self.n}, m={self.graph.m}, reprs={sorted(self.representations())})"


@dataclass(frozen=True)
class Schedule:
    """Sequence of simultaneously updated vertex sets; step 1 is applied first."""

    steps: tuple[frozenset, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(frozenset(int(v) for v in s) for s in self.steps))

    @classmethod
    def synchronous(cls, n: int, rounds: int) -> "Schedule":
        return cls(tuple(frozenset(range(1, n + 1)) for _ in range(rounds)))

    @classmethod
    def sequential(cls, order: Sequence[int]) -> "Schedule":
        return cls(tuple(frozenset([v]) for v in order))

    def validate(self, S: System) -> None:
        for t, step in enumerate(self.steps, 1):
            bad = [v for v in step if not 1 <= v <= S.n]
            if bad:
                raise InputError(f"schedule step {t} names unknown vertices {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.steps)


def _check_subset(S: System, U: Iterable[int]) -> frozenset:
    U = frozenset(int(v) for v in U)
    bad = [v for v in U if not 1 <= v <= S.n]
    if bad:
        raise InputError(f"vertices {sorted(bad)} are not in the system")
    return U


def _check_config(S: System, c: Sequence[int]) -> Config:
    if len(c) != S.n:
        raise InputError(f"configuration has length {len(c)}, system has {S.n} vertices")
    c = tuple(int(x) for x in c)
    if any(x not in (0, 1) for x in c):
        raise InputError("configuration entries must be 0 or 1")
    return c


def global_step(S: System, U: Iterable[int], c: Sequence[int]) -> Config:
    """Update the vertices in ``U`` simultaneously; everyone else keeps state."""
    U = _check_subset(S, U)
    c = _check_config(S, c)
    return tuple(S.local_update(i, c) if i in U else c[i - 1] for i in S.graph.vertices)


def run_schedule(S: System, sched: Schedule, c: Sequence[int]) -> Config:
    sched.validate(S)
    c = _check_config(S, c)
    for step in sched.steps:
        c = global_step(S, step, c)
    return c


def trajectory(S: System, sched: Schedule, c: Sequence[int]) -> list[Config]:
    """The start configuration followed by the configuration after every step."""
    sched.validate(S)
    out = [_check_config(S, c)]
    for step in sched.steps:
        out.append(global_step(S, step, out[-1]))
    return out


def is_local_fixed_point(S: System, U: Iterable[int], c: Sequence[int]) -> bool:
    U = _check_subset(S, U)
    c = _check_config(S, c)
    return all(S.local_update(i, c) == c[i - 1] for i in U)


def is_fixed_point(S: System, c: Sequence[int]) -> bool:
    return is_local_fixed_point(S, S.graph.vertices, c)


def complement(c: Sequence[int]) -> Config:
    return tuple(1 - int(x) for x in c)


def config_from_string(text: str) -> Config:
    text = text.strip().replace(",", "").replace(" ", "")
    if set(text) - {"0", "1"}:
        raise InputError(f"configuration {text!r} must consist of 0/1 characters")
    return tuple(int(ch) for ch in text)


def config_to_string(c: Sequence[int]) -> str:
    return "".join(str(int(x)) for x in c)


# --------------------------------------------------------------------------
# brute force

def _fixed_mask(S: System, ints: np.ndarray) -> np.ndarray:
    n = S.n
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = ((ints[:, None] >> shifts) & 1).astype(np.uint8)
    alive = np.arange(len(ints))
    # evaluate cheapest functions first, shrinking the candidate set as we go
    order = sorted(S.graph.vertices, key=lambda v: S.function(v).arity)
    for v in order:
        if alive.size == 0:
            break
        sub = bits[alive]
        cols = [sub[:, j - 1] for j in S.neighborhood(v)]
        ok = S.function(v).columns(cols) == sub[:, v - 1]
        alive = alive[ok]
    mask = np.zeros(len(ints), dtype=bool)
    mask[alive] = True
    return mask


def iter_fixed_points(S: System, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> Iterator[Config]:
    """Yield every fixed point in lexicographic order (vertex 1 most significant)."""
    n = S.n
    if n > cap:
        raise BudgetExceeded(
            f"brute-force enumeration refused: {n} vertices exceeds the cap of {cap}",
            budget="brute_force_cap",
            limit=cap,
        )
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, chunk):
        ints = np.arange(start, min(start + chunk, total), dtype=np.int64)
        for x in ints[_fixed_mask(S, ints)]:
            yield tuple(int(b) for b in format(int(x), f"0{n}b")) if n else ()


def enumerate_fixed_points(S: System, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> list[Config]:
    return list(iter_fixed_points(S, cap))


def has_fixed_point_brute(S: System, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> bool:
    return next(iter_fixed_points(S, cap), None) is not None
