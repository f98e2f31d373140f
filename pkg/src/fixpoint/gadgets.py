"""Executable hardness gadgets.

* :func:`planar3sat_to_system` -- planar 3CNF to a planar lookup-table system
  of maximum degree three whose fixed points are the satisfying assignments.
* :func:`self_dualize` and :func:`planar_selfdual_lift` -- embed arbitrary
  local functions into self-dual ones while keeping the network planar.
* :func:`sd_dformula` and :func:`sat_to_star_system` -- 3CNF to a star network
  whose local functions are formulas over the single ternary basis function D.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from fixpoint.core import Graph, System
from fixpoint.errors import FormatError, InputError
from fixpoint.functions import (
    Expr,
    Formula,
    LocalFunction,
    Lookup,
    and_,
    d,
    input_rows,
    not_,
    or_,
    relabel,
    to_lookup,
    var,
)
from fixpoint.graphs import check_planarity


# --------------------------------------------------------------------------
# CNF

@dataclass(frozen=True)
class CNF:
    """Clauses of signed 1-based variable indices."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        for k, c in enumerate(clauses, 1):
            if not c:
                raise InputError(f"clause {k} is empty")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InputError(f"clause {k}: literal {lit} outside 1..{self.num_vars}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def is_3cnf(self) -> bool:
        return all(len(c) <= 3 for c in self.clauses)

    @property
    def size(self) -> int:
        """Number of literal occurrences."""
        return sum(len(c) for c in self.clauses)

    def evaluate(self, assignment: Sequence[int]) -> int:
        """Truth value under ``assignment[i - 1]`` for variable ``i``."""
        return int(all(any((assignment[abs(l) - 1] == 1) == (l > 0) for l in c) for c in self.clauses))

    def occurrences(self, i: int) -> list[int]:
        """1-based indices of the clauses mentioning variable ``i``."""
        return [j for j, c in enumerate(self.clauses, 1) if any(abs(l) == i for l in c)]


def pad_to_3(H: CNF) -> CNF:
    """Repeat the last literal until every clause has exactly three."""
    if not H.is_3cnf:
        raise InputError("padding needs clauses of at most three literals")
    return CNF(H.num_vars, tuple(c + (c[-1],) * (3 - len(c)) for c in H.clauses))


def brute_force_sat(H: CNF) -> tuple[int, ...] | None:
    for bits in product((0, 1), repeat=H.num_vars):
        if H.evaluate(bits):
            return bits
    return None


def parse_dimacs(text: str) -> CNF:
    num_vars = None
    declared = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("malformed problem line, expected 'p cnf <vars> <clauses>'", f"line {lineno}")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError("non-integer counts in problem line", f"line {lineno}") from None
            continue
        if num_vars is None:
            raise FormatError("clause before the problem line", f"line {lineno}")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", f"line {lineno}") from None
            if lit == 0:
                if not current:
                    raise FormatError("empty clause", f"line {lineno}")
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise FormatError(f"literal {lit} exceeds declared variable count", f"line {lineno}")
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise FormatError("missing problem line")
    if declared is not None and declared != len(clauses):
        raise FormatError(f"problem line declares {declared} clauses, found {len(clauses)}")
    return CNF(num_vars, tuple(clauses))


def to_dimacs(H: CNF) -> str:
    lines = [f"p cnf {H.num_vars} {H.m}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in H.clauses]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# incidence graph and the planar 3SAT gadget

def incidence_graph(H: CNF) -> Graph:
    """Bipartite clause/variable graph.

    Clause ``C_j`` is vertex ``j`` and variable ``x_i`` is vertex ``m + i``, so
    clause vertices come first.
    """
    m = H.m
    edges = {(j, m + abs(l)) for j, c in enumerate(H.clauses, 1) for l in c}
    return Graph(m + H.num_vars, frozenset(edges))


@dataclass(frozen=True)
class GadgetLayout:
    """Vertex bookkeeping of :func:`planar3sat_to_system`."""

    clause_vertex: dict[int, int]  # clause index -> vertex
    copies: dict[int, list[tuple[int, int]]]  # variable -> [(clause index, vertex)] in cycle order


def planar3sat_to_system(H: CNF, return_layout: bool = False):
    """Planar, degree-three system with a fixed point iff ``H`` is satisfiable.

    Each variable with ``r`` occurrences becomes ``r`` copies linked into a
    cycle following the clockwise order of its clauses in a planar embedding
    of the incidence graph, starting at the lowest clause index.  With
    ``r = 2`` the copies share one edge and with ``r = 1`` there is a single
    copy.  A clause vertex outputs 1 when its copies satisfy the clause and
    flips otherwise; a copy keeps its state while it agrees with its cycle
    neighbours and flips otherwise.
    """
    if not H.is_3cnf:
        raise InputError("planar3sat_to_system needs clauses of at most three literals")
    gamma = incidence_graph(H)
    planar, rotation = check_planarity(gamma)
    if not planar:
        raise InputError("the incidence graph of the formula is not planar")
    m = H.m
    clause_vertex = {j: j for j in range(1, m + 1)}
    copies: dict[int, list[tuple[int, int]]] = {}
    next_id = m + 1
    for i in range(1, H.num_vars + 1):
        ring = list(rotation[m + i])
        if not ring:
            continue
        start = ring.index(min(ring))
        ring = ring[start:] + ring[:start]
        copies[i] = []
        for j in ring:
            copies[i].append((j, next_id))
            next_id += 1
    n = next_id - 1
    copy_of = {(i, j): v for i, cs in copies.items() for j, v in cs}

    edges = set()
    for i, cs in copies.items():
        for j, v in cs:
            edges.add((j, v))
        vs = [v for _, v in cs]
        if len(vs) == 2:
            edges.add((vs[0], vs[1]))
        elif len(vs) >= 3:
            for a, b in zip(vs, vs[1:] + vs[:1]):
                edges.add((min(a, b), max(a, b)))
    graph = Graph(n, frozenset(edges))

    functions: dict[int, LocalFunction] = {}
    for j, clause in enumerate(H.clauses, 1):
        nb = graph.closed_neighborhood(j)
        rows = input_rows(len(nb))
        own = rows[:, nb.index(j)]
        sat = np.zeros(rows.shape[0], dtype=bool)
        for lit in clause:
            col = rows[:, nb.index(copy_of[(abs(lit), j)])]
            sat |= (col == 1) if lit > 0 else (col == 0)
        functions[j] = Lookup(np.where(sat, 1, 1 - own))
    for i, cs in copies.items():
        ring = {v for _, v in cs}
        for j, v in cs:
            nb = graph.closed_neighborhood(v)
            rows = input_rows(len(nb))
            own = rows[:, nb.index(v)]
            same = [nb.index(u) for u in nb if u in ring]
            block = rows[:, same]
            agree = np.all(block == block[:, :1], axis=1)
            functions[v] = Lookup(np.where(agree, own, 1 - own))
    S = System(graph, functions)
    if return_layout:
        return S, GadgetLayout(clause_vertex, copies)
    return S


# --------------------------------------------------------------------------
# self-dualisation

def self_dualize(f: LocalFunction, n: int) -> Lookup:
    """Extend ``f`` (arity ``k``) to a self-dual function of arity ``k + n + 1``.

    Arguments are ``(x_1..x_k, y_1..y_n, z)``.  The value is ``f(x)`` when all
    ``y`` are 0, ``not f(not x)`` when all ``y`` are 1, and ``not z`` otherwise.
    """
    if n < 1:
        raise InputError("self_dualize needs at least one guard variable")
    k = f.arity
    t = f.table
    rows = input_rows(k + n + 1).astype(np.int64)
    weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    xi = rows[:, :k] @ weights if k else np.zeros(rows.shape[0], dtype=np.int64)
    ysum = rows[:, k:k + n].sum(axis=1)
    z = rows[:, -1]
    fx = t[xi]
    fnx = 1 - t[(1 << k) - 1 - xi]
    out = np.where(ysum == 0, fx, np.where(ysum == n, fnx, 1 - z))
    return Lookup(out.astype(np.uint8))


def planar_selfdual_lift(S: System) -> System:
    """Planar system with self-dual local functions and the same fixed-point existence.

    Every edge ``{i, j}`` gains a vertex ``e`` adjacent to ``i`` and ``j``;
    edge vertices are numbered ``n+1..n+m`` in sorted edge order.  An edge
    vertex keeps its state.  Vertex ``i`` of degree ``k`` reads its old
    neighbourhood, its ``k`` edge vertices as guards, and its own state as
    the default branch.  An isolated vertex becomes the identity if its old
    function has a fixed bit and negation otherwise.
    """
    if not check_planarity(S.graph)[0]:
        raise InputError("planar_selfdual_lift needs a planar network")
    n = S.n
    old_edges = S.graph.sorted_edges()
    edge_id = {e: n + k + 1 for k, e in enumerate(old_edges)}
    edges = set(old_edges)
    for (i, j), e in edge_id.items():
        edges.add((i, e))
        edges.add((j, e))
    graph = Graph(n + len(old_edges), frozenset(edges))

    functions: list[LocalFunction] = []
    for i in S.graph.vertices:
        f = to_lookup(S.function(i))
        k = S.graph.degree(i)
        if k == 0:
            fixed = any(int(f.table[b]) == b for b in (0, 1))
            functions.append(Lookup("01" if fixed else "10"))
            continue
        sd = self_dualize(f, k)
        nb = graph.closed_neighborhood(i)  # V-part (k+1 entries) then edge vertices (k)
        rows = input_rows(len(nb)).astype(np.int64)
        z = rows[:, nb.index(i)]
        full = np.concatenate([rows, z[:, None]], axis=1)
        idx = full @ (1 << np.arange(full.shape[1] - 1, -1, -1, dtype=np.int64))
        functions.append(Lookup(sd.table[idx]))
    for _ in old_edges:
        functions.append(Lookup("01010101"))
    return System(graph, functions)


# --------------------------------------------------------------------------
# D-formulas

def cnf_expr(H: CNF) -> Expr:
    """``H`` as an AND/OR/NOT expression over ``VAR 0..n-1``."""

    def lit(l: int) -> Expr:
        return var(abs(l) - 1) if l > 0 else not_(var(abs(l) - 1))

    clauses = [lit(c[0]) if len(c) == 1 else or_(*(lit(l) for l in c)) for c in H.clauses]
    return clauses[0] if len(clauses) == 1 else and_(*clauses)


def _negate_leaves(expr: Expr) -> Expr:
    if expr[0] == "VAR":
        return not_(expr)
    return (expr[0],) + tuple(_negate_leaves(c) for c in expr[1:])


def dual_formula(H: CNF) -> Formula:
    """``not H(not x_1, ..., not x_n)``."""
    return Formula(not_(_negate_leaves(cnf_expr(H))), H.num_vars)


def _neg(t: Expr, leaf: Expr) -> Expr:
    # D(a, a, s) is not s; strip an existing negation instead of stacking one
    if t[0] == "D" and t[1] == t[2] and t[1][0] == "VAR":
        return t[3]
    return d(leaf, leaf, t)


def is_dformula(expr: Expr) -> bool:
    if expr[0] == "VAR":
        return True
    return expr[0] == "D" and len(expr) == 4 and all(is_dformula(c) for c in expr[1:])


def sd_dformula(H: CNF) -> Formula:
    """D-only formula for ``(H and z) or (dual(H) and not z)``.

    Variables ``x_1..x_n`` are ``VAR 0..n-1`` and ``z`` is ``VAR n``.  Every
    clause must have exactly three literals (see :func:`pad_to_3`).  Clause
    lists are halved recursively, so the nesting depth is logarithmic in the
    number of clauses.
    """
    if H.m == 0:
        raise InputError("sd_dformula needs at least one clause")
    for k, c in enumerate(H.clauses, 1):
        if len(c) != 3:
            raise InputError(f"clause {k} has {len(c)} literals; pad to exactly three first")
    z = var(H.num_vars)
    not_z = _neg(z, z)

    def lit(l: int) -> Expr:
        x = var(abs(l) - 1)
        return x if l > 0 else _neg(x, z)

    def build(clauses: Sequence[tuple[int, ...]]) -> Expr:
        if len(clauses) == 1:
            l1, l2, l3 = clauses[0]
            n1, n2, n3 = (_neg(lit(l), z) for l in (l1, l2, l3))
            return _neg(d(not_z, d(z, n1, n2), d(z, n1, n3)), z)
        half = len(clauses) // 2
        left, right = build(clauses[:half]), build(clauses[half:])
        return d(not_z, _neg(left, z), _neg(right, z))

    return Formula(build(H.clauses), H.num_vars + 1)


def selfdual_extension_table(H: CNF) -> np.ndarray:
    """Reference truth table of ``(H and z) or (dual(H) and not z)`` over ``(x_1..x_n, z)``."""
    n = H.num_vars
    rows = input_rows(n + 1)
    cols = [rows[:, k] for k in range(n)]
    h = Formula(cnf_expr(H), n).columns(cols) if n else np.full(rows.shape[0], H.evaluate(()))
    dh = dual_formula(H).columns(cols) if n else 1 - h
    z = rows[:, n]
    return ((h & z) | (dh & (1 - z))).astype(np.uint8)


def widen_with_guard(H: CNF) -> CNF:
    """3CNF equivalent, for ``x0 = 1``, to ``H or not x0``.

    Variable ``x0`` is 1, ``x_i`` is ``i + 1`` and the fresh split variable of
    clause ``j`` is ``n + 1 + j``.  Clause ``(l1 or l2 or l3)`` widens to
    ``(l1 or l2 or l3 or not x0)`` and splits into
    ``(l1 or l2 or y_j) and (not y_j or l3 or not x0)``.
    """
    P = pad_to_3(H)
    n, m = P.num_vars, P.m

    def shift(l: int) -> int:
        return l + 1 if l > 0 else l - 1

    clauses = []
    for j, (l1, l2, l3) in enumerate(P.clauses, 1):
        y = n + 1 + j
        clauses.append((shift(l1), shift(l2), y))
        clauses.append((-y, shift(l3), -1))
    return CNF(n + m + 1, tuple(clauses))


def _leaf_identity() -> Formula:
    c, s = var(0), var(1)
    return Formula(d(c, c, d(c, c, s)), 2)


def _leaf_copy_centre() -> Formula:
    c = var(0)
    return Formula(d(c, c, d(c, c, c)), 2)


def sat_to_star_system(H: CNF) -> System:
    """Star network with D-formula local functions; a fixed point exists iff ``H`` is satisfiable.

    Vertex 1 is the centre.  Vertex 2 carries ``x0`` and vertex ``k + 2``
    carries variable ``k`` of :func:`widen_with_guard` (original variables
    first, then one split variable per clause).  The centre computes the
    self-dual extension of the widened formula with its own state as ``z``.
    Leaves keep their state, except the ``x0`` leaf, which copies the centre:
    without that link ``x0 = 0`` would satisfy every widened clause.
    """
    if not H.is_3cnf:
        raise InputError("sat_to_star_system needs clauses of at most three literals")
    if H.m == 0:
        raise InputError("sat_to_star_system needs at least one clause")
    wide = widen_with_guard(H)
    total = wide.num_vars  # x0 .. x_{n+m}
    sd = sd_dformula(wide)
    # formula vars 0..total-1 are x0..; var `total` is z. Centre neighbourhood is (1, 2, ..., total+1).
    mapping = list(range(1, total + 1)) + [0]
    centre = Formula(relabel(sd.expr, mapping), total + 1)
    graph = Graph(total + 1, frozenset((1, v) for v in range(2, total + 2)))
    functions: list[LocalFunction] = [centre, _leaf_copy_centre()]
    functions += [_leaf_identity() for _ in range(total - 1)]
    return System(graph, functions)


def random_3cnf(rng: np.random.Generator, num_vars: int, num_clauses: int,
                width: Iterable[int] = (3,)) -> CNF:
    widths = list(width)
    clauses = []
    for _ in range(num_clauses):
        w = int(rng.choice(widths))
        vs = rng.integers(1, num_vars + 1, size=w)
        signs = rng.choice([-1, 1], size=w)
        clauses.append(tuple(int(v * s) for v, s in zip(vs, signs)))
    return CNF(num_vars, tuple(clauses))
