"""Binary CSPs: the fixed-point reduction and tree-decomposition solving.

``build_csp`` turns a system without isolated vertices into a CSP whose
variables are the vertices.  The domain of vertex ``i`` holds every
assignment ``I`` of its closed neighbourhood that ``f_i`` leaves unchanged,
stored as ``(row, i)`` where ``row`` is the lookup-table row of ``I``.  Each
network edge ``{i, j}`` becomes a constraint that the two local assignments
agree on ``N0(i) & N0(j)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

from fixpoint.core import Config, Graph, System
from fixpoint.errors import BudgetExceeded, ContractError, InputError
from fixpoint.graphs import TreeDecomposition

DEFAULT_TABLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class Constraint:
    scope: tuple[Hashable, Hashable]
    allowed: frozenset


@dataclass(frozen=True, eq=True)
class CSPInstance:
    variables: tuple
    domains: Mapping[Hashable, tuple]
    constraints: tuple[Constraint, ...]
    # closed neighbourhoods of the source system, when built by ``build_csp``
    neighborhoods: Mapping[Hashable, tuple] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        vs = set(self.variables)
        if set(self.domains) != vs:
            raise InputError("every variable needs exactly one domain")
        for c in self.constraints:
            u, v = c.scope
            if u not in vs or v not in vs or u == v:
                raise InputError(f"constraint scope {c.scope} is not a pair of distinct variables")
            du, dv = set(self.domains[u]), set(self.domains[v])
            for a, b in c.allowed:
                if a not in du or b not in dv:
                    raise InputError(f"constraint on {c.scope} allows a value outside its domains")

    __hash__ = None  # type: ignore[assignment]

    def satisfies(self, assignment: Mapping) -> bool:
        if any(assignment.get(v) not in self.domains[v] for v in self.variables):
            return False
        return all((assignment[c.scope[0]], assignment[c.scope[1]]) in c.allowed for c in self.constraints)


# --------------------------------------------------------------------------
# the reduction

def _position_bits(row: int, arity: int, pos: int) -> int:
    return (row >> (arity - 1 - pos)) & 1


def build_csp(S: System, max_pairs: int | None = None) -> CSPInstance:
    iso = S.graph.isolated_vertices()
    if iso:
        raise InputError(f"build_csp needs a system without isolated vertices; isolated: {iso}")
    domains: dict[int, tuple] = {}
    for i in S.graph.vertices:
        nb = S.neighborhood(i)
        a = len(nb)
        p = nb.index(i)
        t = S.function(i).table
        rows = np.arange(t.size, dtype=np.int64)
        own = (rows >> (a - 1 - p)) & 1
        domains[i] = tuple((int(r), i) for r in rows[t == own])

    constraints = []
    total_pairs = 0
    for i, j in S.graph.sorted_edges():
        ni, nj = S.neighborhood(i), S.neighborhood(j)
        shared = sorted(set(ni) & set(nj))
        pi = [ni.index(k) for k in shared]
        pj = [nj.index(k) for k in shared]
        by_key: dict[tuple, list] = defaultdict(list)
        for val in domains[j]:
            by_key[tuple(_position_bits(val[0], len(nj), q) for q in pj)].append(val)
        allowed = []
        for val in domains[i]:
            key = tuple(_position_bits(val[0], len(ni), q) for q in pi)
            allowed.extend((val, w) for w in by_key.get(key, ()))
        total_pairs += len(allowed)
        if max_pairs is not None and total_pairs > max_pairs:
            raise BudgetExceeded(
                f"CSP relations exceed {max_pairs} allowed pairs", budget="table_budget", limit=max_pairs
            )
        constraints.append(Constraint((i, j), frozenset(allowed)))
    return CSPInstance(
        tuple(S.graph.vertices),
        domains,
        tuple(constraints),
        {i: S.neighborhood(i) for i in S.graph.vertices},
    )


def constraint_graph(csp: CSPInstance) -> Graph:
    """Variables become vertices ``1..k`` in the order of ``csp.variables``."""
    index = {v: k + 1 for k, v in enumerate(csp.variables)}
    edges = {tuple(sorted((index[c.scope[0]], index[c.scope[1]]))) for c in csp.constraints}
    return Graph(len(csp.variables), frozenset(edges))


def csp_assignment_to_config(S: System, assignment: Mapping[int, tuple]) -> Config:
    out = []
    for i in S.graph.vertices:
        row, owner = assignment[i]
        if owner != i:
            raise InputError(f"value for x{i} belongs to vertex {owner}")
        nb = S.neighborhood(i)
        out.append(_position_bits(row, len(nb), nb.index(i)))
    return tuple(out)


def config_to_csp_assignment(S: System, c: Sequence[int]) -> dict[int, tuple]:
    """The canonical assignment ``x_i -> (c restricted to N0(i), i)``."""
    out = {}
    for i in S.graph.vertices:
        row = 0
        for j in S.neighborhood(i):
            row = (row << 1) | int(c[j - 1])
        out[i] = (row, i)
    return out


# --------------------------------------------------------------------------
# solving over a tree decomposition

def solve_csp_td(csp: CSPInstance, td: TreeDecomposition,
                 table_budget: int = DEFAULT_TABLE_BUDGET) -> dict | None:
    """Bag-table dynamic programming; returns a satisfying assignment or ``None``."""
    index = {v: k + 1 for k, v in enumerate(csp.variables)}
    rev = {k: v for v, k in index.items()}
    scopes = [(index[c.scope[0]], index[c.scope[1]]) for c in csp.constraints]
    td.validate([index[v] for v in csp.variables], scopes)
    if not csp.variables:
        return {}

    allowed: dict[tuple, set] = {}
    for c in csp.constraints:
        u, v = index[c.scope[0]], index[c.scope[1]]
        rel = set(c.allowed)
        if (u, v) in allowed:
            allowed[(u, v)] &= rel
        else:
            allowed[(u, v)] = rel
    reversed_rel = {(v, u): {(b, a) for a, b in rel} for (u, v), rel in allowed.items()}
    pair_rel = {**allowed}
    for key, rel in reversed_rel.items():
        pair_rel[key] = pair_rel[key] & rel if key in pair_rel else rel

    adj = td.neighbors()
    root = 0
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    children: dict[int, list[int]] = {x: [] for x in order}
    for x in order[1:]:
        children[parent[x]].append(x)

    bag_vars = {x: sorted(td.bags[x]) for x in order}
    # per node: separator with parent, and map separator-projection -> one bag assignment
    sep: dict[int, list[int]] = {}
    memo: dict[int, dict[tuple, tuple]] = {}
    rows_seen = 0

    for x in reversed(order):
        vs = bag_vars[x]
        pos = {v: k for k, v in enumerate(vs)}
        kid_checks: dict[int, list[tuple[list[int], dict]]] = defaultdict(list)
        for ch in children[x]:
            s = sep[ch]
            depth = max((pos[v] for v in s), default=0)
            kid_checks[depth].append(([pos[v] for v in s], memo[ch]))
        checks: list[list[tuple[int, set]]] = [[] for _ in vs]
        for k, v in enumerate(vs):
            for q in range(k):
                rel = pair_rel.get((vs[q], v))
                if rel is not None:
                    checks[k].append((q, rel))
        doms = [csp.domains[rev[v]] for v in vs]
        s_here = [v for v in vs if parent[x] is not None and v in td.bags[parent[x]]]
        s_pos = [pos[v] for v in s_here]
        table: dict[tuple, tuple] = {}
        current: list = []

        def extend(k: int) -> None:
            nonlocal rows_seen
            if k == len(vs):
                rows_seen += 1
                if rows_seen > table_budget:
                    raise BudgetExceeded(
                        f"tree-decomposition tables exceed {table_budget} rows",
                        budget="table_budget",
                        limit=table_budget,
                    )
                key = tuple(current[p] for p in s_pos)
                table.setdefault(key, tuple(current))
                return
            for val in doms[k]:
                if any((current[q], val) not in rel for q, rel in checks[k]):
                    continue
                current.append(val)
                ok = all(tuple(current[p] for p in ps) in m for ps, m in kid_checks.get(k, ()))
                if ok:
                    extend(k + 1)
                current.pop()

        if not vs:
            # an empty bag only needs every child subtree to be satisfiable
            if all(() in memo[ch] for ch in children[x]):
                table[()] = ()
        else:
            extend(0)
        sep[x] = s_here
        memo[x] = table
        if not table:
            return None

    # top-down witness extraction
    chosen: dict[int, tuple] = {root: next(iter(memo[root].values()))}
    assignment: dict[int, Hashable] = {}
    for x in order:
        vals = chosen[x]
        for v, val in zip(bag_vars[x], vals):
            assignment[v] = val
        for ch in children[x]:
            key = tuple(assignment[v] for v in sep[ch])
            chosen[ch] = memo[ch][key]
    result = {rev[k]: val for k, val in assignment.items()}
    if not csp.satisfies(result):
        raise ContractError("tree-decomposition solver produced a non-satisfying assignment")
    return result
