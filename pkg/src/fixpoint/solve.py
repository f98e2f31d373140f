"""Fixed-point existence solvers and the dispatcher that picks among them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from fixpoint.classify import Algorithm, is_linear, is_monotone
from fixpoint.config import Budgets
from fixpoint.core import Config, System, global_step, is_fixed_point, iter_fixed_points
from fixpoint.csp import build_csp, csp_assignment_to_config, solve_csp_td
from fixpoint.errors import BudgetExceeded, ContractError
from fixpoint.functions import Lookup, eval_local, to_lookup
from fixpoint.gf2 import solve_gf2
from fixpoint.graphs import treewidth_upper_bound

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    config: Config
    method: Algorithm
    verified: bool


@dataclass(frozen=True)
class SolveOutcome:
    """``status`` is one of ``exists``, ``not_exists`` or ``refused``."""

    status: str
    method: Algorithm | None = None
    witness: Witness | None = None
    reasons: tuple[str, ...] = field(default=())

    @property
    def exists(self) -> bool | None:
        return {"exists": True, "not_exists": False}.get(self.status)

    @classmethod
    def found(cls, S: System, config: Config, method: Algorithm) -> "SolveOutcome":
        config = tuple(int(x) for x in config)
        if not is_fixed_point(S, config):
            raise ContractError(f"{method.value} produced a configuration that is not a fixed point")
        return cls("exists", method, Witness(config, method, True))

    @classmethod
    def none(cls, method: Algorithm) -> "SolveOutcome":
        return cls("not_exists", method)

    @classmethod
    def refused(cls, *reasons: str) -> "SolveOutcome":
        return cls("refused", reasons=tuple(reasons))


# --------------------------------------------------------------------------
# constant witnesses

def _all_reproducing(S: System, b: int) -> bool:
    return all(eval_local(f, (b,) * f.arity) == b for f in S.functions)


def solve_trivial_reproducing(S: System, b: int) -> SolveOutcome:
    if not _all_reproducing(S, b):
        raise ContractError(f"not every local function is {b}-reproducing")
    method = Algorithm.CONSTANT_WITNESS_1 if b else Algorithm.CONSTANT_WITNESS_0
    return SolveOutcome.found(S, (b,) * S.n, method)


# --------------------------------------------------------------------------
# monotone systems

def monotone_iteration(S: System) -> list[Config]:
    """Synchronous orbit of the all-zero configuration up to its first repeat.

    For monotone systems the orbit is componentwise non-decreasing, so the
    last entry is reached after at most ``n`` steps and is the least fixed
    point.
    """
    cur: Config = (0,) * S.n
    orbit = [cur]
    everyone = list(S.graph.vertices)
    for _ in range(S.n + 1):
        nxt = global_step(S, everyone, cur)
        if nxt == cur:
            return orbit
        if any(a > b for a, b in zip(cur, nxt)):
            raise ContractError("synchronous orbit decreased; a local function is not monotone")
        orbit.append(nxt)
        cur = nxt
    raise RuntimeError(f"monotone iteration did not stabilise within {S.n} steps")


def solve_monotone(S: System) -> SolveOutcome:
    if not all(is_monotone(f) for f in S.functions):
        raise ContractError("not every local function is monotone")
    return SolveOutcome.found(S, monotone_iteration(S)[-1], Algorithm.MONOTONE_ITERATION)


# --------------------------------------------------------------------------
# linear systems

def linear_fixed_point_equations(S: System) -> tuple[list[int], list[int]]:
    """Rows of ``(A + I) x = b`` whose solutions are the fixed points of ``x = A x + b``.

    Bit ``j - 1`` of a row is the coefficient of vertex ``j``.
    """
    rows, rhs = [], []
    for i in S.graph.vertices:
        coeffs = is_linear(S.function(i))
        if coeffs is None:
            raise ContractError(f"local function of vertex {i} is not linear")
        row = 1 << (i - 1)
        for j, a in zip(S.neighborhood(i), coeffs[1:]):
            if a:
                row ^= 1 << (j - 1)
        rows.append(row)
        rhs.append(coeffs[0])
    return rows, rhs


def linear_fixed_point_count(S: System) -> int:
    rows, rhs = linear_fixed_point_equations(S)
    x, rank = solve_gf2(rows, rhs, S.n)
    return 0 if x is None else 1 << (S.n - rank)


def solve_linear(S: System) -> SolveOutcome:
    rows, rhs = linear_fixed_point_equations(S)
    x, _ = solve_gf2(rows, rhs, S.n)
    if x is None:
        return SolveOutcome.none(Algorithm.LINEAR_ALGEBRA)
    return SolveOutcome.found(S, tuple(x), Algorithm.LINEAR_ALGEBRA)


# --------------------------------------------------------------------------
# structural routes

def _tables_within(S: System, budgets: Budgets) -> bool:
    return all(isinstance(f, Lookup) or f.arity <= budgets.degree + 1 for f in S.functions)


def _split_isolated(S: System) -> tuple[dict[int, int] | None, System | None, list[int]]:
    """Fix isolated vertices separately.

    Returns ``(bits, rest, kept)``: a fixed bit per isolated vertex (``None``
    if some isolated vertex has none), the induced system on the remaining
    vertices (``None`` if empty), and those vertices in order.
    """
    iso = S.graph.isolated_vertices()
    bits: dict[int, int] | None = {}
    for i in iso:
        f = S.function(i)
        good = [b for b in (0, 1) if eval_local(f, (b,)) == b]
        if not good:
            bits = None
            break
        bits[i] = good[0]
    kept = [v for v in S.graph.vertices if v not in set(iso)]
    if not kept:
        return bits, None, kept
    g, _ = S.graph.induced(kept)
    return bits, System(g, [S.function(v) for v in kept]), kept


def solve_treewidth(S: System, budgets: Budgets = Budgets()) -> SolveOutcome:
    method = Algorithm.BOUNDED_TREEWIDTH
    if not _tables_within(S, budgets):
        return SolveOutcome.refused(
            f"treewidth: a succinct local function has more than {budgets.degree + 1} arguments"
        )
    bits, rest, kept = _split_isolated(S)
    if bits is None:
        return SolveOutcome.none(method)
    config = [0] * S.n
    for i, b in bits.items():
        config[i - 1] = b
    if rest is not None:
        width, td = treewidth_upper_bound(rest.graph)
        if width > budgets.width:
            return SolveOutcome.refused(f"treewidth: heuristic width {width} exceeds budget {budgets.width}")
        try:
            csp = build_csp(rest, max_pairs=budgets.table)
            assignment = solve_csp_td(csp, td, table_budget=budgets.table)
        except BudgetExceeded as exc:
            return SolveOutcome.refused(f"treewidth: {exc}")
        if assignment is None:
            return SolveOutcome.none(method)
        for v, bit in zip(kept, csp_assignment_to_config(rest, assignment)):
            config[v - 1] = bit
    return SolveOutcome.found(S, tuple(config), method)


def solve_brute(S: System, budgets: Budgets = Budgets()) -> SolveOutcome:
    try:
        first = next(iter_fixed_points(S, budgets.brute_force_cap), None)
    except BudgetExceeded as exc:
        return SolveOutcome.refused(f"brute force: {exc}")
    if first is None:
        return SolveOutcome.none(Algorithm.BRUTE_FORCE)
    return SolveOutcome.found(S, first, Algorithm.BRUTE_FORCE)


def solve_bounded_degree_expand(S: System, budgets: Budgets = Budgets()) -> SolveOutcome:
    method = Algorithm.BOUNDED_DEGREE_EXPANSION
    deg = S.graph.max_degree()
    if deg > budgets.degree:
        return SolveOutcome.refused(f"degree expansion: max degree {deg} exceeds budget {budgets.degree}")
    expanded = S.with_functions([to_lookup(f) for f in S.functions])
    inner = solve_treewidth(expanded, budgets)
    if inner.status == "refused":
        inner = solve_brute(expanded, budgets)
        if inner.status == "refused":
            return SolveOutcome.refused(*(f"degree expansion: {r}" for r in inner.reasons))
    if inner.status == "not_exists":
        return SolveOutcome.none(method)
    return SolveOutcome.found(S, inner.witness.config, method)


# --------------------------------------------------------------------------
# dispatcher

STRATEGIES: dict[str, Callable[[System, Budgets], SolveOutcome]] = {
    "constant1": lambda S, b: solve_trivial_reproducing(S, 1),
    "constant0": lambda S, b: solve_trivial_reproducing(S, 0),
    "linear": lambda S, b: solve_linear(S),
    "monotone": lambda S, b: solve_monotone(S),
    "treewidth": solve_treewidth,
    "degree": solve_bounded_degree_expand,
    "brute": solve_brute,
}


def solve_fpe(S: System, strategy: str = "auto", budgets: Budgets = Budgets()) -> SolveOutcome:
    """Decide fixed-point existence.

    ``auto`` probes, cheapest first: constant witnesses (1 then 0), linear,
    monotone, the tree-decomposition route, degree expansion and finally
    brute force.  A named strategy runs that solver alone; a violated
    precondition yields a refusal instead of an exception.
    """
    if strategy != "auto":
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; choose auto or one of {sorted(STRATEGIES)}")
        try:
            return STRATEGIES[strategy](S, budgets)
        except ContractError as exc:
            return SolveOutcome.refused(f"{strategy}: {exc}")

    if _all_reproducing(S, 1):
        return solve_trivial_reproducing(S, 1)
    if _all_reproducing(S, 0):
        return solve_trivial_reproducing(S, 0)
    reasons: list[str] = []
    if _tables_within(S, budgets):
        if all(is_linear(f) is not None for f in S.functions):
            return solve_linear(S)
        if all(is_monotone(f) for f in S.functions):
            return solve_monotone(S)
    else:
        reasons.append("linear/monotone probes skipped: tables exceed the degree budget")

    if all(isinstance(f, Lookup) for f in S.functions):
        out = solve_treewidth(S, budgets)
        if out.status != "refused":
            return out
        reasons.extend(out.reasons)
    else:
        out = solve_bounded_degree_expand(S, budgets)
        if out.status != "refused":
            return out
        reasons.extend(out.reasons)

    out = solve_brute(S, budgets)
    if out.status != "refused":
        return out
    reasons.extend(out.reasons)
    log.info("all solver routes refused: %s", reasons)
    return SolveOutcome.refused(*reasons)
