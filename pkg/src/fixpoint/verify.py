"""Instance-level invariant checks used by ``fixpoint verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fixpoint.classify import is_self_dual
from fixpoint.config import Budgets
from fixpoint.core import (
    Config,
    Schedule,
    System,
    complement,
    enumerate_fixed_points,
    global_step,
    is_fixed_point,
    run_schedule,
)
from fixpoint.errors import BudgetExceeded
from fixpoint.gadgets import CNF, brute_force_sat
from fixpoint.solve import solve_fpe


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def random_schedule(rng: np.random.Generator, n: int, max_steps: int = 8) -> Schedule:
    steps = []
    for _ in range(int(rng.integers(1, max_steps + 1))):
        mask = rng.random(n) < rng.random()
        steps.append(frozenset(int(v) + 1 for v in np.flatnonzero(mask)))
    return Schedule(tuple(steps))


def _fixed_points(S: System, budgets: Budgets) -> list[Config] | None:
    try:
        return enumerate_fixed_points(S, budgets.brute_force_cap)
    except BudgetExceeded:
        return None


def check_schedule_invariance(S: System, rng: np.random.Generator, budgets: Budgets = Budgets(),
                              schedules: int = 100) -> CheckResult:
    """Fixed points survive random schedules; moved configurations have a moving schedule."""
    name = "schedule-invariance"
    fps = _fixed_points(S, budgets)
    if fps is None:
        return CheckResult(name, "skipped", f"more than {budgets.brute_force_cap} vertices")
    for c in fps:
        for _ in range(schedules):
            sched = random_schedule(rng, S.n)
            if run_schedule(S, sched, c) != c:
                return CheckResult(name, "fail", f"fixed point {c} moved under {sched}")
    # sample non-fixed configurations; the synchronous step itself is a moving schedule
    everyone = frozenset(S.graph.vertices)
    fixed = set(fps)
    for _ in range(min(64, 1 << S.n)):
        c = tuple(int(b) for b in rng.integers(0, 2, size=S.n))
        if c in fixed:
            continue
        if run_schedule(S, Schedule((everyone,)), c) == c:
            return CheckResult(name, "fail", f"non-fixed configuration {c} unchanged by a synchronous step")
    return CheckResult(name, "pass", f"{len(fps)} fixed points x {schedules} schedules")


def check_mirroring(S: System, budgets: Budgets = Budgets()) -> CheckResult:
    name = "mirroring"
    if not all(is_self_dual(f) for f in S.functions):
        return CheckResult(name, "skipped", "not every local function is self-dual")
    fps = _fixed_points(S, budgets)
    if fps is None:
        return CheckResult(name, "skipped", f"more than {budgets.brute_force_cap} vertices")
    fixed = set(fps)
    for c in fps:
        if complement(c) not in fixed:
            return CheckResult(name, "fail", f"complement of fixed point {c} is not fixed")
    return CheckResult(name, "pass", f"{len(fps)} fixed points closed under complement")


def check_oracle(S: System, budgets: Budgets = Budgets()) -> CheckResult:
    name = "oracle-equivalence"
    fps = _fixed_points(S, budgets)
    if fps is None:
        return CheckResult(name, "skipped", f"more than {budgets.brute_force_cap} vertices")
    out = solve_fpe(S, "auto", budgets)
    if out.status == "refused":
        return CheckResult(name, "skipped", "; ".join(out.reasons))
    if out.exists != bool(fps):
        return CheckResult(name, "fail", f"solver says exists={out.exists}, brute force found {len(fps)}")
    return CheckResult(name, "pass", f"{out.method.value} agrees with brute force ({len(fps)} fixed points)")


def check_witness(S: System, config: Config) -> CheckResult:
    name = "witness-fixed-point"
    if len(config) != S.n:
        return CheckResult(name, "fail", f"witness has {len(config)} bits, system has {S.n} vertices")
    if not is_fixed_point(S, config):
        moved = [i for i, (a, b) in enumerate(zip(config, global_step(S, S.graph.vertices, config)), 1) if a != b]
        return CheckResult(name, "fail", f"vertices {moved} change under their local functions")
    return CheckResult(name, "pass", "witness is a fixed point")


def check_sat_equivalence(S: System, H: CNF, budgets: Budgets = Budgets()) -> CheckResult:
    name = "sat-equivalence"
    fps = _fixed_points(S, budgets)
    if fps is None:
        return CheckResult(name, "skipped", f"more than {budgets.brute_force_cap} vertices")
    sat = brute_force_sat(H) is not None
    if sat != bool(fps):
        return CheckResult(name, "fail", f"formula satisfiable={sat} but system has {len(fps)} fixed points")
    return CheckResult(name, "pass", f"satisfiable={sat} matches fixed-point existence")
