"""Command-line interface: ``fixpoint {classify,solve,simulate,reduce,gen,verify}``.

Every command writes a JSON report (``--format json``, the default) or a
short text rendering (``--format text``).  ``solve`` exits 0 when a fixed
point exists, 1 when none exists and 2 when every route was refused or the
input was bad.  ``verify`` exits 1 when any check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

import numpy as np

from fixpoint import io
from fixpoint.classify import (
    MODES,
    FunctionClassSpec,
    GraphClassSpec,
    PostClass,
    dichotomy,
    is_self_dual,
    member_classes,
)
from fixpoint.config import Budgets, load_budgets
from fixpoint.core import Schedule, config_from_string, config_to_string, is_fixed_point, trajectory
from fixpoint.csp import build_csp
from fixpoint.errors import FixpointError
from fixpoint.gadgets import (
    parse_dimacs,
    planar3sat_to_system,
    planar_selfdual_lift,
    sat_to_star_system,
)
from fixpoint.generate import DEGREE_MODELS, REPRS, random_system
from fixpoint.graphs import check_planarity, has_minor, has_vertex_cover_one, is_planar, treewidth_upper_bound
from fixpoint.solve import STRATEGIES, solve_fpe
from fixpoint.verify import (
    check_mirroring,
    check_oracle,
    check_sat_equivalence,
    check_schedule_invariance,
    check_witness,
)

EXIT_EXISTS, EXIT_NONE, EXIT_ERROR = 0, 1, 2
TABLE_ARITY_LIMIT = 20


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(args: argparse.Namespace, report: dict, text_lines: Sequence[str]) -> None:
    out = io.dumps(report) if args.format == "json" else "\n".join(text_lines) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _budgets(args: argparse.Namespace) -> Budgets:
    return load_budgets(
        args.config,
        brute_force_cap=args.budget_cap,
        width=args.budget_width,
        degree=args.budget_degree,
        table=args.budget_table,
    )


def _graph_spec(value: str | None) -> GraphClassSpec:
    if value is None:
        return GraphClassSpec.of("ALL")
    if value.upper() in ("ALL", "PLANAR", "VC1"):
        return GraphClassSpec.of(value)
    return GraphClassSpec(tuple(io.loads_graphs(_read(value))), value)


# --------------------------------------------------------------------------
# classify

def cmd_classify(args: argparse.Namespace) -> int:
    spec_g = _graph_spec(args.graphs)
    modes = [args.repr] if args.repr else list(MODES)
    report: dict[str, Any] = {"command": "classify", "graph_class": str(spec_g)}
    lines = [f"graph class: {spec_g}"]

    if args.system:
        S = io.loads_system(_read(args.system))
        per_vertex = []
        tables = []
        for v in S.graph.vertices:
            f = S.function(v)
            if f.arity > TABLE_ARITY_LIMIT:
                per_vertex.append({"vertex": v, "repr": f.kind, "classes": None})
                continue
            classes = sorted(c.value for c in member_classes(f))
            per_vertex.append({"vertex": v, "repr": f.kind, "classes": classes})
            tables.append(f)
            lines.append(f"vertex {v} ({f.kind}): {' '.join(classes)}")
        report["functions"] = per_vertex
        spec_f = FunctionClassSpec.of(args.cls) if args.cls else FunctionClassSpec.generated(tables)
        joint = [c.value for c in FunctionClassSpec.generated(tables).coatoms()] if tables else []
        if tables and all(member_classes(f) >= {PostClass.D} for f in tables):
            joint.append("D")
        report["joint_coatoms"] = joint
        G = S.graph
        width, _ = treewidth_upper_bound(G)
        graph_info = {
            "vertices": G.n,
            "edges": G.m,
            "max_degree": G.max_degree(),
            "planar": is_planar(G),
            "vertex_cover_one": has_vertex_cover_one(G),
            "treewidth_upper_bound": width,
        }
        member = []
        for X in spec_g.forbidden:
            try:
                member.append(not has_minor(G, X))
            except FixpointError:
                member.append(None)
        graph_info["in_graph_class"] = None if None in member else all(member)
        report["graph"] = graph_info
        lines.append(f"joint coatoms: {' '.join(joint) or 'none'}")
        lines.append("graph: " + ", ".join(f"{k}={v}" for k, v in graph_info.items()))
    else:
        if not args.cls:
            raise FixpointError("classify needs a system file or --class")
        spec_f = FunctionClassSpec.of(args.cls)

    report["function_class"] = str(spec_f)
    verdicts = {}
    for mode in modes:
        verdict = dichotomy(spec_f, spec_g, mode)
        verdicts[mode] = {
            "outcome": "Tractable" if verdict.tractable else "NPComplete",
            "tag": verdict.tag.value,
        }
        lines.append(f"{mode}: {verdict}")
    report["verdicts"] = verdicts
    _emit(args, report, lines)
    return 0


# --------------------------------------------------------------------------
# solve

def cmd_solve(args: argparse.Namespace) -> int:
    S = io.loads_system(_read(args.system))
    budgets = _budgets(args)
    start = time.perf_counter()
    out = solve_fpe(S, args.strategy, budgets)
    elapsed = time.perf_counter() - start
    report: dict[str, Any] = {
        "command": "solve",
        "strategy": args.strategy,
        "status": out.status,
        "method": out.method.value if out.method else None,
        "witness": None,
        "reasons": list(out.reasons),
        "wall_time_s": round(elapsed, 6),
    }
    if out.witness is not None:
        # re-verify before serialisation
        if not is_fixed_point(S, out.witness.config):
            raise FixpointError("witness failed re-verification")
        report["witness"] = config_to_string(out.witness.config)
    text = f"{out.status} via {report['method']}" + (f": {report['witness']}" if report["witness"] else "")
    _emit(args, report, [text] + [f"refused: {r}" for r in out.reasons])
    return {"exists": EXIT_EXISTS, "not_exists": EXIT_NONE}.get(out.status, EXIT_ERROR)


# --------------------------------------------------------------------------
# simulate

def _load_schedule(path: str) -> Schedule:
    obj = json.loads(_read(path))
    steps = obj.get("steps") if isinstance(obj, dict) else obj
    if not isinstance(steps, list) or not all(isinstance(s, list) for s in steps):
        raise FixpointError("schedule file must hold a list of vertex lists")
    return Schedule(tuple(frozenset(s) for s in steps))


def cmd_simulate(args: argparse.Namespace) -> int:
    S = io.loads_system(_read(args.system))
    if args.schedule:
        sched = _load_schedule(args.schedule)
    else:
        sched = Schedule.synchronous(S.n, args.sync if args.sync is not None else 1)
    start = config_from_string(args.start) if args.start else (0,) * S.n
    traj = trajectory(S, sched, start)
    arrival = next((t for t, c in enumerate(traj) if is_fixed_point(S, c)), None)
    report = {
        "command": "simulate",
        "trajectory": [config_to_string(c) for c in traj],
        "fixed_point_reached_at": arrival,
    }
    lines = [f"{t}: {config_to_string(c)}" + ("  (fixed point)" if is_fixed_point(S, c) else "")
             for t, c in enumerate(traj)]
    _emit(args, report, lines)
    return 0


# --------------------------------------------------------------------------
# reduce

def cmd_reduce(args: argparse.Namespace) -> int:
    kind = args.kind
    meta: dict[str, Any] = {"kind": kind}
    if kind == "csp":
        S = io.loads_system(_read(args.input))
        csp = build_csp(S)
        meta.update(variables=len(csp.variables), constraints=len(csp.constraints),
                    variables_equal_vertices=len(csp.variables) == S.n,
                    constraints_equal_edges=len(csp.constraints) == S.graph.m)
        report = {"command": "reduce", "metadata": meta, "csp": io.csp_to_dict(csp)}
        _emit(args, report, [f"CSP with {meta['variables']} variables, {meta['constraints']} constraints"])
        return 0
    if kind in ("planar3sat", "star"):
        H = parse_dimacs(_read(args.input))
        T = planar3sat_to_system(H) if kind == "planar3sat" else sat_to_star_system(H)
    elif kind == "selfdual-lift":
        T = planar_selfdual_lift(io.loads_system(_read(args.input)))
    else:
        raise FixpointError(f"unknown reduction kind {kind!r}")
    meta.update(
        vertices=T.n,
        edges=T.graph.m,
        max_degree=T.graph.max_degree(),
        planar=check_planarity(T.graph)[0],
        vertex_cover_one=has_vertex_cover_one(T.graph),
    )
    if all(f.arity <= TABLE_ARITY_LIMIT for f in T.functions):
        meta["self_dual"] = all(is_self_dual(f) for f in T.functions)
    expected = {"planar3sat": ("planar", True), "selfdual-lift": ("self_dual", True),
                "star": ("vertex_cover_one", True)}[kind]
    if meta.get(expected[0]) is not expected[1]:
        raise FixpointError(f"constructed system fails its guarantee {expected[0]}")
    if kind == "planar3sat" and meta["max_degree"] > 3:
        raise FixpointError("constructed system exceeds maximum degree three")
    report = {"command": "reduce", "metadata": meta, "system": io.system_to_dict(T)}
    _emit(args, report, [", ".join(f"{k}={v}" for k, v in meta.items())])
    return 0


# --------------------------------------------------------------------------
# gen

def cmd_gen(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    S = random_system(rng, args.n, args.degree_model, args.cls, args.repr, args.p)
    out = io.dumps_system(S)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


# --------------------------------------------------------------------------
# verify

def cmd_verify(args: argparse.Namespace) -> int:
    S = io.loads_system(_read(args.system))
    budgets = _budgets(args)
    rng = np.random.default_rng(args.seed)
    suites = {args.suite} if args.suite != "all" else {"schedule", "mirror", "oracle"}
    results = []
    if "schedule" in suites:
        results.append(check_schedule_invariance(S, rng, budgets, args.schedules))
    if "mirror" in suites:
        results.append(check_mirroring(S, budgets))
    if "oracle" in suites:
        results.append(check_oracle(S, budgets))
    if args.witness:
        raw = _read(args.witness).strip()
        try:
            obj = json.loads(raw)
            raw = obj.get("witness") if isinstance(obj, dict) else "".join(str(x) for x in obj)
        except json.JSONDecodeError:
            pass
        if raw is None:
            raise FixpointError("witness file holds no witness")
        results.append(check_witness(S, config_from_string(str(raw))))
    if args.cnf:
        results.append(check_sat_equivalence(S, parse_dimacs(_read(args.cnf)), budgets))
    report = {
        "command": "verify",
        "checks": [{"name": r.name, "status": r.status, "detail": r.detail} for r in results],
        "passed": not any(r.failed for r in results),
    }
    _emit(args, report, [f"{r.status.upper():7} {r.name}: {r.detail}" for r in results])
    return 1 if any(r.failed for r in results) else 0


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write the document here instead of stdout")
    common.add_argument("--config", help="budget config file (default: $FIXPOINT_CONFIG)")
    common.add_argument("--budget-cap", type=int, help="brute-force vertex cap")
    common.add_argument("--budget-width", type=int, help="tree-decomposition width budget")
    common.add_argument("--budget-degree", type=int, help="degree budget for table expansion")
    common.add_argument("--budget-table", type=int, help="row/pair budget for the CSP route")

    p = argparse.ArgumentParser(prog="fixpoint", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="Post-class, graph-class and dichotomy report")
    c.add_argument("system", nargs="?", help="system JSON file")
    c.add_argument("--class", dest="cls", choices=[x.value for x in PostClass])
    c.add_argument("--graphs", help="ALL, PLANAR, VC1 or a JSON file with forbidden minors")
    c.add_argument("--repr", choices=MODES)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", parents=[common], help="decide fixed-point existence")
    s.add_argument("system")
    s.add_argument("--strategy", default="auto", choices=["auto", *STRATEGIES])
    s.set_defaults(func=cmd_solve)

    m = sub.add_parser("simulate", parents=[common], help="print a trajectory")
    m.add_argument("system")
    m.add_argument("--schedule", help="JSON file: list of vertex lists, step 1 first")
    m.add_argument("--sync", type=int, help="number of synchronous steps")
    m.add_argument("--start", help="start configuration as a 0/1 string (default all zeros)")
    m.set_defaults(func=cmd_simulate)

    r = sub.add_parser("reduce", parents=[common], help="run a reduction constructor")
    r.add_argument("--kind", required=True, choices=("csp", "planar3sat", "selfdual-lift", "star"))
    r.add_argument("input", help="system JSON (csp, selfdual-lift) or DIMACS CNF (planar3sat, star)")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen", parents=[common], help="generate a random system")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--degree-model", default="gnp", choices=DEGREE_MODELS)
    g.add_argument("--p", type=float, default=0.3, help="edge probability for gnp/planar")
    g.add_argument("--class", dest="cls", default="BF", choices=[x.value for x in PostClass])
    g.add_argument("--repr", default="lookup", choices=[*REPRS, "mixed"])
    g.add_argument("--seed", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="run invariant suites on an instance")
    v.add_argument("system")
    v.add_argument("--suite", default="all", choices=("all", "schedule", "mirror", "oracle"))
    v.add_argument("--witness", help="witness file: report JSON, bit list or 0/1 string")
    v.add_argument("--cnf", help="DIMACS formula the system was reduced from")
    v.add_argument("--schedules", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FixpointError, OSError, json.JSONDecodeError) as exc:
        print(f"fixpoint {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
