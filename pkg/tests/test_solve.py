import pytest

from conftest import identity_system
from fixpoint.classify import Algorithm
from fixpoint.config import Budgets, load_budgets
from fixpoint.core import (
    System,
    complete_graph,
    cycle_graph,
    enumerate_fixed_points,
    grid_graph,
    path_graph,
    star_graph,
)
from fixpoint.errors import ContractError
from fixpoint.functions import Formula, Lookup, d, or_, var
from fixpoint.generate import random_system, random_table
from fixpoint.gf2 import gf2_rank, solve_gf2
from fixpoint.solve import (
    linear_fixed_point_count,
    monotone_iteration,
    solve_bounded_degree_expand,
    solve_fpe,
    solve_linear,
    solve_monotone,
    solve_treewidth,
    solve_trivial_reproducing,
)


def _and_system(G):
    return System(G, [Lookup("0" * ((1 << (G.degree(v) + 1)) - 1) + "1") for v in G.vertices])


def _or_system(G):
    return System(G, [Lookup("0" + "1" * ((1 << (G.degree(v) + 1)) - 1)) for v in G.vertices])


def test_constant_witnesses(SYS_ID, SYS_NOT):
    assert solve_trivial_reproducing(_and_system(cycle_graph(4)), 1).witness.config == (1,) * 4
    assert solve_trivial_reproducing(_or_system(path_graph(3)), 0).witness.config == (0,) * 3
    assert solve_trivial_reproducing(SYS_ID, 0).witness.config == (0,)
    assert solve_trivial_reproducing(SYS_ID, 1).witness.config == (1,)
    with pytest.raises(ContractError):
        solve_trivial_reproducing(SYS_NOT, 0)


def test_monotone_examples():
    orbit = monotone_iteration(_and_system(complete_graph(3)))
    assert orbit == [(0, 0, 0)]
    assert monotone_iteration(_or_system(path_graph(4)))[-1] == (0, 0, 0, 0)


def test_monotone_gives_least_fixed_point(rng):
    for _ in range(30):
        S = random_system(rng, int(rng.integers(2, 10)), "gnp", "M", "lookup", 0.4)
        out = solve_monotone(S)
        fps = enumerate_fixed_points(S)
        assert out.witness.config == fps[0]
        assert all(all(a <= b for a, b in zip(out.witness.config, c)) for c in fps)


def test_linear_examples(SYS_NOT, SYS_ID):
    assert solve_linear(SYS_NOT).status == "not_exists"
    assert solve_linear(SYS_ID).status == "exists"
    assert linear_fixed_point_count(SYS_ID) == 2


def test_gf2_against_enumeration(rng):
    import itertools
    for _ in range(50):
        k = int(rng.integers(1, 7))
        rows = [int(x) for x in rng.integers(0, 1 << k, size=int(rng.integers(1, 7)))]
        rhs = [int(x) for x in rng.integers(0, 2, size=len(rows))]
        sols = [x for x in itertools.product((0, 1), repeat=k)
                if all(bin(r & sum(b << j for j, b in enumerate(x))).count("1") % 2 == h for r, h in zip(rows, rhs))]
        x, rank = solve_gf2(rows, rhs, k)
        assert (x is None) == (not sols)
        assert rank == gf2_rank(rows, k)
        if sols:
            assert len(sols) == 2 ** (k - rank)


def test_treewidth_route(SYS_XOR2):
    out = solve_treewidth(SYS_XOR2)
    assert out.witness.config in {(0, 0), (1, 0)}
    assert solve_treewidth(identity_system(path_graph(5))).exists


def test_grid_lookup_matches_brute(rng):
    G = grid_graph(4, 4)
    for _ in range(3):
        S = System(G, [random_table(rng, G.degree(v) + 1) for v in G.vertices])
        assert solve_treewidth(S).exists == bool(enumerate_fixed_points(S))


def test_degree_expansion_star():
    c, a, b, e = var(0), var(1), var(2), var(3)
    centre = Formula(d(c, d(a, b, e), d(e, a, c)), 4)
    leaves = [Formula(d(var(0), var(1), var(1)), 2) for _ in range(3)]
    S = System(star_graph(3), [centre, *leaves])
    out = solve_bounded_degree_expand(S)
    assert out.exists == bool(enumerate_fixed_points(S))


def test_degree_budget_refuses():
    G = star_graph(50)
    f = Formula(or_(*(var(k) for k in range(51))), 51)
    S = System(G, [f] + [Lookup("0110")] * 50)
    assert solve_bounded_degree_expand(S).status == "refused"


def test_dispatcher_examples(SYS_NOT, rng):
    out = solve_fpe(SYS_NOT)
    assert out.status == "not_exists" and out.method is Algorithm.LINEAR_ALGEBRA
    S = random_system(rng, 8, "gnp", "R1", "mixed", 0.4)
    assert solve_fpe(S).method is Algorithm.CONSTANT_WITNESS_1


def test_forced_strategy_refuses_on_contract(SYS_NOT):
    assert solve_fpe(SYS_NOT, "monotone").status == "refused"
    assert solve_fpe(SYS_NOT, "constant1").status == "refused"


def test_auto_matches_brute_for_every_representation(rng):
    for repr in ("lookup", "formula", "circuit", "mixed"):
        for _ in range(15):
            S = random_system(rng, int(rng.integers(1, 11)), "gnp", "BF", repr, 0.3)
            assert solve_fpe(S).exists == bool(enumerate_fixed_points(S))


def test_refusal_when_everything_exceeds_budgets():
    S = identity_system(complete_graph(8))
    tiny = Budgets(brute_force_cap=4, width=2, degree=3, table=10)
    # break reproducibility at both constant rows
    flipped = []
    for f in S.functions:
        t = f.table.copy()
        t[0], t[-1] = 1, 0
        flipped.append(Lookup(t))
    S = S.with_functions(flipped)
    out = solve_fpe(S, "auto", tiny)
    assert out.status == "refused" and out.reasons


def test_budget_config(tmp_path, monkeypatch):
    p = tmp_path / "b.ini"
    p.write_text("[budgets]\nwidth = 5\ndegree = 7\n")
    b = load_budgets(str(p), degree=9)
    assert (b.width, b.degree, b.brute_force_cap) == (5, 9, 25)
    monkeypatch.setenv("FIXPOINT_CONFIG", str(p))
    assert load_budgets().width == 5


def test_budget_config_inline_comments(tmp_path):
    p = tmp_path / "c.ini"
    p.write_text("[budgets]\nwidth = 4   # small\n")
    assert load_budgets(str(p)).width == 4
