import itertools

import pytest

from conftest import identity_system
from fixpoint.core import (
    Graph,
    Schedule,
    System,
    complement,
    complete_graph,
    config_from_string,
    config_to_string,
    cycle_graph,
    empty_graph,
    enumerate_fixed_points,
    global_step,
    grid_graph,
    is_fixed_point,
    is_local_fixed_point,
    path_graph,
    run_schedule,
    star_graph,
    trajectory,
)
from fixpoint.errors import BudgetExceeded, InputError
from fixpoint.functions import (
    AND2,
    D3,
    NOT1,
    Circuit,
    Formula,
    Lookup,
    and_,
    eval_local,
    formula_to_circuit,
    parse_prefix,
    table_to_formula,
    to_lookup,
    to_prefix,
    var,
)
from fixpoint.generate import random_expr, random_system


# local functions

def test_lookup_negation():
    assert eval_local(Lookup("10"), (0,)) == 1


def test_d_formula_identifies_to_negation():
    assert eval_local(D3, (1, 1, 0)) == 1
    for x, y in itertools.product((0, 1), repeat=2):
        assert eval_local(D3, (x, x, y)) == 1 - y


def test_circuit_xor():
    c = Circuit([("XOR", 0, 1)], 2)
    assert eval_local(c, (1, 1)) == 0


def test_to_lookup_examples():
    assert to_lookup(Formula(and_(var(0), var(1)), 2)).bits == "0001"
    expected = "".join(str(int((x and not y) or (x and not z) or (not y and not z)))
                       for x, y, z in itertools.product((0, 1), repeat=3))
    assert to_lookup(D3).bits == expected
    assert to_lookup(Circuit([("NOT", 0)], 1)).bits == "10"


def test_prefix_roundtrip(rng):
    for _ in range(50):
        e = random_expr(rng, 4, "BF")
        assert parse_prefix(to_prefix(e)) == e


def test_representation_conversions_agree(rng):
    for _ in range(30):
        f = Formula(random_expr(rng, 3, "BF"), 3)
        t = to_lookup(f)
        assert to_lookup(formula_to_circuit(f)) == t
        assert to_lookup(table_to_formula(t)) == t


# graphs and systems

def test_graph_normalises_and_rejects():
    g = Graph.from_edges(3, [(2, 1), (3, 2)])
    assert g.sorted_edges() == [(1, 2), (2, 3)]
    with pytest.raises(InputError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(1, 3)])


def test_named_graphs():
    assert complete_graph(5).m == 10
    assert cycle_graph(5).m == 5
    assert star_graph(5).degree(1) == 5
    assert grid_graph(3, 4).m == 3 * 3 + 2 * 4


def test_system_arity_checked():
    with pytest.raises(InputError):
        System(path_graph(2), [NOT1, AND2])


def test_global_step_examples(SYS_NOT, SYS_XOR2):
    assert global_step(SYS_XOR2, [], (1, 0)) == (1, 0)
    assert global_step(SYS_NOT, [1], (0,)) == (1,)
    assert global_step(SYS_XOR2, [1, 2], (1, 1)) == (0, 1)


def test_run_schedule_examples(SYS_NOT, SYS_XOR2):
    assert run_schedule(SYS_XOR2, Schedule(()), (1, 1)) == (1, 1)
    assert run_schedule(SYS_NOT, Schedule((frozenset({1}), frozenset({1}))), (0,)) == (0,)
    assert run_schedule(SYS_XOR2, Schedule((frozenset({1}), frozenset({2}))), (1, 1)) == (0, 0)


def test_local_fixed_point_examples(SYS_NOT, SYS_XOR2):
    assert is_local_fixed_point(SYS_NOT, [], (0,))
    assert not is_local_fixed_point(SYS_NOT, [1], (0,))
    assert is_local_fixed_point(SYS_XOR2, [1], (1, 0))


def test_fixed_point_examples(SYS_ID, SYS_NOT, SYS_XOR2):
    assert is_fixed_point(SYS_ID, (0,)) and is_fixed_point(SYS_ID, (1,))
    assert not is_fixed_point(SYS_NOT, (0,)) and not is_fixed_point(SYS_NOT, (1,))
    assert [c for c in itertools.product((0, 1), repeat=2) if is_fixed_point(SYS_XOR2, c)] == [(0, 0), (1, 0)]


def test_enumerate_examples(SYS_ID, SYS_NOT, SYS_XOR2):
    assert enumerate_fixed_points(SYS_ID) == [(0,), (1,)]
    assert enumerate_fixed_points(SYS_NOT) == []
    assert enumerate_fixed_points(SYS_XOR2) == [(0, 0), (1, 0)]


def test_enumerate_matches_scalar_oracle(rng):
    for _ in range(20):
        S = random_system(rng, int(rng.integers(1, 8)), "gnp", "BF", "mixed", 0.4)
        scalar = [c for c in itertools.product((0, 1), repeat=S.n) if is_fixed_point(S, c)]
        assert enumerate_fixed_points(S) == scalar


def test_enumerate_budget():
    S = identity_system(empty_graph(6))
    with pytest.raises(BudgetExceeded):
        enumerate_fixed_points(S, cap=5)


def test_trajectory_and_sync(SYS_NOT):
    traj = trajectory(SYS_NOT, Schedule.synchronous(1, 2), (0,))
    assert traj == [(0,), (1,), (0,)]


def test_config_helpers():
    assert config_from_string("0110") == (0, 1, 1, 0)
    assert config_to_string((1, 0)) == "10"
    assert complement((1, 0, 1)) == (0, 1, 0)
    with pytest.raises(InputError):
        config_from_string("01x")


def test_schedule_validation(SYS_XOR2):
    with pytest.raises(InputError):
        Schedule((frozenset({3}),)).validate(SYS_XOR2)
