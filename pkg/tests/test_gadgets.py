import itertools

import numpy as np
import pytest

from conftest import sys_xor2
from fixpoint.classify import is_self_dual
from fixpoint.core import System, complete_graph, enumerate_fixed_points
from fixpoint.errors import FormatError, InputError
from fixpoint.functions import AND2, Formula, expr_symbols, input_rows, to_lookup
from fixpoint.gadgets import (
    CNF,
    dual_formula,
    incidence_graph,
    is_dformula,
    pad_to_3,
    parse_dimacs,
    planar3sat_to_system,
    planar_selfdual_lift,
    random_3cnf,
    sat_to_star_system,
    sd_dformula,
    selfdual_extension_table,
    self_dualize,
    to_dimacs,
    widen_with_guard,
)
from fixpoint.generate import random_system, random_table
from fixpoint.graphs import has_vertex_cover_one, is_planar

SAT1 = CNF(3, ((1, 2, 3),))
UNSAT1 = CNF(1, ((1, 1, 1), (-1, -1, -1)))


def test_dimacs_roundtrip_and_errors():
    H = parse_dimacs("c hi\np cnf 3 2\n1 -2 0\n3 0\n")
    assert H == CNF(3, ((1, -2), (3,)))
    assert parse_dimacs(to_dimacs(H)) == H
    with pytest.raises(FormatError, match="line 2"):
        parse_dimacs("p cnf 2 1\n1 x 0\n")
    with pytest.raises(InputError):
        parse_dimacs("p cnf 1 1\n2 0\n")


def test_incidence_graph_examples():
    assert incidence_graph(SAT1).sorted_edges() == [(1, 2), (1, 3), (1, 4)]
    assert incidence_graph(CNF(1, ((1,), (-1,)))).sorted_edges() == [(1, 3), (2, 3)]
    assert incidence_graph(CNF(2, ((1, 1, 2),))).sorted_edges() == [(1, 2), (1, 3)]


def test_planar3sat_examples():
    S = planar3sat_to_system(SAT1)
    assert enumerate_fixed_points(S)
    assert not enumerate_fixed_points(planar3sat_to_system(UNSAT1))
    assert S.graph.max_degree() <= 3 and is_planar(S.graph)


def test_planar3sat_fixed_points_are_assignments(rng):
    for _ in range(20):
        H = random_3cnf(rng, 4, 3, (1, 2, 3))
        if not is_planar(incidence_graph(H)):
            continue
        S, layout = planar3sat_to_system(H, return_layout=True)
        for c in enumerate_fixed_points(S):
            x = []
            for i in range(1, H.num_vars + 1):
                vals = {c[v - 1] for _, v in layout.copies.get(i, [])}
                assert len(vals) <= 1
                x.append(vals.pop() if vals else 0)
            assert H.evaluate(x)


def test_self_dualize_examples(rng):
    sd = self_dualize(AND2, 1)
    assert is_self_dual(sd)
    # y = 0: value is f(x) for either z
    for x1, x2, z in itertools.product((0, 1), repeat=3):
        assert sd.evaluate((x1, x2, 0, z)) == (x1 & x2)
    f = random_table(rng, 2)
    sd2 = self_dualize(f, 2)
    for x1, x2, z in itertools.product((0, 1), repeat=3):
        assert sd2.evaluate((x1, x2, 0, 1, z)) == 1 - z


def test_lift_examples(rng):
    L = planar_selfdual_lift(sys_xor2())
    assert all(is_self_dual(f) for f in L.functions)
    assert bool(enumerate_fixed_points(L)) == bool(enumerate_fixed_points(sys_xor2()))
    tri = random_system(rng, 3, graph=complete_graph(3))
    assert is_planar(planar_selfdual_lift(tri).graph)


def test_lift_rejects_nonplanar(rng):
    with pytest.raises(InputError):
        planar_selfdual_lift(random_system(rng, 5, graph=complete_graph(5)))


def test_dual_formula_examples(rng):
    assert to_lookup(dual_formula(CNF(1, ((1,),)))).bits == "01"
    assert to_lookup(dual_formula(CNF(2, ((1, 2),)))).bits == "0001"
    for _ in range(30):
        H = random_3cnf(rng, int(rng.integers(1, 5)), int(rng.integers(1, 4)), (1, 2, 3))
        h = np.array([H.evaluate(r) for r in input_rows(H.num_vars)])
        assert np.array_equal(to_lookup(dual_formula(H)).table, 1 - h[::-1])


def test_sd_dformula_base_case():
    f = sd_dformula(SAT1)
    rows = input_rows(4)
    x1, x2, x3, z = rows.T
    want = ((x1 | x2 | x3) & z) | (x1 & x2 & x3 & (1 - z))
    assert np.array_equal(to_lookup(f).table, want)
    assert is_dformula(f.expr) and expr_symbols(f.expr) <= {"D", "VAR"}


def test_sd_dformula_is_self_dual(rng):
    for _ in range(20):
        H = pad_to_3(random_3cnf(rng, 4, int(rng.integers(1, 5))))
        f = sd_dformula(H)
        assert is_self_dual(to_lookup(f))
        assert np.array_equal(to_lookup(f).table, selfdual_extension_table(H))


def test_sd_dformula_requires_three_literals():
    with pytest.raises(InputError):
        sd_dformula(CNF(2, ((1, 2),)))


def test_widen_with_guard_semantics(rng):
    for _ in range(20):
        H = random_3cnf(rng, 3, 2, (1, 2, 3))
        W = widen_with_guard(H)
        for x in itertools.product((0, 1), repeat=H.num_vars):
            ext = any(W.evaluate((1, *x, *y)) for y in itertools.product((0, 1), repeat=H.m))
            assert ext == bool(H.evaluate(x))


def test_star_examples():
    S = sat_to_star_system(CNF(1, ((1, 1, 1),)))
    assert enumerate_fixed_points(S)
    assert has_vertex_cover_one(S.graph)
    assert not enumerate_fixed_points(sat_to_star_system(UNSAT1))
    assert all(isinstance(f, Formula) and is_dformula(f.expr) for f in S.functions)


def test_guard_leaf_must_copy_centre():
    # with an identity leaf for x0, x0 = 0 satisfies the widened formula and an
    # unsatisfiable H still gets fixed points
    from fixpoint.gadgets import _leaf_identity

    S = sat_to_star_system(UNSAT1)
    loose = System(S.graph, [S.functions[0], _leaf_identity(), *S.functions[2:]])
    assert enumerate_fixed_points(loose)
    assert not enumerate_fixed_points(S)
