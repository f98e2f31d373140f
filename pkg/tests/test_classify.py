import itertools

import pytest

from fixpoint.classify import (
    FunctionClassSpec,
    GraphClassSpec,
    PostClass,
    dichotomy,
    identify_arguments,
    is_b_reproducing,
    is_linear,
    is_monotone,
    is_self_dual,
    member_classes,
    monotonicity_violation,
    closure_contains_selfduals,
)
from fixpoint.core import complete_bipartite
from fixpoint.errors import InputError
from fixpoint.functions import AND2, D3, ID1, NOT1, OR2, XOR2, Lookup, input_rows
from fixpoint.generate import random_table
from fixpoint.graphs import K4


# brute-force predicate oracles over explicit tables

def _rows(k):
    return [tuple(int(x) for x in r) for r in input_rows(k)]


def mono_oracle(t, k):
    rows = _rows(k)
    return all(t[a] <= t[b] for a in range(len(rows)) for b in range(len(rows))
               if all(x <= y for x, y in zip(rows[a], rows[b])))


def linear_oracle(t, k):
    for coeffs in itertools.product((0, 1), repeat=k + 1):
        if all((coeffs[0] + sum(c * x for c, x in zip(coeffs[1:], r))) % 2 == t[i] for i, r in enumerate(_rows(k))):
            return coeffs
    return None


def sd_oracle(t, k):
    rows = _rows(k)
    index = {r: i for i, r in enumerate(rows)}
    return all(t[index[tuple(1 - x for x in r)]] == 1 - t[i] for i, r in enumerate(rows))


def test_reproducing_examples():
    assert is_b_reproducing(AND2, 1)
    assert not is_b_reproducing(D3, 0)
    assert is_b_reproducing(ID1, 0) and is_b_reproducing(ID1, 1)


def test_monotone_examples():
    assert is_monotone(OR2)
    assert not is_monotone(NOT1)
    assert not is_monotone(D3)
    lo, hi = monotonicity_violation(D3)
    assert D3.table[lo] > D3.table[hi]


def test_linear_examples():
    assert is_linear(XOR2) == (0, 1, 1)
    assert is_linear(Lookup("1111")) == (1, 0, 0)
    assert is_linear(AND2) is None


def test_self_dual_examples():
    assert is_self_dual(ID1)
    assert is_self_dual(D3)
    assert not is_self_dual(AND2)


def test_predicates_match_oracles(rng):
    for _ in range(200):
        k = int(rng.integers(1, 5))
        t = [int(b) for b in rng.integers(0, 2, size=1 << k)]
        f = Lookup(t)
        assert is_monotone(f) == mono_oracle(t, k)
        assert is_linear(f) == linear_oracle(t, k)
        assert is_self_dual(f) == sd_oracle(t, k)
        assert is_b_reproducing(f, 0) == (t[0] == 0)
        assert is_b_reproducing(f, 1) == (t[-1] == 1)


def test_generators_respect_class(rng):
    for cls in PostClass:
        for k in range(1, 5):
            for _ in range(10):
                assert cls in member_classes(random_table(rng, k, cls))


def test_identify_arguments_of_d_gives_negation():
    # D(x, x, y) is not y
    assert identify_arguments(D3, 0, 1).bits == "1010"


def test_closure_membership():
    assert closure_contains_selfduals(FunctionClassSpec.generated([D3]))
    assert not closure_contains_selfduals(FunctionClassSpec.generated([AND2, OR2]))
    assert not closure_contains_selfduals(FunctionClassSpec.of("L"))
    assert closure_contains_selfduals(FunctionClassSpec.generated([AND2, NOT1]))


def test_unknown_names():
    with pytest.raises(InputError):
        FunctionClassSpec.of("Q")
    with pytest.raises(InputError):
        GraphClassSpec.of("TOROIDAL")


def test_dichotomy_examples():
    planar = GraphClassSpec.of("PLANAR")
    assert str(dichotomy(FunctionClassSpec.of("D"), planar, "lookup")) == "NPComplete(PlanarLookup)"
    assert str(dichotomy(FunctionClassSpec.of("BF"), GraphClassSpec.forbidding(K4), "lookup")) == \
        "Tractable(BoundedTreewidth)"
    assert str(dichotomy(FunctionClassSpec.of("D"), GraphClassSpec.of("VC1"), "formula")) == \
        "NPComplete(StarFormula)"
    assert str(dichotomy(FunctionClassSpec.of("M"), GraphClassSpec.of("ALL"), "circuit")) == \
        "Tractable(MonotoneIteration)"
    assert str(dichotomy(FunctionClassSpec.generated([XOR2, AND2]), GraphClassSpec.of("ALL"), "lookup")) == \
        "Tractable(ConstantWitness0)"


def test_dichotomy_nonplanar_minor_does_not_escape():
    spec = GraphClassSpec.forbidding(complete_bipartite(3, 3))
    assert not dichotomy(FunctionClassSpec.of("D"), spec, "lookup").tractable
    assert not dichotomy(FunctionClassSpec.of("D"), spec, "formula").tractable
