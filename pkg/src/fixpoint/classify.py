"""Post-class predicates for local functions and the tractability dichotomy.

The four coatoms other than the self-dual functions (0-reproducing,
1-reproducing, monotone, linear) are decided directly from truth tables.  A
set of generators spans a clone without all self-dual functions exactly when
all generators lie in one of those four coatoms, so no clone closure is ever
materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from fixpoint.core import Graph
from fixpoint.errors import InputError
from fixpoint.functions import LocalFunction, Lookup, input_rows, to_lookup
from fixpoint.graphs import K2_PLUS_K2, K3, K33, K5, has_vertex_cover_one, is_planar


# --------------------------------------------------------------------------
# function predicates

def _table(f: LocalFunction | str) -> np.ndarray:
    if isinstance(f, str):
        f = Lookup(f)
    return f.table


def is_b_reproducing(f: LocalFunction, b: int) -> bool:
    t = _table(f)
    return int(t[-1 if b else 0]) == b


def is_monotone(f: LocalFunction) -> bool:
    """Check every edge ``x -> x + e_k`` of the hypercube."""
    t = _table(f)
    a = t.size.bit_length() - 1
    rows = np.arange(t.size)
    for k in range(a):
        bit = 1 << k
        low = rows[(rows & bit) == 0]
        if np.any(t[low] > t[low | bit]):
            return False
    return True


def monotonicity_violation(f: LocalFunction) -> tuple[int, int] | None:
    """A pair of rows ``(x, y)`` with ``x <= y`` but ``f(x) > f(y)``, if any."""
    t = _table(f)
    a = t.size.bit_length() - 1
    for k in range(a):
        bit = 1 << k
        for r in range(t.size):
            if not r & bit and t[r] > t[r | bit]:
                return r, r | bit
    return None


def is_linear(f: LocalFunction) -> tuple[int, ...] | None:
    """Affine coefficients ``(a0, a1, ..., an)`` of ``f`` over GF(2), or ``None``.

    ``a0 = f(0..0)`` and ``aj = f(e_j) ^ a0``; the candidate is then checked
    on the whole table.
    """
    t = _table(f)
    a = t.size.bit_length() - 1
    a0 = int(t[0])
    # e_j (first argument most significant) sits at row 1 << (a - 1 - j)
    coeffs = [int(t[1 << (a - 1 - j)]) ^ a0 for j in range(a)]
    rows = input_rows(a)
    predicted = (rows @ np.array(coeffs, dtype=np.int64) + a0) % 2 if a else np.array([a0])
    if not np.array_equal(predicted.astype(np.uint8), t):
        return None
    return (a0, *coeffs)


def is_self_dual(f: LocalFunction) -> bool:
    t = _table(f)
    # complementing every argument maps row r to row (2**a - 1) - r
    return bool(np.all(t == 1 - t[::-1]))


def identify_arguments(f: LocalFunction, i: int, j: int) -> Lookup:
    """The function of arity ``a - 1`` obtained by forcing argument ``j`` equal to argument ``i``."""
    t = _table(f)
    a = t.size.bit_length() - 1
    if not (0 <= i < a and 0 <= j < a) or i == j:
        raise InputError("identify_arguments needs two distinct argument positions")
    rows = input_rows(a - 1)
    keep = [k for k in range(a) if k != j]
    full = np.zeros((rows.shape[0], a), dtype=np.int64)
    for pos, k in enumerate(keep):
        full[:, k] = rows[:, pos]
    full[:, j] = full[:, i]
    idx = full @ (1 << np.arange(a - 1, -1, -1, dtype=np.int64))
    return Lookup(t[idx])


# --------------------------------------------------------------------------
# class specifications

class PostClass(str, Enum):
    R0 = "R0"
    R1 = "R1"
    M = "M"
    L = "L"
    D = "D"
    BF = "BF"


COATOM_TESTS = {
    PostClass.R0: lambda f: is_b_reproducing(f, 0),
    PostClass.R1: lambda f: is_b_reproducing(f, 1),
    PostClass.M: is_monotone,
    PostClass.L: lambda f: is_linear(f) is not None,
    PostClass.D: is_self_dual,
}


def member_classes(f: LocalFunction) -> set[PostClass]:
    """The coatoms containing ``f`` (BF always holds and is included)."""
    return {c for c, test in COATOM_TESTS.items() if test(f)} | {PostClass.BF}


@dataclass(frozen=True)
class FunctionClassSpec:
    """Either a named Post class or the clone generated by a basis of tables."""

    named: PostClass | None = None
    basis: tuple[Lookup, ...] = ()

    def __post_init__(self) -> None:
        if self.named is None and not self.basis:
            raise InputError("a generated function class needs a non-empty basis")
        if self.named is not None and self.basis:
            raise InputError("give either a named class or a basis, not both")

    @classmethod
    def of(cls, name: str | PostClass) -> "FunctionClassSpec":
        try:
            return cls(named=PostClass(str(getattr(name, "value", name)).upper()))
        except ValueError:
            raise InputError(f"unknown Post class {name!r}; expected one of R0 R1 M L D BF") from None

    @classmethod
    def generated(cls, basis: Sequence[LocalFunction | str]) -> "FunctionClassSpec":
        tables = tuple(Lookup(b) if isinstance(b, str) else to_lookup(b) for b in basis)
        return cls(basis=tables)

    def coatoms(self) -> list[PostClass]:
        """Coatoms among R1, R0, L, M containing the whole class, in solver probe order."""
        probe = [PostClass.R1, PostClass.R0, PostClass.L, PostClass.M]
        if self.named is not None:
            return [self.named] if self.named in probe else []
        return [c for c in probe if all(COATOM_TESTS[c](f) for f in self.basis)]

    def __str__(self) -> str:
        if self.named is not None:
            return self.named.value
        return "Clone(" + ", ".join(b.bits for b in self.basis) + ")"


def closure_contains_selfduals(spec: FunctionClassSpec) -> bool:
    if spec.named is not None:
        return spec.named in (PostClass.D, PostClass.BF)
    return not spec.coatoms()


#: subset relation between named classes (reflexive)
NAMED_INCLUSION = {c: {c, PostClass.BF} for c in PostClass}


GRAPH_ALIASES: dict[str, tuple[Graph, ...]] = {
    "ALL": (),
    "PLANAR": (K33, K5),
    "VC1": (K3, K2_PLUS_K2),
}


@dataclass(frozen=True)
class GraphClassSpec:
    """A minor-closed graph class given by its forbidden minors."""

    forbidden: tuple[Graph, ...] = ()
    name: str | None = None

    @classmethod
    def of(cls, alias: str) -> "GraphClassSpec":
        key = alias.upper()
        if key not in GRAPH_ALIASES:
            raise InputError(f"unknown graph class {alias!r}; expected one of {sorted(GRAPH_ALIASES)}")
        return cls(GRAPH_ALIASES[key], key)

    @classmethod
    def forbidding(cls, *minors: Graph, name: str | None = None) -> "GraphClassSpec":
        return cls(tuple(minors), name)

    def __str__(self) -> str:
        if self.name:
            return self.name
        return "Forb(" + ", ".join(f"<{g.n} vertices, {g.m} edges>" for g in self.forbidden) + ")"


# --------------------------------------------------------------------------
# verdicts

class Algorithm(str, Enum):
    CONSTANT_WITNESS_0 = "ConstantWitness0"
    CONSTANT_WITNESS_1 = "ConstantWitness1"
    MONOTONE_ITERATION = "MonotoneIteration"
    LINEAR_ALGEBRA = "LinearAlgebra"
    BOUNDED_TREEWIDTH = "BoundedTreewidth"
    BOUNDED_DEGREE_EXPANSION = "BoundedDegreeExpansion"
    BRUTE_FORCE = "BruteForce"


class Reduction(str, Enum):
    PLANAR_LOOKUP = "PlanarLookup"
    STAR_FORMULA = "StarFormula"


COATOM_ALGORITHM = {
    PostClass.R0: Algorithm.CONSTANT_WITNESS_0,
    PostClass.R1: Algorithm.CONSTANT_WITNESS_1,
    PostClass.M: Algorithm.MONOTONE_ITERATION,
    PostClass.L: Algorithm.LINEAR_ALGEBRA,
}

MODES = ("lookup", "formula", "circuit")


@dataclass(frozen=True)
class Verdict:
    tractable: bool
    tag: Algorithm | Reduction

    def __post_init__(self) -> None:
        if self.tractable != isinstance(self.tag, Algorithm):
            raise InputError("tractable verdicts carry an algorithm tag, hard ones a reduction tag")

    def __str__(self) -> str:
        return f"{'Tractable' if self.tractable else 'NPComplete'}({self.tag.value})"


def dichotomy(spec_f: FunctionClassSpec, spec_g: GraphClassSpec, mode: str) -> Verdict:
    """Classify fixed-point existence for a (function class, graph class, representation) triple.

    Lookup tables are hard exactly when the clone contains the self-dual
    functions and every planar graph is allowed (no forbidden minor is planar).
    Formulas and circuits are hard exactly when the clone contains the
    self-dual functions and every graph with a vertex cover of size one is
    allowed.
    """
    if mode not in MODES:
        raise InputError(f"unknown representation mode {mode!r}")
    if mode == "lookup":
        escape = [x for x in spec_g.forbidden if is_planar(x)]
        graph_tag, hard_tag = Algorithm.BOUNDED_TREEWIDTH, Reduction.PLANAR_LOOKUP
    else:
        escape = [x for x in spec_g.forbidden if has_vertex_cover_one(x)]
        graph_tag, hard_tag = Algorithm.BOUNDED_DEGREE_EXPANSION, Reduction.STAR_FORMULA

    if closure_contains_selfduals(spec_f):
        if escape:
            return Verdict(True, graph_tag)
        return Verdict(False, hard_tag)
    return Verdict(True, COATOM_ALGORITHM[spec_f.coatoms()[0]])
