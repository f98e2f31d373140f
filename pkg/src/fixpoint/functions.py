"""Boolean local transition functions in three representations.

A local function of arity ``a`` is one of

* :class:`Lookup` -- a truth table of ``2**a`` bits.  Row ``r`` holds the
  value for the argument vector whose bits, read first argument first, spell
  ``r`` in binary (first argument is the most significant bit).
* :class:`Formula` -- an expression tree over the symbols in
  :data:`SYMBOL_ARITY` with leaves ``("VAR", k)``.
* :class:`Circuit` -- a topologically ordered gate list.  Entry indices
  ``0..a-1`` are the inputs; gate ``g`` occupies index ``a + g`` and may read
  only lower indices.

All three evaluate through the same bitwise code path, so a single call can
evaluate a function on one argument vector or on whole columns of a numpy
array at once.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from fixpoint.errors import FormatError, InputError

#: Fixed arity of every basis symbol; AND/OR/XOR/XNOR are binary.
SYMBOL_ARITY = {
    "CONST0": 0,
    "CONST1": 0,
    "NOT": 1,
    "AND": 2,
    "OR": 2,
    "XOR": 2,
    "XNOR": 2,
    "D": 3,
}

Expr = tuple
Bits = Union[int, np.ndarray]


# --------------------------------------------------------------------------
# expression builders

def var(k: int) -> Expr:
    return ("VAR", int(k))


def const(b: int) -> Expr:
    return ("CONST1",) if b else ("CONST0",)


def not_(a: Expr) -> Expr:
    return ("NOT", a)


def _fold(sym: str, args: Sequence[Expr]) -> Expr:
    if len(args) < 2:
        raise InputError(f"{sym} needs at least two operands")
    out = args[0]
    for a in args[1:]:
        out = (sym, out, a)
    return out


def and_(*args: Expr) -> Expr:
    return _fold("AND", args)


def or_(*args: Expr) -> Expr:
    return _fold("OR", args)


def xor(*args: Expr) -> Expr:
    return _fold("XOR", args)


def xnor(a: Expr, b: Expr) -> Expr:
    return ("XNOR", a, b)


def d(x: Expr, y: Expr, z: Expr) -> Expr:
    """The ternary self-dual basis function ``(x & ~y) | (x & ~z) | (~y & ~z)``."""
    return ("D", x, y, z)


# --------------------------------------------------------------------------
# bitwise semantics (works for python ints and uint8 arrays alike)

def apply_symbol(sym: str, vals: Sequence[Bits]) -> Bits:
    if sym == "AND":
        return vals[0] & vals[1]
    if sym == "OR":
        return vals[0] | vals[1]
    if sym == "XOR":
        return vals[0] ^ vals[1]
    if sym == "XNOR":
        return vals[0] ^ vals[1] ^ 1
    if sym == "NOT":
        return vals[0] ^ 1
    if sym == "D":
        x, y, z = vals
        ny, nz = y ^ 1, z ^ 1
        return (x & ny) | (x & nz) | (ny & nz)
    if sym == "CONST0":
        return 0
    if sym == "CONST1":
        return 1
    raise InputError(f"unknown basis symbol {sym!r}")


def eval_expr(expr: Expr, args: Sequence[Bits]) -> Bits:
    head = expr[0]
    if head == "VAR":
        return args[expr[1]]
    return apply_symbol(head, [eval_expr(c, args) for c in expr[1:]])


def expr_variables(expr: Expr) -> set[int]:
    if expr[0] == "VAR":
        return {expr[1]}
    out: set[int] = set()
    for c in expr[1:]:
        out |= expr_variables(c)
    return out


def expr_size(expr: Expr) -> int:
    """Number of symbols (basis symbols and variable leaves) in ``expr``."""
    if expr[0] == "VAR":
        return 1
    return 1 + sum(expr_size(c) for c in expr[1:])


def expr_symbols(expr: Expr) -> set[str]:
    if expr[0] == "VAR":
        return set()
    out = {expr[0]}
    for c in expr[1:]:
        out |= expr_symbols(c)
    return out


def relabel(expr: Expr, mapping: dict[int, int] | Sequence[int]) -> Expr:
    """Rename variable ``k`` to ``mapping[k]`` throughout ``expr``."""
    if expr[0] == "VAR":
        return ("VAR", mapping[expr[1]])
    return (expr[0],) + tuple(relabel(c, mapping) for c in expr[1:])


def _check_expr(expr: Expr, arity: int) -> None:
    if not isinstance(expr, tuple) or not expr:
        raise InputError(f"malformed expression node {expr!r}")
    head = expr[0]
    if head == "VAR":
        if len(expr) != 2 or not isinstance(expr[1], (int, np.integer)):
            raise InputError(f"malformed variable node {expr!r}")
        if not 0 <= expr[1] < arity:
            raise InputError(f"variable {expr[1]} out of range for arity {arity}")
        return
    if head not in SYMBOL_ARITY:
        raise InputError(f"unknown basis symbol {head!r}")
    if len(expr) - 1 != SYMBOL_ARITY[head]:
        raise InputError(f"{head} takes {SYMBOL_ARITY[head]} operands, got {len(expr) - 1}")
    for c in expr[1:]:
        _check_expr(c, arity)


# --------------------------------------------------------------------------
# prefix (Polish) notation

def to_prefix(expr: Expr) -> str:
    out: list[str] = []
    stack = [expr]
    while stack:
        node = stack.pop()
        if node[0] == "VAR":
            out.append(f"VAR {node[1]}")
        else:
            out.append(node[0])
            stack.extend(reversed(node[1:]))
    return " ".join(out)


def parse_prefix(text: str) -> Expr:
    """Parse a whitespace separated prefix expression such as ``D VAR 0 VAR 0 VAR 1``."""
    tokens = text.split()
    pos = 0

    def parse() -> Expr:
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of expression", f"token {pos}")
        tok = tokens[pos]
        pos += 1
        if tok == "VAR":
            if pos >= len(tokens):
                raise FormatError("VAR without index", f"token {pos}")
            try:
                k = int(tokens[pos])
            except ValueError:
                raise FormatError(f"bad variable index {tokens[pos]!r}", f"token {pos}") from None
            if k < 0:
                raise FormatError("negative variable index", f"token {pos}")
            pos += 1
            return ("VAR", k)
        if tok not in SYMBOL_ARITY:
            raise FormatError(f"unknown symbol {tok!r}", f"token {pos - 1}")
        return (tok,) + tuple(parse() for _ in range(SYMBOL_ARITY[tok]))

    expr = parse()
    if pos != len(tokens):
        raise FormatError("trailing tokens after expression", f"token {pos}")
    return expr


# --------------------------------------------------------------------------
# argument enumeration

@lru_cache(maxsize=32)
def input_rows(arity: int) -> np.ndarray:
    """All ``2**arity`` argument vectors as a read-only ``(2**arity, arity)`` uint8 array.

    Row ``r`` is ``r`` written in binary, most significant bit first.
    """
    r = np.arange(1 << arity, dtype=np.int64)
    shifts = np.arange(arity - 1, -1, -1, dtype=np.int64)
    rows = ((r[:, None] >> shifts) & 1).astype(np.uint8)
    rows.flags.writeable = False
    return rows


def row_index(args: Sequence[int]) -> int:
    idx = 0
    for a in args:
        idx = (idx << 1) | int(a)
    return idx


def _as_column(value: Bits, length: int) -> np.ndarray:
    arr = np.asarray(value, dtype=np.uint8)
    if arr.shape != (length,):
        arr = np.broadcast_to(arr, (length,)).copy()
    return arr


# --------------------------------------------------------------------------
# representations

class LocalFunction:
    """Common interface of the three representations."""

    arity: int
    kind: str

    def evaluate(self, args: Sequence[Bits]) -> Bits:
        raise NotImplementedError

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(args)}")
        return int(self.evaluate(args))

    def columns(self, cols: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate on equal-length uint8 columns, one column per argument."""
        if len(cols) != self.arity:
            raise InputError(f"expected {self.arity} argument columns, got {len(cols)}")
        length = len(cols[0]) if cols else 1
        return _as_column(self.evaluate(cols), length)

    @cached_property
    def table(self) -> np.ndarray:
        rows = input_rows(self.arity)
        out = self.columns([rows[:, k] for k in range(self.arity)])
        out.flags.writeable = False
        return out

    def value_at(self, row: int) -> int:
        return int(self.table[row])


class Lookup(LocalFunction):
    kind = "lookup"

    def __init__(self, table: str | Iterable[int] | np.ndarray):
        if isinstance(table, str):
            if set(table) - {"0", "1"}:
                raise InputError("lookup table must be a string of 0/1 characters")
            arr = np.frombuffer(table.encode("ascii"), dtype=np.uint8) - ord("0")
        else:
            arr = np.asarray(list(table) if not isinstance(table, np.ndarray) else table)
            if arr.size and not np.isin(arr, (0, 1)).all():
                raise InputError("lookup table entries must be 0 or 1")
        arr = np.array(arr, dtype=np.uint8).reshape(-1)
        size = arr.size
        if size == 0 or size & (size - 1):
            raise InputError(f"lookup table length {size} is not a power of two")
        arr.flags.writeable = False
        self.arity = size.bit_length() - 1
        self.__dict__["table"] = arr

    def evaluate(self, args: Sequence[Bits]) -> Bits:
        if len(args) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(args)}")
        idx: Bits = 0
        for a in args:
            idx = (idx << 1) | (a.astype(np.int64) if isinstance(a, np.ndarray) else int(a))
        if isinstance(idx, np.ndarray):
            return self.table[idx]
        return int(self.table[idx])

    @property
    def bits(self) -> str:
        return (self.table + ord("0")).tobytes().decode("ascii")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lookup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(("lookup", self.table.tobytes()))

    def __repr__(self) -> str:
        bits = self.bits
        return f"Lookup({bits if len(bits) <= 64 else bits[:61] + '...'!r})"


class Formula(LocalFunction):
    kind = "formula"

    def __init__(self, expr: Expr, arity: int):
        _check_expr(expr, arity)
        self.expr = expr
        self.arity = int(arity)

    def evaluate(self, args: Sequence[Bits]) -> Bits:
        if len(args) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(args)}")
        return eval_expr(self.expr, args)

    @property
    def size(self) -> int:
        return expr_size(self.expr)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Formula) and (self.expr, self.arity) == (other.expr, other.arity)

    def __hash__(self) -> int:
        return hash(("formula", self.expr, self.arity))

    def __repr__(self) -> str:
        return f"Formula({to_prefix(self.expr)!r}, arity={self.arity})"


class Circuit(LocalFunction):
    """Gate list circuit; each gate is ``(symbol, input_index, ...)``."""

    kind = "circuit"

    def __init__(self, gates: Sequence[Sequence], arity: int, output: int | None = None):
        self.arity = int(arity)
        norm = []
        for g, gate in enumerate(gates):
            sym, *ins = gate
            if sym not in SYMBOL_ARITY:
                raise InputError(f"gate {g}: unknown basis symbol {sym!r}")
            if len(ins) != SYMBOL_ARITY[sym]:
                raise InputError(f"gate {g}: {sym} takes {SYMBOL_ARITY[sym]} inputs, got {len(ins)}")
            for i in ins:
                if not 0 <= int(i) < self.arity + g:
                    raise InputError(f"gate {g}: input {i} is not an earlier entry")
            norm.append((sym,) + tuple(int(i) for i in ins))
        self.gates = tuple(norm)
        top = self.arity + len(self.gates) - 1
        if output is None:
            output = top
        if not 0 <= output <= top:
            raise InputError(f"circuit output {output} does not name an entry")
        self.output = int(output)

    def evaluate(self, args: Sequence[Bits]) -> Bits:
        if len(args) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(args)}")
        vals = list(args)
        for sym, *ins in self.gates:
            vals.append(apply_symbol(sym, [vals[i] for i in ins]))
        return vals[self.output]

    @property
    def size(self) -> int:
        """Gate count including input gates."""
        return self.arity + len(self.gates)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Circuit) and (self.gates, self.arity, self.output) == (
            other.gates,
            other.arity,
            other.output,
        )

    def __hash__(self) -> int:
        return hash(("circuit", self.gates, self.arity, self.output))

    def __repr__(self) -> str:
        return f"Circuit({len(self.gates)} gates, arity={self.arity}, output={self.output})"


def eval_local(f: LocalFunction, args: Sequence[int]) -> int:
    """Evaluate ``f`` on one argument vector."""
    if len(args) != f.arity:
        raise InputError(f"arity mismatch: function takes {f.arity} arguments, got {len(args)}")
    return int(f.evaluate([int(a) for a in args]))


def to_lookup(f: LocalFunction) -> Lookup:
    """Materialise the ``2**arity`` row truth table of ``f``."""
    if isinstance(f, Lookup):
        return f
    return Lookup(f.table)


def formula_to_circuit(f: Formula) -> Circuit:
    """Translate a formula into a gate list, one gate per internal node."""
    gates: list[tuple] = []

    def emit(node: Expr) -> int:
        if node[0] == "VAR":
            return node[1]
        ins = [emit(c) for c in node[1:]]
        gates.append((node[0], *ins))
        return f.arity + len(gates) - 1

    out = emit(f.expr)
    if not gates:
        # bare projection: route through AND(x, x)
        gates.append(("AND", out, out))
        out = f.arity
    return Circuit(gates, f.arity, out)


def table_to_formula(table: Lookup | str | Sequence[int]) -> Formula:
    """Disjunctive normal form over AND/OR/NOT (CONST0 for the empty function)."""
    lk = table if isinstance(table, Lookup) else Lookup(table)
    a = lk.arity
    rows = input_rows(a)
    terms = []
    for r in np.flatnonzero(lk.table):
        lits = [var(k) if rows[r, k] else not_(var(k)) for k in range(a)]
        if not lits:
            terms.append(const(1))
        elif len(lits) == 1:
            terms.append(lits[0])
        else:
            terms.append(and_(*lits))
    if not terms:
        return Formula(const(0), a)
    return Formula(terms[0] if len(terms) == 1 else or_(*terms), a)


# the named basis functions as lookup tables
AND2 = Lookup("0001")
OR2 = Lookup("0111")
XOR2 = Lookup("0110")
XNOR2 = Lookup("1001")
NOT1 = Lookup("10")
ID1 = Lookup("01")
D3 = Formula(d(var(0), var(1), var(2)), 3)
