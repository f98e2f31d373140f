"""JSON documents for systems, graphs, CSP dumps and reports.

Serialisation is canonical: sorted keys, two-space indentation and a
trailing newline, so identical objects always produce identical bytes.

System document::

    {
      "vertices": 2,
      "edges": [[1, 2]],
      "functions": [
        {"vertex": 1, "repr": "lookup",  "data": "0110"},
        {"vertex": 2, "repr": "formula", "data": "AND VAR 0 VAR 1"}
      ]
    }

Lookup data is the truth table, first argument most significant.  Formula
data is a prefix expression over ``AND OR NOT XOR XNOR D CONST0 CONST1`` and
``VAR k``.  Circuit data is ``{"gates": [[symbol, input, ...], ...],
"output": k}`` where inputs ``0..arity-1`` are the arguments and gate ``g``
is entry ``arity + g``.  Arguments of vertex ``i`` are its closed
neighbourhood in ascending vertex order.
"""

from __future__ import annotations

import json
from typing import Any

from fixpoint.core import Graph, System
from fixpoint.csp import CSPInstance
from fixpoint.errors import FormatError, InputError
from fixpoint.functions import Circuit, Formula, LocalFunction, Lookup, parse_prefix, to_prefix


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what} is not valid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None


# --------------------------------------------------------------------------
# graphs

def graph_to_dict(G: Graph) -> dict:
    return {"vertices": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def graph_from_dict(obj: Any, where: str = "$") -> Graph:
    if not isinstance(obj, dict):
        raise FormatError("graph must be a JSON object", where)
    n = obj.get("vertices")
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError("'vertices' must be an integer", f"{where}.vertices")
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError("'edges' must be a list", f"{where}.edges")
    pairs = []
    for k, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise FormatError("each edge must be a pair of integers", f"{where}.edges[{k}]")
        pairs.append(tuple(e))
    try:
        return Graph.from_edges(n, pairs)
    except InputError as exc:
        raise FormatError(str(exc), f"{where}.edges") from None


# --------------------------------------------------------------------------
# local functions and systems

def function_to_dict(vertex: int, f: LocalFunction) -> dict:
    if isinstance(f, Lookup):
        data: Any = f.bits
    elif isinstance(f, Formula):
        data = to_prefix(f.expr)
    elif isinstance(f, Circuit):
        data = {"gates": [list(g) for g in f.gates], "output": f.output}
    else:
        raise InputError(f"cannot serialise {type(f).__name__}")
    return {"vertex": vertex, "repr": f.kind, "data": data}


def function_from_dict(obj: Any, arity: int, where: str) -> LocalFunction:
    if not isinstance(obj, dict):
        raise FormatError("function entry must be an object", where)
    kind, data = obj.get("repr"), obj.get("data")
    try:
        if kind == "lookup":
            if not isinstance(data, str):
                raise FormatError("lookup data must be a 0/1 string", f"{where}.data")
            f: LocalFunction = Lookup(data)
        elif kind == "formula":
            if not isinstance(data, str):
                raise FormatError("formula data must be a prefix expression string", f"{where}.data")
            try:
                expr = parse_prefix(data)
            except FormatError as exc:
                raise FormatError(str(exc), f"{where}.data") from None
            f = Formula(expr, arity)
        elif kind == "circuit":
            if not isinstance(data, dict) or not isinstance(data.get("gates"), list):
                raise FormatError("circuit data must be an object with a 'gates' list", f"{where}.data")
            f = Circuit([tuple(g) for g in data["gates"]], arity, data.get("output"))
        else:
            raise FormatError(f"unknown repr {kind!r}", f"{where}.repr")
    except FormatError:
        raise
    except (InputError, TypeError, ValueError) as exc:
        raise FormatError(str(exc), f"{where}.data") from None
    if f.arity != arity:
        raise FormatError(f"function has arity {f.arity}, vertex needs {arity}", f"{where}.data")
    return f


def system_to_dict(S: System) -> dict:
    out = graph_to_dict(S.graph)
    out["functions"] = [function_to_dict(v, S.function(v)) for v in S.graph.vertices]
    return out


def system_from_dict(obj: Any) -> System:
    graph = graph_from_dict(obj)
    funcs = obj.get("functions")
    if not isinstance(funcs, list):
        raise FormatError("'functions' must be a list", "$.functions")
    by_vertex: dict[int, LocalFunction] = {}
    for k, entry in enumerate(funcs):
        where = f"$.functions[{k}]"
        v = entry.get("vertex") if isinstance(entry, dict) else None
        if not isinstance(v, int) or not 1 <= v <= graph.n:
            raise FormatError("'vertex' must name a vertex of the graph", f"{where}.vertex")
        if v in by_vertex:
            raise FormatError(f"duplicate function for vertex {v}", f"{where}.vertex")
        by_vertex[v] = function_from_dict(entry, graph.degree(v) + 1, where)
    missing = sorted(set(graph.vertices) - set(by_vertex))
    if missing:
        raise FormatError(f"no function for vertices {missing}", "$.functions")
    return System(graph, by_vertex)


def dumps_system(S: System) -> str:
    return dumps(system_to_dict(S))


def loads_system(text: str) -> System:
    """Parse a system document; a ``reduce`` report is unwrapped to its ``system`` entry."""
    obj = _load_json(text, "system document")
    if isinstance(obj, dict) and "vertices" not in obj and isinstance(obj.get("system"), dict):
        obj = obj["system"]
    return system_from_dict(obj)


def load_system(path: str) -> System:
    with open(path, encoding="utf-8") as fh:
        return loads_system(fh.read())


def loads_graphs(text: str) -> list[Graph]:
    """A forbidden-minor list: ``{"forbidden": [graph, ...]}`` or a bare list of graphs."""
    obj = _load_json(text, "minor list")
    items = obj.get("forbidden") if isinstance(obj, dict) else obj
    if not isinstance(items, list):
        raise FormatError("expected a list of graphs", "$")
    return [graph_from_dict(g, f"$[{k}]") for k, g in enumerate(items)]


# --------------------------------------------------------------------------
# CSP dump

def csp_to_dict(csp: CSPInstance) -> dict:
    def val(x: Any) -> Any:
        return list(x) if isinstance(x, tuple) else x

    return {
        "variables": list(csp.variables),
        "domains": {str(v): [val(x) for x in sorted(csp.domains[v])] for v in csp.variables},
        "constraints": [
            {"scope": list(c.scope), "allowed": sorted([val(a), val(b)] for a, b in c.allowed)}
            for c in csp.constraints
        ],
    }


def dumps_csp(csp: CSPInstance) -> str:
    return dumps(csp_to_dict(csp))
