"""Graph-class predicates: minors, planarity, vertex cover one, treewidth."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import networkx as nx

from fixpoint.core import Graph, complete_bipartite, complete_graph, disjoint_union, path_graph
from fixpoint.errors import BudgetExceeded, ContractError

MAX_MINOR_VERTICES = 6

K3 = complete_graph(3)
K4 = complete_graph(4)
K5 = complete_graph(5)
K33 = complete_bipartite(3, 3)
K2_PLUS_K2 = disjoint_union(path_graph(2), path_graph(2))


# --------------------------------------------------------------------------
# minors

def _is_forest(G: Graph) -> bool:
    return G.m == G.n - len(G.components())


def _two_disjoint_edges(G: Graph) -> bool:
    edges = G.sorted_edges()
    for (a, b), (c, d) in combinations(edges, 2):
        if len({a, b, c, d}) == 4:
            return True
    return False


def _same_graph(G: Graph, H: Graph) -> bool:
    return G.n == H.n and nx.is_isomorphic(G.to_networkx(), H.to_networkx())


def _connected_sets(adj: dict[int, tuple[int, ...]], root: int, allowed: set[int],
                    max_size: int) -> Iterator[frozenset]:
    """Every connected subset of ``allowed`` containing ``root``, each exactly once."""

    def extend(current: frozenset, frontier: list[int], banned: set[int]) -> Iterator[frozenset]:
        yield current
        if len(current) >= max_size:
            return
        frontier = list(frontier)
        banned = set(banned)
        while frontier:
            w = frontier.pop()
            grown = current | {w}
            new_frontier = frontier + [
                x for x in adj[w]
                if x in allowed and x not in grown and x not in banned and x not in frontier
            ]
            yield from extend(grown, new_frontier, banned)
            banned.add(w)

    start = [x for x in adj[root] if x in allowed and x != root]
    yield from extend(frozenset([root]), start, {root})


def find_minor_model(G: Graph, H: Graph) -> dict[int, frozenset] | None:
    """Branch sets witnessing ``H <= G``, or ``None``.

    The returned map sends every vertex of ``H`` to a connected vertex set of
    ``G``; the sets are pairwise disjoint and adjacent whenever the
    corresponding ``H`` vertices are.
    """
    if H.n > MAX_MINOR_VERTICES:
        raise BudgetExceeded(
            f"minor search refused: pattern has {H.n} vertices, limit is {MAX_MINOR_VERTICES}",
            budget="minor_vertices",
            limit=MAX_MINOR_VERTICES,
        )
    if H.n > G.n or H.m > G.m:
        return None
    hadj = H.adjacency
    gadj = G.adjacency
    isolated = [v for v in H.vertices if not hadj[v]]
    core = [v for v in H.vertices if hadj[v]]

    # BFS order inside each component of H, highest degree first
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(core, key=lambda v: -len(hadj[v])):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(hadj[u], key=lambda v: -len(hadj[v])):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    model: dict[int, frozenset] = {}

    def touches(S: frozenset, B: frozenset) -> bool:
        return any(w in B for x in S for w in gadj[x])

    def place(k: int, free: set[int]) -> bool:
        remaining = len(order) - k
        if len(free) < remaining + len(isolated):
            return False
        if k == len(order):
            return True
        v = order[k]
        placed = [u for u in hadj[v] if u in model]
        if placed:
            anchor = model[placed[0]]
            roots = sorted({w for x in anchor for w in gadj[x] if w in free})
        else:
            roots = sorted(free)
        max_size = len(free) - (remaining - 1) - len(isolated)
        allowed = set(free)
        for r in roots:
            for S in _connected_sets(gadj, r, allowed, max_size):
                if all(touches(S, model[u]) for u in placed):
                    model[v] = S
                    if place(k + 1, free - S):
                        return True
                    del model[v]
            # sets through r are exhausted; later roots must avoid it
            allowed.discard(r)
        return False

    if not place(0, set(G.vertices)):
        return None
    used = set().union(*model.values()) if model else set()
    spare = sorted(set(G.vertices) - used)
    for v, g in zip(isolated, spare):
        model[v] = frozenset([g])
    return model


def has_minor(G: Graph, H: Graph) -> bool:
    """Decide ``H <= G`` (``H`` is a minor of ``G``)."""
    if H.n > MAX_MINOR_VERTICES:
        raise BudgetExceeded(
            f"minor search refused: pattern has {H.n} vertices, limit is {MAX_MINOR_VERTICES}",
            budget="minor_vertices",
            limit=MAX_MINOR_VERTICES,
        )
    if H.n > G.n or H.m > G.m:
        return False
    if H.m == 0:
        return True
    if _same_graph(H, K3):
        return not _is_forest(G)
    if _same_graph(H, K2_PLUS_K2):
        return _two_disjoint_edges(G)
    return find_minor_model(G, H) is not None


# --------------------------------------------------------------------------
# planarity

def check_planarity(G: Graph) -> tuple[bool, dict[int, list[int]] | None]:
    """Planarity test returning a rotation system on success.

    The rotation system maps each vertex to its neighbours in clockwise order
    around it in some planar drawing.
    """
    planar, emb = nx.check_planarity(G.to_networkx())
    if not planar:
        return False, None
    return True, {v: list(emb.neighbors_cw_order(v)) for v in G.vertices}


def is_planar(G: Graph) -> bool:
    return check_planarity(G)[0]


def count_faces(G: Graph, rotation: dict[int, Sequence[int]]) -> int:
    """Number of face boundary walks traced by a rotation system."""
    nxt: dict[tuple[int, int], tuple[int, int]] = {}
    for v, ring in rotation.items():
        k = len(ring)
        for idx, u in enumerate(ring):
            # arriving at v from u, leave along the successor of u around v
            w = ring[(idx + 1) % k]
            nxt[(u, v)] = (v, w)
    seen: set[tuple[int, int]] = set()
    faces = 0
    for dart in nxt:
        if dart in seen:
            continue
        faces += 1
        cur = dart
        while cur not in seen:
            seen.add(cur)
            cur = nxt[cur]
    return faces


def is_planar_rotation(G: Graph, rotation: dict[int, Sequence[int]]) -> bool:
    """Check that ``rotation`` describes a planar embedding of ``G`` via Euler's formula."""
    for v in G.vertices:
        if sorted(rotation.get(v, [])) != list(G.neighbors(v)):
            return False
    comps = G.components()
    isolated = sum(1 for c in comps if len(c) == 1)
    nontrivial = len(comps) - isolated
    # every non-trivial component traced on its own sphere satisfies V - E + F = 2
    return G.n - isolated - G.m + count_faces(G, rotation) == 2 * nontrivial


# --------------------------------------------------------------------------
# vertex cover of size one

def vertex_cover_one(G: Graph) -> int | None:
    """A vertex touching every edge, or ``None``."""
    if not G.edges:
        return 1 if G.n else None
    u, v = next(iter(G.edges))
    for c in (u, v):
        if all(c in e for e in G.edges):
            return c
    return None


def has_vertex_cover_one(G: Graph) -> bool:
    if not G.edges:
        return True
    return vertex_cover_one(G) is not None


# --------------------------------------------------------------------------
# tree decompositions

@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed ``0..len(bags)-1`` joined by ``tree_edges``."""

    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {k: [] for k in range(len(self.bags))}
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def violations(self, vertices: Sequence, edges: Sequence[tuple]) -> list[str]:
        """Names of the decomposition invariants that fail for the given graph."""
        out = []
        k = len(self.bags)
        adj = self.neighbors()
        # tree: connected and acyclic
        if k == 0:
            if len(vertices):
                out.append("vertex coverage")
            return out
        if len(self.tree_edges) != k - 1 or any(not (0 <= a < k and 0 <= b < k) for a, b in self.tree_edges):
            out.append("tree")
        else:
            seen, stack = {0}, [0]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != k:
                out.append("tree")
        covered = set().union(*self.bags)
        if any(v not in covered for v in vertices):
            out.append("vertex coverage")
        for u, v in edges:
            if not any(u in b and v in b for b in self.bags):
                out.append("edge coverage")
                break
        if "tree" not in out:
            for v in covered:
                holders = {i for i, b in enumerate(self.bags) if v in b}
                start = next(iter(holders))
                seen, stack = {start}, [start]
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y in holders and y not in seen:
                            seen.add(y)
                            stack.append(y)
                if seen != holders:
                    out.append("running intersection")
                    break
        return out

    def validate(self, vertices: Sequence, edges: Sequence[tuple]) -> None:
        bad = self.violations(vertices, edges)
        if bad:
            raise ContractError(f"invalid tree decomposition: {', '.join(bad)} violated")


def treewidth_upper_bound(G: Graph) -> tuple[int, TreeDecomposition]:
    """Min-fill-in heuristic decomposition (valid, not necessarily optimal)."""
    from networkx.algorithms.approximation import treewidth_min_fill_in

    if G.n == 0:
        return -1, TreeDecomposition((), ())
    _, decomp = treewidth_min_fill_in(G.to_networkx())
    nodes = list(decomp.nodes)
    index = {b: k for k, b in enumerate(nodes)}
    td = TreeDecomposition(
        tuple(frozenset(b) for b in nodes),
        tuple((index[a], index[b]) for a, b in decomp.edges),
    )
    td.validate(list(G.vertices), G.sorted_edges())
    return td.width, td


def exact_treewidth(G: Graph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets (small graphs only)."""
    n = G.n
    if n == 0:
        return -1
    if n > 16:
        raise BudgetExceeded("exact treewidth is limited to 16 vertices", budget="exact_tw", limit=16)
    vs = list(G.vertices)
    bit = {v: 1 << k for k, v in enumerate(vs)}
    adj = {v: sum(bit[w] for w in G.neighbors(v)) for v in vs}

    def q(S: int, v: int) -> int:
        # vertices outside S+v reachable from v through S
        seen = bit[v]
        stack = [v]
        out = 0
        while stack:
            x = stack.pop()
            nb = adj[x] & ~seen
            seen |= nb
            for w in vs:
                if nb & bit[w]:
                    if S & bit[w]:
                        stack.append(w)
                    else:
                        out |= bit[w]
        return bin(out).count("1")

    full = (1 << n) - 1
    tw = {0: -1}
    for S in range(1, full + 1):
        best = n
        for v in vs:
            if S & bit[v]:
                rest = S & ~bit[v]
                best = min(best, max(tw[rest], q(rest, v)))
        tw[S] = best
    return max(tw[full], 0)
