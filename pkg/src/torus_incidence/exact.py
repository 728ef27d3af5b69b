"""Exact chromatic numbers of small graphs by complete backtracking search.

The search is DSATUR-flavoured: most saturated vertex first (ties broken by
degree, then index), smallest color first, forward checking on neighbor
domains, and a fresh color is only ever tried as the lowest unused one.
Every answer is certified: the value comes with a witness, and all smaller
palettes were refuted by exhaustive search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .coloring import IncidenceColoring, VertexColoring, verify_incidence_coloring, verify_vertex_coloring
from .graph import Direction, GenericGraph, TorusGrid, incidence_graph

VERTEX_GUARD = 60
INCIDENCE_GUARD = 150
DEFAULT_NODE_LIMIT = 50_000_000


class SizeGuardError(ValueError):
    """Instance is larger than the desk-scale guard allows."""


class SearchLimitReached(RuntimeError):
    pass


@dataclass
class ChromaticReport:
    value: int | None
    witness: object | None
    infeasible_below: int
    nodes_searched: int
    wall_time: float
    k_max: int
    refuted: list = field(default_factory=list)

    @property
    def exceeds_k_max(self) -> bool:
        return self.value is None

    def to_json(self) -> dict:
        if isinstance(self.witness, IncidenceColoring):
            witness = self.witness.colors.tolist()
        elif isinstance(self.witness, VertexColoring):
            witness = list(self.witness.colors)
        else:
            witness = None
        return {
            "value": self.value,
            "exceeds_k_max": self.exceeds_k_max,
            "k_max": self.k_max,
            "infeasible_below": self.infeasible_below,
            "refuted": self.refuted,
            "nodes_searched": self.nodes_searched,
            "wall_time": self.wall_time,
            "witness": witness,
        }


def _greedy_clique(adj: list[set]) -> list[int]:
    """A maximal clique grown greedily from each vertex; the largest one wins."""
    best: list[int] = []
    order = sorted(range(len(adj)), key=lambda v: (-len(adj[v]), v))
    for start in order:
        clique = [start]
        candidates = set(adj[start])
        while candidates:
            v = max(candidates, key=lambda u: (len(adj[u] & candidates), -u))
            clique.append(v)
            candidates &= adj[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def color_search(
    adj: list[set],
    k: int,
    precolored: dict[int, int] | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> tuple[list[int] | None, int]:
    """Find a proper ``k``-coloring extending ``precolored``; ``None`` if none exists.

    Returns ``(colors | None, nodes)``.  Raises :class:`SearchLimitReached`
    when ``node_limit`` is hit before the search is decided.
    """
    n = len(adj)
    precolored = dict(precolored or {})
    colors = [0] * n
    full = (1 << (k + 1)) - 2
    domain = [full] * n
    neighbors = [sorted(a) for a in adj]
    for v, c in precolored.items():
        if not 1 <= c <= k:
            return None, 0
        if domain[v] & (1 << c) == 0:
            return None, 0
        colors[v] = c
        for w in neighbors[v]:
            domain[w] &= ~(1 << c)
    if any(colors[v] == 0 and domain[v] == 0 for v in range(n)):
        return None, 0
    # colors above every precolored value are interchangeable until first used
    fixed_top = max(precolored.values(), default=0)
    uncolored = {v for v in range(n) if colors[v] == 0}
    degree = [len(a) for a in neighbors]
    nodes = 0

    def pick():
        best, key = -1, None
        for v in uncolored:
            cand = (bin(domain[v]).count("1"), -degree[v], v)
            if key is None or cand < key:
                best, key = v, cand
        return best

    def search(top: int) -> bool:
        nonlocal nodes
        if not uncolored:
            return True
        v = pick()
        uncolored.discard(v)
        dom = domain[v]
        limit = max(top, fixed_top) + 1
        while dom:
            bit = dom & -dom
            dom ^= bit
            c = bit.bit_length() - 1
            if c > limit:
                break
            nodes += 1
            if nodes > node_limit:
                raise SearchLimitReached(f"node limit {node_limit} reached")
            colors[v] = c
            touched = []
            wiped = False
            for w in neighbors[v]:
                if colors[w] == 0 and domain[w] & bit:
                    domain[w] ^= bit
                    touched.append(w)
                    if domain[w] == 0:
                        wiped = True
            if not wiped and search(max(top, c)):
                return True
            for w in touched:
                domain[w] |= bit
            colors[v] = 0
        uncolored.add(v)
        return False

    import sys

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * n + 100))
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(old_limit)
    return (list(colors) if found else None), nodes


def _adjacency(g: GenericGraph) -> list[set]:
    return [set(a) for a in g.adjacency]


def lower_bound_delta(g: GenericGraph) -> int:
    """Maximum degree plus one, the trivial lower bound on the incidence chromatic number."""
    if g.vertex_count == 0:
        raise ValueError("the empty graph has no maximum degree")
    return g.max_degree() + 1


def exact_vertex_chromatic(
    g: GenericGraph,
    k_max: int,
    *,
    allow_large: bool = False,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> ChromaticReport:
    """Exact chromatic number of ``g`` when it is at most ``k_max``.

    A greedy maximum clique is precolored ``1..q``, which both seeds the lower
    bound and breaks color symmetry.
    """
    if g.vertex_count > VERTEX_GUARD and not allow_large:
        raise SizeGuardError(f"{g.vertex_count} vertices exceeds the guard of {VERTEX_GUARD}")
    start = time.perf_counter()
    adj = _adjacency(g)
    if g.vertex_count == 0:
        return ChromaticReport(0, VertexColoring(g, (), 0), -1, 0, 0.0, k_max)
    clique = _greedy_clique(adj)
    pre = {v: i + 1 for i, v in enumerate(clique)}
    nodes = 0
    refuted = list(range(1, len(clique)))
    for k in range(len(clique), k_max + 1):
        found, used = color_search(adj, k, pre, node_limit - nodes)
        nodes += used
        if found is not None:
            witness = VertexColoring(g, tuple(found), k)
            if not verify_vertex_coloring(witness).valid:
                raise AssertionError("search returned an improper coloring")
            return ChromaticReport(k, witness, k - 1, nodes, time.perf_counter() - start, k_max, refuted)
        refuted.append(k)
    return ChromaticReport(None, None, k_max, nodes, time.perf_counter() - start, k_max, refuted)


def star_clique(grid: TorusGrid) -> list[int]:
    """Flat indices of five mutually adjacent incidences around vertex (0, 0).

    The four incidences at the vertex plus the incidence of its north
    neighbor on the shared edge.
    """
    north = ((grid.m - 1) * grid.n) * 4 + Direction.S
    return [0, 1, 2, 3, north]


def exact_incidence_chromatic(
    grid: TorusGrid,
    k_max: int,
    *,
    allow_large: bool = False,
    hint: IncidenceColoring | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> ChromaticReport:
    """Exact incidence chromatic number of ``T_{m,n}`` when it is at most ``k_max``.

    Palettes are tried upward from five.  A verified ``hint`` coloring stands
    in for the search at its own palette size, but smaller palettes are still
    refuted exhaustively.
    """
    if grid.incidence_count > INCIDENCE_GUARD and not allow_large:
        raise SizeGuardError(f"{grid.incidence_count} incidences exceeds the guard of {INCIDENCE_GUARD}")
    start = time.perf_counter()
    adj = _adjacency(incidence_graph(grid))
    clique = star_clique(grid)
    pre = {v: i + 1 for i, v in enumerate(clique)}
    hint_k = None
    if hint is not None:
        if hint.grid != grid or not verify_incidence_coloring(hint).valid:
            raise ValueError("hint must be a valid incidence coloring of the same grid")
        hint_k = hint.palette_size
    nodes = 0
    refuted = list(range(1, len(clique)))
    for k in range(len(clique), k_max + 1):
        if hint_k is not None and k >= hint_k:
            return ChromaticReport(k, hint, k - 1, nodes, time.perf_counter() - start, k_max, refuted)
        found, used = color_search(adj, k, pre, node_limit - nodes)
        nodes += used
        if found is not None:
            colors = np.array(found, dtype=np.int64).reshape(grid.m, grid.n, 4)
            witness = IncidenceColoring(grid, colors, k)
            if not verify_incidence_coloring(witness).valid:
                raise AssertionError("search returned an invalid incidence coloring")
            return ChromaticReport(k, witness, k - 1, nodes, time.perf_counter() - start, k_max, refuted)
        refuted.append(k)
    return ChromaticReport(None, None, k_max, nodes, time.perf_counter() - start, k_max, refuted)


def regular_equivalence_check(grid: TorusGrid, k_max: int = 10) -> bool:
    """Whether ``chi_i = Delta + 1`` exactly when ``chi(G^2) = Delta + 1`` on ``grid``."""
    from .graph import square, torus_as_graph

    target = grid.max_degree + 1
    incidence = exact_incidence_chromatic(grid, k_max)
    vertex = exact_vertex_chromatic(square(torus_as_graph(grid)), k_max)
    if incidence.value is None or vertex.value is None:
        raise ValueError(f"k_max={k_max} too small to decide both sides")
    return (incidence.value == target) == (vertex.value == target)
