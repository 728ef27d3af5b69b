"""Toroidal grids, their incidences, and small generic graphs.

Incidences are encoded as ``(row, col, direction)`` triples.  The flat index of
an incidence is ``(row * n + col) * 4 + direction``, which is also the
canonical order used everywhere else in the package (row-major by vertex, then
N, E, S, W).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class Direction(IntEnum):
    N = 0
    E = 1
    S = 2
    W = 3

    @property
    def opposite(self) -> "Direction":
        return Direction((self + 2) % 4)

    @property
    def offset(self) -> tuple[int, int]:
        return _OFFSETS[self]


_OFFSETS = {
    Direction.N: (-1, 0),
    Direction.E: (0, 1),
    Direction.S: (1, 0),
    Direction.W: (0, -1),
}


class Axis(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class Vertex(NamedTuple):
    row: int
    col: int


class Edge(NamedTuple):
    """An edge in canonical orientation: ``b`` lies east or south of ``a``."""

    a: Vertex
    b: Vertex
    axis: Axis


class Incidence(NamedTuple):
    row: int
    col: int
    direction: Direction

    @property
    def vertex(self) -> Vertex:
        return Vertex(self.row, self.col)


class GridMismatchError(ValueError):
    """An incidence, vertex or edge does not belong to the grid it was used with."""


@dataclass(frozen=True)
class TorusGrid:
    """The toroidal grid ``C_m x C_n`` with ``m`` rows and ``n`` columns."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and isinstance(self.n, (int, np.integer))):
            raise TypeError("grid dimensions must be integers")
        if self.m < 3 or self.n < 3:
            raise ValueError(f"toroidal grid needs m, n >= 3, got {self.m}x{self.n}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def vertex_count(self) -> int:
        return self.m * self.n

    @property
    def edge_count(self) -> int:
        return 2 * self.m * self.n

    @property
    def incidence_count(self) -> int:
        return 4 * self.m * self.n

    @property
    def max_degree(self) -> int:
        return 4

    def transposed(self) -> "TorusGrid":
        return TorusGrid(self.n, self.m)

    # -- vertices and edges -------------------------------------------------

    def vertex(self, row: int, col: int) -> Vertex:
        return Vertex(row % self.m, col % self.n)

    def vertices(self) -> Iterator[Vertex]:
        for r in range(self.m):
            for c in range(self.n):
                yield Vertex(r, c)

    def step(self, v: Vertex, d: Direction) -> Vertex:
        dr, dc = _OFFSETS[d]
        return Vertex((v[0] + dr) % self.m, (v[1] + dc) % self.n)

    def edge(self, v: Vertex, d: Direction) -> Edge:
        """The edge leaving ``v`` in direction ``d``, canonically oriented."""
        self._check_vertex(v)
        d = Direction(d)
        if d in (Direction.E, Direction.S):
            a, b = Vertex(*v), self.step(v, d)
        else:
            a, b = self.step(v, d), Vertex(*v)
        axis = Axis.HORIZONTAL if d in (Direction.E, Direction.W) else Axis.VERTICAL
        return Edge(a, b, axis)

    def edge_between(self, u: Vertex, v: Vertex) -> Edge | None:
        for d in Direction:
            if self.step(u, d) == tuple(v):
                return self.edge(u, d)
        return None

    def edges(self) -> Iterator[Edge]:
        for v in self.vertices():
            yield self.edge(v, Direction.E)
            yield self.edge(v, Direction.S)

    def is_edge(self, e: Edge) -> bool:
        a, b, axis = e
        if not (self._in_range(a) and self._in_range(b)):
            return False
        d = Direction.E if axis == Axis.HORIZONTAL else Direction.S
        return self.step(a, d) == tuple(b)

    # -- incidences ---------------------------------------------------------

    def index(self, inc: Incidence) -> int:
        self._check_incidence(inc)
        return (inc[0] * self.n + inc[1]) * 4 + int(inc[2])

    def incidence_at(self, index: int) -> Incidence:
        vertex, d = divmod(int(index), 4)
        r, c = divmod(vertex, self.n)
        return Incidence(r, c, Direction(d))

    def incidence_edge(self, inc: Incidence) -> Edge:
        return self.edge(Vertex(inc[0], inc[1]), inc[2])

    def incidences_of_edge(self, e: Edge) -> tuple[Incidence, Incidence]:
        if not self.is_edge(e):
            raise GridMismatchError(f"{e} is not an edge of T_{{{self.m},{self.n}}}")
        a, b, axis = e
        if axis == Axis.HORIZONTAL:
            return Incidence(a.row, a.col, Direction.E), Incidence(b.row, b.col, Direction.W)
        return Incidence(a.row, a.col, Direction.S), Incidence(b.row, b.col, Direction.N)

    def _in_range(self, v) -> bool:
        return 0 <= v[0] < self.m and 0 <= v[1] < self.n

    def _check_vertex(self, v) -> None:
        if not self._in_range(v):
            raise GridMismatchError(f"vertex {tuple(v)} is not in T_{{{self.m},{self.n}}}")

    def _check_incidence(self, inc) -> None:
        if len(inc) != 3 or not self._in_range(inc) or not 0 <= int(inc[2]) < 4:
            raise GridMismatchError(f"incidence {tuple(inc)} is not in T_{{{self.m},{self.n}}}")

    @cached_property
    def neighbor_table(self) -> np.ndarray:
        """Flat incidence indices adjacent to each incidence, shape ``(4mn, 10)``.

        Rows hold distinct indices for every grid with m, n >= 3.
        """
        m, n = self.m, self.n
        rows, cols = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")

        def flat(r, c, d):
            return ((r % m) * n + (c % n)) * 4 + d

        out = np.empty((m, n, 4, 10), dtype=np.int64)
        for d in Direction:
            slot = 0
            dr, dc = _OFFSETS[d]
            for d2 in Direction:
                if d2 != d:
                    out[:, :, d, slot] = flat(rows, cols, d2)
                    slot += 1
            for d2 in Direction:
                out[:, :, d, slot] = flat(rows + dr, cols + dc, d2)
                slot += 1
            for d2 in Direction:
                if d2 != d.opposite:
                    er, ec = _OFFSETS[d2]
                    out[:, :, d, slot] = flat(rows - er, cols - ec, d2)
                    slot += 1
        table = out.reshape(4 * m * n, 10)
        table.setflags(write=False)
        return table


def incidences(grid: TorusGrid) -> list[Incidence]:
    """All ``4mn`` incidences of ``grid`` in canonical order."""
    return [Incidence(r, c, d) for r in range(grid.m) for c in range(grid.n) for d in Direction]


def incidences_adjacent(grid: TorusGrid, a: Incidence, b: Incidence) -> bool:
    """Direct transcription of the three adjacency conditions.

    ``(v, e)`` and ``(w, f)`` are adjacent when ``v == w``, when ``e == f``,
    or when ``vw`` is an edge equal to ``e`` or ``f``.
    """
    grid._check_incidence(a)
    grid._check_incidence(b)
    if tuple(a) == tuple(b):
        return False
    v, w = Vertex(a[0], a[1]), Vertex(b[0], b[1])
    e, f = grid.incidence_edge(a), grid.incidence_edge(b)
    if v == w or e == f:
        return True
    vw = grid.edge_between(v, w)
    return vw is not None and (vw == e or vw == f)


def incidence_neighbors(grid: TorusGrid, a: Incidence) -> set[Incidence]:
    row = grid.neighbor_table[grid.index(a)]
    return {grid.incidence_at(i) for i in row}


# -- generic graphs ------------------------------------------------------------


@dataclass(frozen=True)
class GenericGraph:
    """Simple undirected graph on vertices ``0 .. vertex_count - 1``."""

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        normalized = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "GenericGraph":
        return cls(vertex_count, frozenset(edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        adj: list[set] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        if self.vertex_count == 0:
            raise ValueError("empty graph has no maximum degree")
        return max(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def distances_from(self, source: int, limit: int | None = None) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if limit is not None and dist[u] >= limit:
                continue
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


def square(g: GenericGraph) -> GenericGraph:
    """Join every pair of distinct vertices at distance at most two."""
    edges = set()
    for u in range(g.vertex_count):
        for w in g.distances_from(u, limit=2):
            if w > u:
                edges.add((u, w))
    return GenericGraph(g.vertex_count, frozenset(edges))


def torus_vertex_index(grid: TorusGrid, row: int, col: int) -> int:
    return (row % grid.m) * grid.n + (col % grid.n)


def torus_as_graph(grid: TorusGrid, deleted: Iterable[Edge] = ()) -> GenericGraph:
    """``T_{m,n}`` as a generic graph with row-major vertex numbering.

    ``deleted`` removes torus edges, which is how quasi-patterns are checked.
    """
    drop = set()
    for e in deleted:
        if not grid.is_edge(e):
            raise GridMismatchError(f"{e} is not an edge of T_{{{grid.m},{grid.n}}}")
        drop.add((e.a, e.b))
    edges = []
    for e in grid.edges():
        if (e.a, e.b) in drop:
            continue
        edges.append((torus_vertex_index(grid, *e.a), torus_vertex_index(grid, *e.b)))
    return GenericGraph.from_edges(grid.vertex_count, edges)


def grid_as_graph(m: int, n: int) -> GenericGraph:
    """The path-product grid ``P_m x P_n``."""
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(m):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < m:
                edges.append((v, v + n))
    return GenericGraph.from_edges(m * n, edges)


def cycle_graph(k: int) -> GenericGraph:
    if k < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return GenericGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> GenericGraph:
    return GenericGraph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def incidence_graph(grid: TorusGrid) -> GenericGraph:
    """Conflict graph whose vertices are incidences (flat indices)."""
    table = grid.neighbor_table
    edges = {(i, int(j)) for i in range(table.shape[0]) for j in table[i] if i < j}
    return GenericGraph.from_edges(grid.incidence_count, edges)


def graph_to_json(obj) -> dict:
    if isinstance(obj, TorusGrid):
        return {"kind": "torus", "m": obj.m, "n": obj.n}
    return {
        "kind": "generic",
        "vertices": obj.vertex_count,
        "edges": [list(e) for e in sorted(obj.edges)],
    }


def graph_from_json(data: dict):
    kind = data.get("kind")
    if kind == "torus":
        return TorusGrid(int(data["m"]), int(data["n"]))
    if kind == "generic":
        return GenericGraph.from_edges(int(data["vertices"]), [tuple(e) for e in data["edges"]])
    raise ValueError(f"unknown graph kind {kind!r}")
