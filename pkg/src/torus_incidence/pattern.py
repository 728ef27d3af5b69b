"""Patterns: color matrices read as vertex colorings of squared toroidal grids.

A pattern ``P`` of size ``m x n`` induces the incidence coloring
``(u, uv) -> P[v]`` of ``T_{m,n}``; when ``P`` is proper on the square of the
torus the induced coloring is a valid incidence coloring.  Quasi-patterns are
proper only after deleting some torus edges, and induce partial colorings
whose holes are exactly the incidences of the deleted edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coloring import (
    IncidenceColoring,
    PartialIncidenceColoring,
    Verdict,
    VertexColoring,
    verify_incidence_coloring,
    verify_vertex_coloring,
)
from .graph import Axis, Direction, Edge, TorusGrid, Vertex, square, torus_as_graph


class Pattern:
    """An ``rows x cols`` matrix of colors (integers >= 1)."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("pattern entries must form a matrix")
        if arr.shape[0] < 1:
            raise ValueError("pattern needs at least one row")
        if arr.size and arr.min() < 1:
            raise ValueError("pattern colors must be >= 1")
        arr.setflags(write=False)
        self.entries = arr

    @classmethod
    def empty(cls, rows: int) -> "Pattern":
        return cls(np.zeros((rows, 0), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def palette_size(self) -> int:
        return int(self.entries.max(initial=0))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def transposed(self) -> "Pattern":
        return Pattern(self.entries.T)

    def grid(self) -> TorusGrid:
        return TorusGrid(self.rows, self.cols)

    def __getitem__(self, key):
        return self.entries[key]

    def __eq__(self, other) -> bool:
        return isinstance(other, Pattern) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"Pattern({self.tolist()})"


def glue(a: Pattern, b: Pattern) -> Pattern:
    """Side-by-side concatenation ``a + b``."""
    if a.rows != b.rows:
        raise ValueError(f"cannot glue patterns with {a.rows} and {b.rows} rows")
    return Pattern(np.hstack([a.entries, b.entries]))


def repeat(a: Pattern, times: int) -> Pattern:
    """``times`` copies of ``a`` glued together."""
    if times < 1:
        raise ValueError("repeat count must be >= 1")
    return Pattern(np.tile(a.entries, (1, times)))


def stack(a: Pattern, b: Pattern) -> Pattern:
    if a.cols != b.cols:
        raise ValueError(f"cannot stack patterns with {a.cols} and {b.cols} columns")
    return Pattern(np.vstack([a.entries, b.entries]))


def tile_pattern(a: Pattern, p: int, q: int) -> Pattern:
    if p < 1 or q < 1:
        raise ValueError("tiling factors must be >= 1")
    return Pattern(np.tile(a.entries, (p, q)))


# offsets of every vertex within distance two on a torus with m, n >= 3
_SQUARE_OFFSETS = [
    (dr, dc) for dr in range(-2, 3) for dc in range(-2, 3) if 0 < abs(dr) + abs(dc) <= 2
]


def square_conflicts(p: Pattern) -> np.ndarray:
    """Mask of cells whose color repeats within distance two on ``T_{rows,cols}``."""
    e = p.entries
    bad = np.zeros(e.shape, dtype=bool)
    for dr, dc in _SQUARE_OFFSETS:
        bad |= e == np.roll(e, shift=(-dr, -dc), axis=(0, 1))
    return bad


def _check_torus_shape(p: Pattern) -> None:
    if p.rows < 3 or p.cols < 3:
        raise ValueError(f"a {p.rows}x{p.cols} pattern does not live on a torus (needs >= 3x3)")


def as_vertex_coloring(p: Pattern, deleted: Iterable[Edge] = ()) -> VertexColoring:
    """``p`` as a coloring of the square of ``T_{rows,cols}`` minus ``deleted``."""
    _check_torus_shape(p)
    g = square(torus_as_graph(p.grid(), deleted))
    return VertexColoring(g, tuple(p.entries.reshape(-1)), p.palette_size)


def _alive_mask(grid: TorusGrid, deleted: Iterable[Edge]) -> np.ndarray:
    """``alive[r, c, d]`` is false when the edge leaving ``(r, c)`` in ``d`` is deleted."""
    alive = np.ones((grid.m, grid.n, 4), dtype=bool)
    for e in deleted:
        if not grid.is_edge(e):
            raise ValueError(f"{e} is not an edge of T_{{{grid.m},{grid.n}}}")
        a, b, axis = e
        out_dir, in_dir = (Direction.E, Direction.W) if axis == Axis.HORIZONTAL else (Direction.S, Direction.N)
        alive[a.row, a.col, out_dir] = False
        alive[b.row, b.col, in_dir] = False
    return alive


def reduced_square_conflicts(p: Pattern, deleted: Iterable[Edge]) -> np.ndarray:
    """Like :func:`square_conflicts` but distances are measured in the torus minus ``deleted``."""
    grid = p.grid()
    m, n = grid.shape
    e = p.entries
    alive = _alive_mask(grid, deleted)
    rows, cols = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    bad = np.zeros(e.shape, dtype=bool)
    for d1 in Direction:
        r1 = (rows + d1.offset[0]) % m
        c1 = (cols + d1.offset[1]) % n
        ok1 = alive[:, :, d1]
        bad |= ok1 & (e == e[r1, c1])
        for d2 in Direction:
            if d2 == d1.opposite:
                continue
            r2 = (r1 + d2.offset[0]) % m
            c2 = (c1 + d2.offset[1]) % n
            ok2 = ok1 & alive[r1, c1, d2] & ((r2 != rows) | (c2 != cols))
            bad |= ok2 & (e == e[r2, c2])
    return bad


def is_proper_on_square(p: Pattern, deleted: Iterable[Edge] = ()) -> bool:
    _check_torus_shape(p)
    deleted = list(deleted)
    if not deleted:
        return not square_conflicts(p).any()
    return not reduced_square_conflicts(p, deleted).any()


def induce_colors(p: Pattern) -> np.ndarray:
    """``colors[r, c, d]`` = entry at the far end of the edge leaving ``(r, c)`` in ``d``."""
    e = p.entries
    out = np.empty(e.shape + (4,), dtype=np.int64)
    for d in Direction:
        dr, dc = d.offset
        out[:, :, d] = np.roll(e, shift=(-dr, -dc), axis=(0, 1))
    return out


def induce_incidence_coloring(p: Pattern) -> IncidenceColoring:
    _check_torus_shape(p)
    return IncidenceColoring(p.grid(), induce_colors(p), p.palette_size)


@dataclass(frozen=True)
class QuasiPattern:
    """A pattern proper on the square of ``T_{rows,cols}`` minus ``deleted_edges``."""

    base: Pattern
    deleted_edges: frozenset = field(default_factory=frozenset)
    palette_size: int | None = None

    def __post_init__(self):
        _check_torus_shape(self.base)
        grid = self.base.grid()
        edges = frozenset(Edge(Vertex(*e[0]), Vertex(*e[1]), Axis(e[2])) for e in self.deleted_edges)
        for e in edges:
            if not grid.is_edge(e):
                raise ValueError(f"{e} is not an edge of T_{{{grid.m},{grid.n}}}")
        object.__setattr__(self, "deleted_edges", edges)
        if self.palette_size is None:
            object.__setattr__(self, "palette_size", self.base.palette_size)
        if self.palette_size < self.base.palette_size:
            raise ValueError("palette smaller than the colors the pattern uses")
        if not is_proper_on_square(self.base, edges):
            raise ValueError("base is not proper on the square of the torus minus the deleted edges")

    @property
    def rows(self) -> int:
        return self.base.rows

    @property
    def cols(self) -> int:
        return self.base.cols

    def grid(self) -> TorusGrid:
        return self.base.grid()

    def uncolored(self) -> list:
        grid = self.grid()
        out = []
        for e in self.deleted_edges:
            out.extend(grid.incidences_of_edge(e))
        return sorted(out, key=grid.index)


def vertical_edges_between(grid: TorusGrid, row: int) -> list[Edge]:
    """The ring of vertical edges joining ``row`` to ``row + 1``."""
    return [grid.edge(Vertex(row % grid.m, c), Direction.S) for c in range(grid.n)]


def horizontal_edges_between(grid: TorusGrid, col: int) -> list[Edge]:
    """The ring of horizontal edges joining ``col`` to ``col + 1``."""
    return [grid.edge(Vertex(r, col % grid.n), Direction.E) for r in range(grid.m)]


def induce_partial(qp: QuasiPattern) -> PartialIncidenceColoring:
    """Induced coloring with both incidences of every deleted edge left unassigned.

    The kept assignments never conflict: two adjacent kept incidences carry the
    colors of two vertices at distance at most two in the reduced torus.
    """
    colors = induce_colors(qp.base)
    for inc in qp.uncolored():
        colors[inc[0], inc[1], int(inc[2])] = 0
    return PartialIncidenceColoring(qp.grid(), colors, qp.palette_size)


def repeat_rows(p: Pattern, rows_to_triple: Iterable[int], palette_size: int | None = None) -> QuasiPattern:
    """Copy each selected row three times and delete the edges between the copies.

    Every tripled row leaves a vertical chain of four unassigned incidences per
    column in the induced partial coloring.  Chains of distinct rows are always
    separated by a kept edge (the original edge below the last copy), so
    selecting two rows adjacent in ``p`` is allowed.
    """
    requested = [int(r) for r in rows_to_triple]
    selected = sorted(set(requested))
    if len(selected) != len(requested):
        raise ValueError("rows to triple must be distinct")
    for r in selected:
        if not 0 <= r < p.rows:
            raise ValueError(f"row {r} out of range for a {p.rows}-row pattern")
    if p.rows >= 3 and p.cols >= 3 and not is_proper_on_square(p):
        raise ValueError("pattern must be proper on the square of its torus")
    blocks = []
    chain_tops = []
    height = 0
    for r in range(p.rows):
        copies = 3 if r in selected else 1
        if copies == 3:
            chain_tops.append(height)
        blocks.extend([p.entries[r]] * copies)
        height += copies
    base = Pattern(np.vstack(blocks))
    grid = base.grid()
    deleted = []
    for top in chain_tops:
        deleted += vertical_edges_between(grid, top)
        deleted += vertical_edges_between(grid, top + 1)
    return QuasiPattern(base, frozenset(deleted), palette_size or p.palette_size)


def tile(c: IncidenceColoring, p: int, q: int) -> IncidenceColoring:
    """Periodic repetition of ``c`` onto ``T_{pm,qn}``."""
    if p < 1 or q < 1:
        raise ValueError("tiling factors must be >= 1")
    if not c.is_total() or not verify_incidence_coloring(c).valid:
        raise ValueError("only valid total colorings can be tiled")
    grid = TorusGrid(c.grid.m * p, c.grid.n * q)
    out = IncidenceColoring(grid, np.tile(c.colors, (p, q, 1)), c.palette_size)
    if not verify_incidence_coloring(out).valid:
        raise AssertionError("tiling produced an invalid coloring")
    return out


def transpose_colors(colors: np.ndarray) -> np.ndarray:
    """Swap rows with columns; N<->W and E<->S exchange roles."""
    swapped = np.transpose(colors, (1, 0, 2))
    return swapped[:, :, [Direction.W, Direction.S, Direction.E, Direction.N]]


def transpose(c: PartialIncidenceColoring) -> PartialIncidenceColoring:
    grid = c.grid.transposed()
    cls = IncidenceColoring if c.is_total() else PartialIncidenceColoring
    return cls(grid, transpose_colors(c.colors), c.palette_size)


def verify_pattern(p: Pattern, deleted: Sequence[Edge] = ()) -> Verdict:
    return verify_vertex_coloring(as_vertex_coloring(p, deleted))
