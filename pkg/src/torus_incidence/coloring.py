"""Incidence and vertex colorings, and their verifiers.

Incidence colorings are stored as integer arrays of shape ``(m, n, 4)`` indexed
by ``[row, col, direction]``.  Colors start at 1; 0 marks an unassigned
incidence in a partial coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .graph import Direction, GenericGraph, Incidence, TorusGrid

UNASSIGNED = 0


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.valid


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


class PartialIncidenceColoring:
    """A map from some incidences of ``grid`` to colors ``1..palette_size``."""

    _allow_unassigned = True

    def __init__(self, grid: TorusGrid, colors, palette_size: int | None = None):
        colors = _frozen(colors)
        if colors.shape != (grid.m, grid.n, 4):
            raise ValueError(f"colors must have shape {(grid.m, grid.n, 4)}, got {colors.shape}")
        if colors.min(initial=0) < 0:
            raise ValueError("colors must be non-negative")
        used = int(colors.max(initial=0))
        if palette_size is None:
            palette_size = used
        if used > palette_size:
            raise ValueError(f"color {used} exceeds palette size {palette_size}")
        if not self._allow_unassigned and (colors == UNASSIGNED).any():
            missing = Incidence(*np.argwhere(colors == UNASSIGNED)[0])
            raise ValueError(f"total coloring leaves {tuple(missing)} unassigned")
        self.grid = grid
        self.colors = colors
        self.palette_size = int(palette_size)

    @classmethod
    def empty(cls, grid: TorusGrid, palette_size: int) -> "PartialIncidenceColoring":
        return cls(grid, np.zeros((grid.m, grid.n, 4), dtype=np.int64), palette_size)

    @classmethod
    def from_mapping(cls, grid: TorusGrid, mapping: Mapping, palette_size: int | None = None):
        colors = np.zeros((grid.m, grid.n, 4), dtype=np.int64)
        for inc, color in mapping.items():
            grid._check_incidence(inc)
            colors[inc[0], inc[1], int(inc[2])] = color
        return cls(grid, colors, palette_size)

    def __getitem__(self, inc) -> int:
        return int(self.colors[inc[0], inc[1], int(inc[2])])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialIncidenceColoring)
            and self.grid == other.grid
            and self.palette_size == other.palette_size
            and np.array_equal(self.colors, other.colors)
        )

    def __hash__(self):
        return hash((self.grid, self.palette_size, self.colors.tobytes()))

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(T_{{{self.grid.m},{self.grid.n}}}, "
            f"k={self.palette_size}, unassigned={self.unassigned_count})"
        )

    @property
    def flat(self) -> np.ndarray:
        return self.colors.reshape(-1)

    @property
    def unassigned_count(self) -> int:
        return int((self.colors == UNASSIGNED).sum())

    def unassigned(self) -> list[Incidence]:
        return [self.grid.incidence_at(i) for i in np.flatnonzero(self.flat == UNASSIGNED)]

    def assigned(self) -> list[Incidence]:
        return [self.grid.incidence_at(i) for i in np.flatnonzero(self.flat != UNASSIGNED)]

    def is_total(self) -> bool:
        return self.unassigned_count == 0

    def with_colors(self, updates: Mapping) -> "PartialIncidenceColoring":
        colors = self.colors.copy()
        for inc, color in updates.items():
            colors[inc[0], inc[1], int(inc[2])] = color
        return PartialIncidenceColoring(self.grid, colors, self.palette_size)

    def without(self, incidences: Iterable) -> "PartialIncidenceColoring":
        colors = self.colors.copy()
        for inc in incidences:
            colors[inc[0], inc[1], int(inc[2])] = UNASSIGNED
        return PartialIncidenceColoring(self.grid, colors, self.palette_size)

    def restrict(self, keep) -> "PartialIncidenceColoring":
        """Keep only assignments where the boolean mask ``keep`` is true."""
        colors = np.where(np.asarray(keep, dtype=bool), self.colors, UNASSIGNED)
        return PartialIncidenceColoring(self.grid, colors, self.palette_size)

    def to_total(self) -> "IncidenceColoring":
        return IncidenceColoring(self.grid, self.colors, self.palette_size)

    def as_partial(self) -> "PartialIncidenceColoring":
        return PartialIncidenceColoring(self.grid, self.colors, self.palette_size)


class IncidenceColoring(PartialIncidenceColoring):
    """A total incidence coloring; every incidence carries a color."""

    _allow_unassigned = False

    @property
    def colors_used(self) -> int:
        return len(np.unique(self.colors))


@dataclass(frozen=True)
class VertexColoring:
    graph: GenericGraph
    colors: tuple
    palette_size: int

    def __post_init__(self):
        colors = tuple(int(c) for c in self.colors)
        if len(colors) != self.graph.vertex_count:
            raise ValueError("vertex coloring must assign every vertex")
        if colors and (min(colors) < 1 or max(colors) > self.palette_size):
            raise ValueError(f"colors must lie in [1, {self.palette_size}]")
        object.__setattr__(self, "colors", colors)


# -- verification --------------------------------------------------------------


def _relation_offsets():
    """(d, dr, dc, d2) such that (v, d) ~ (v + (dr, dc), d2), one entry per neighbor slot."""
    out = []
    for d in Direction:
        dr, dc = d.offset
        for d2 in Direction:
            if d2 != d:
                out.append((d, 0, 0, d2))
        for d2 in Direction:
            out.append((d, dr, dc, d2))
        for d2 in Direction:
            if d2 != d.opposite:
                er, ec = d2.offset
                out.append((d, -er, -ec, d2))
    return out


_RELATIONS = _relation_offsets()


def conflict_mask(c: PartialIncidenceColoring) -> np.ndarray:
    """Boolean ``(m, n, 4)`` mask of assigned incidences sharing a color with a neighbor."""
    colors = c.colors
    bad = np.zeros(colors.shape, dtype=bool)
    for d, dr, dc, d2 in _RELATIONS:
        here = colors[:, :, d]
        there = np.roll(colors[:, :, d2], shift=(-dr, -dc), axis=(0, 1))
        bad[:, :, d] |= (here == there) & (here != UNASSIGNED)
    return bad


def _first_witness(c: PartialIncidenceColoring, bad: np.ndarray) -> tuple[Incidence, Incidence]:
    grid = c.grid
    flat = c.flat
    first = int(np.flatnonzero(bad.reshape(-1))[0])
    partners = [int(j) for j in grid.neighbor_table[first] if flat[j] == flat[first]]
    return grid.incidence_at(first), grid.incidence_at(min(partners))


def verify_partial(c: PartialIncidenceColoring) -> Verdict:
    """Check every pair of adjacent incidences that are both assigned.

    On failure the witness is the lexicographically first conflicting pair
    under the canonical incidence order.
    """
    bad = conflict_mask(c)
    if not bad.any():
        return Verdict(True)
    return Verdict(False, _first_witness(c, bad))


def verify_incidence_coloring(c: PartialIncidenceColoring) -> Verdict:
    if not c.is_total():
        raise ValueError("verify_incidence_coloring needs a total coloring; use verify_partial")
    return verify_partial(c)


def verify_vertex_coloring(c: VertexColoring) -> Verdict:
    for u, v in sorted(c.graph.edges):
        if c.colors[u] == c.colors[v]:
            return Verdict(False, (u, v))
    return Verdict(True)


def forbidden_colors(c: PartialIncidenceColoring, a: Incidence) -> set[int]:
    """Colors carried by the assigned neighbors of the unassigned incidence ``a``."""
    grid = c.grid
    if c[a] != UNASSIGNED:
        raise ValueError(f"incidence {tuple(a)} is already assigned color {c[a]}")
    flat = c.flat
    return {int(flat[j]) for j in grid.neighbor_table[grid.index(a)] if flat[j] != UNASSIGNED}
