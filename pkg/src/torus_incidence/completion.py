"""Extend valid partial incidence colorings within a fixed palette."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coloring import (
    UNASSIGNED,
    IncidenceColoring,
    PartialIncidenceColoring,
    verify_incidence_coloring,
    forbidden_colors,
    verify_partial,
)
from .graph import Incidence

DEFAULT_MAX_NODES = 10**6


@dataclass(frozen=True)
class CompletionBudget:
    palette_size: int
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")
        if self.palette_size < 1:
            raise ValueError("palette_size must be >= 1")


class Outcome(str, Enum):
    COMPLETED = "completed"
    INFEASIBLE = "infeasible"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class CompletionResult:
    outcome: Outcome
    coloring: IncidenceColoring | None
    nodes: int
    groups: int

    @property
    def ok(self) -> bool:
        return self.outcome is Outcome.COMPLETED


class InvalidPartialColoring(ValueError):
    """The coloring handed to ``complete`` already has a conflict."""


def chain_decomposition(c: PartialIncidenceColoring) -> list[list[Incidence]]:
    """Connected components of the adjacency graph restricted to unassigned incidences.

    Groups come out in canonical order (by their smallest member), each sorted.
    No incidence of one group is adjacent to an incidence of another.
    """
    grid = c.grid
    table = grid.neighbor_table
    free = c.flat == UNASSIGNED
    seen = np.zeros(free.shape, dtype=bool)
    groups = []
    for start in np.flatnonzero(free):
        if seen[start]:
            continue
        seen[start] = True
        stack, members = [int(start)], []
        while stack:
            i = stack.pop()
            members.append(i)
            for j in table[i]:
                if free[j] and not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        groups.append([grid.incidence_at(i) for i in sorted(members)])
    return groups


def _solve_group(flat, table, members, k, budget_left):
    """Backtracking with forward checking over ``members`` in the given order.

    Returns ``(assignment | None, nodes, exhausted)``.
    """
    position = {v: i for i, v in enumerate(members)}
    full = (1 << (k + 1)) - 2  # bits 1..k
    domains = []
    later_neighbors = []
    for v in members:
        used = 0
        for j in table[v]:
            col = flat[j]
            if col:
                used |= 1 << int(col)
        domains.append(full & ~used)
        later_neighbors.append(
            sorted({position[int(j)] for j in table[v] if int(j) in position and position[int(j)] > position[v]})
        )
    size = len(members)
    values = [0] * size
    nodes = 0

    def search(i):
        nonlocal nodes
        if i == size:
            return True
        dom = domains[i]
        while dom:
            bit = dom & -dom
            dom ^= bit
            nodes += 1
            if nodes > budget_left:
                raise _BudgetExceeded
            values[i] = bit.bit_length() - 1
            pruned = []
            wiped = False
            for j in later_neighbors[i]:
                if domains[j] & bit:
                    domains[j] ^= bit
                    pruned.append(j)
                    if not domains[j]:
                        wiped = True
                        break
            if not wiped and search(i + 1):
                return True
            for j in pruned:
                domains[j] |= bit
        return False

    try:
        found = search(0)
    except _BudgetExceeded:
        return None, nodes, True
    return (dict(zip(members, values)) if found else None), nodes, False


class _BudgetExceeded(Exception):
    pass


def complete(c: PartialIncidenceColoring, budget: CompletionBudget | int = 6) -> CompletionResult:
    """Fill every unassigned incidence of ``c`` using colors ``1..palette_size``.

    Groups from :func:`chain_decomposition` are solved independently, in
    canonical order, smallest color first.  ``INFEASIBLE`` means the search
    was exhaustive and no completion exists; ``EXHAUSTED`` means the node cap
    was reached first.
    """
    if isinstance(budget, int):
        budget = CompletionBudget(palette_size=budget)
    if int(c.colors.max(initial=0)) > budget.palette_size:
        raise ValueError("partial coloring uses colors beyond the budget palette")
    verdict = verify_partial(c)
    if not verdict.valid:
        raise InvalidPartialColoring(f"partial coloring has a conflict at {verdict.witness}")
    grid = c.grid
    table = grid.neighbor_table
    flat = c.flat.copy()
    groups = chain_decomposition(c)
    nodes = 0
    for group in groups:
        members = [grid.index(inc) for inc in group]
        assignment, used, exhausted = _solve_group(
            flat, table, members, budget.palette_size, budget.max_nodes - nodes
        )
        nodes += used
        if exhausted:
            return CompletionResult(Outcome.EXHAUSTED, None, nodes, len(groups))
        if assignment is None:
            return CompletionResult(Outcome.INFEASIBLE, None, nodes, len(groups))
        for i, color in assignment.items():
            flat[i] = color
    out = IncidenceColoring(grid, flat.reshape(c.colors.shape), budget.palette_size)
    if not verify_incidence_coloring(out).valid:
        raise AssertionError("completion produced an invalid coloring")
    return CompletionResult(Outcome.COMPLETED, out, nodes, len(groups))


def _endpoints(grid, inc) -> set:
    v = (inc.row, inc.col)
    w = grid.step(v, inc.direction)
    return {v, tuple(w)}


def blocking_vertices(c: PartialIncidenceColoring, budget: CompletionBudget | int = 6) -> set:
    """Vertices whose colors must change for ``c`` to become completable.

    For each group that cannot be filled on its own, take the endpoints of its
    members with no color left; if every member still has an option, take the
    endpoints of the whole group.
    """
    if isinstance(budget, int):
        budget = CompletionBudget(palette_size=budget)
    grid = c.grid
    table = grid.neighbor_table
    flat = c.flat
    full = set(range(1, budget.palette_size + 1))
    out = set()
    for group in chain_decomposition(c):
        members = [grid.index(inc) for inc in group]
        assignment, _, exhausted = _solve_group(flat, table, members, budget.palette_size, budget.max_nodes)
        if assignment is not None or exhausted:
            continue
        dead = [inc for inc in group if full <= forbidden_colors(c, inc)]
        for inc in dead or group:
            out |= _endpoints(grid, inc)
    return out


def release_around(
    c: PartialIncidenceColoring, radius: int = 0, seeds: set | None = None
) -> PartialIncidenceColoring:
    """Unassign every incidence at a vertex within ``radius`` of a seed vertex.

    Seeds default to the vertices carrying an unassigned incidence.  This is the
    repair step used when the holes of a quasi-pattern cannot be filled as they
    stand: a few surrounding colors are given up and recomputed.
    """
    grid = c.grid
    if seeds is None:
        seeds = {(inc.row, inc.col) for inc in c.unassigned()}
    released = set(seeds)
    frontier = set(seeds)
    for _ in range(radius):
        grown = set()
        for r, col in frontier:
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                grown.add(((r + dr) % grid.m, (col + dc) % grid.n))
        frontier = grown - released
        released |= grown
    colors = c.colors.copy()
    for r, col in released:
        colors[r, col, :] = UNASSIGNED
    return PartialIncidenceColoring(grid, colors, c.palette_size)


def complete_with_repair(
    c: PartialIncidenceColoring, budget: CompletionBudget | int = 6, max_radius: int = 2
) -> tuple[CompletionResult, int | None]:
    """Try :func:`complete`; if infeasible, free the colors around the blockage and retry.

    Returns the result and the release radius that was needed (``None`` when the
    holes could be filled as given).
    """
    if isinstance(budget, int):
        budget = CompletionBudget(palette_size=budget)
    result = complete(c, budget)
    if result.outcome is not Outcome.INFEASIBLE:
        return result, None
    seeds = blocking_vertices(c, budget)
    for radius in range(max_radius + 1):
        result = complete(release_around(c, radius, seeds), budget)
        if result.outcome is not Outcome.INFEASIBLE:
            return result, radius
    return result, max_radius
