"""Optimal incidence colorings of toroidal grids, case by case.

``construct(m, n)`` returns a verified coloring with 5 colors when both
dimensions are multiples of 5 and 6 colors otherwise, along with a trace of
the branch that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .catalog import named_pattern
from .coloring import IncidenceColoring, PartialIncidenceColoring, verify_incidence_coloring
from .completion import CompletionBudget, complete_with_repair
from .graph import Direction, TorusGrid
from .pattern import (
    Pattern,
    QuasiPattern,
    glue,
    horizontal_edges_between,
    induce_incidence_coloring,
    induce_partial,
    repeat,
    repeat_rows,
    tile,
    transpose,
    vertical_edges_between,
)
from .provider import base_pattern, five_color_pattern, three_row_pattern

PALETTE = 6

CASE_LABELS = (
    "FiveColor/tiled",
    "Lemma1/n=3",
    "Lemma1/n=4l+1",
    "Lemma1/n=4l+3",
    "Lemma1/n-even",
    "Lemma2/n=3",
    "Lemma2/n=4",
    "Lemma2/n=3p+4q",
    "Lemma2/n=5",
    "Lemma3/rows+0",
    "Lemma3/rows+2",
    "Lemma3/rows+4",
    "Lemma3/rows+6",
    "Lemma3/rows+8",
    "Lemma4/T45",
    "Lemma4/T77",
)


class ConstructionError(RuntimeError):
    """A branch produced something that failed verification."""


@dataclass(frozen=True)
class ConstructionTrace:
    case_label: str
    base_pattern: Pattern | QuasiPattern | None
    tiling: tuple[int, int] = (1, 1)
    completion_nodes: int = 0
    repair_radius: int | None = None
    transposed: bool = False

    def __post_init__(self):
        if self.case_label not in CASE_LABELS:
            raise ValueError(f"unknown case label {self.case_label!r}")

    def summary(self) -> dict:
        base = self.base_pattern
        if isinstance(base, QuasiPattern):
            shape, deleted = base.base.shape, len(base.deleted_edges)
        elif isinstance(base, Pattern):
            shape, deleted = base.shape, 0
        else:
            shape, deleted = None, 0
        return {
            "case": self.case_label,
            "base_shape": list(shape) if shape else None,
            "deleted_edges": deleted,
            "tiling": list(self.tiling),
            "completion_nodes": self.completion_nodes,
            "repair_radius": self.repair_radius,
            "transposed": self.transposed,
        }


def _checked(c: IncidenceColoring, palette: int) -> IncidenceColoring:
    verdict = verify_incidence_coloring(c)
    if not verdict.valid:
        raise ConstructionError(f"invalid coloring of T_{{{c.grid.m},{c.grid.n}}}: {verdict.witness}")
    if c.palette_size != palette or int(c.colors.max()) > palette:
        raise ConstructionError(f"expected palette {palette}, got {c.palette_size}")
    return c


def _complete_quasi(qp: QuasiPattern) -> tuple[IncidenceColoring, int, int | None]:
    partial = induce_partial(qp)
    result, radius = complete_with_repair(partial, CompletionBudget(PALETTE))
    if not result.ok:
        raise ConstructionError(f"could not complete quasi-pattern ({result.outcome.value})")
    return result.coloring, result.nodes, radius


def _with_palette(c: IncidenceColoring, palette: int) -> IncidenceColoring:
    return IncidenceColoring(c.grid, c.colors, palette)


def _tile_trace(c, trace, p, q):
    out = tile(c, p, q) if (p, q) != (1, 1) else c
    return out, replace(trace, tiling=(p, q))


# -- five colors ----------------------------------------------------------------


def construct_five(m: int, n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    base = five_color_pattern(5, 5)
    c = _checked(induce_incidence_coloring(base), 5)
    trace = ConstructionTrace("FiveColor/tiled", base)
    return _tile_trace(c, trace, m // 5, n // 5)


# -- multiples of 3 -------------------------------------------------------------


def axis_split(m: int, n: int) -> IncidenceColoring:
    """Vertical incidences from {1,2,3}, horizontal from {4,5,6}; needs 3 | m and 3 | n."""
    if m % 3 or n % 3:
        raise ValueError("axis split needs both dimensions divisible by 3")
    rows, cols = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    colors = np.empty((m, n, 4), dtype=np.int64)
    colors[:, :, Direction.N] = (rows - 1) % 3 + 1
    colors[:, :, Direction.S] = (rows + 1) % 3 + 1
    colors[:, :, Direction.E] = (cols + 1) % 3 + 4
    colors[:, :, Direction.W] = (cols - 1) % 3 + 4
    return IncidenceColoring(TorusGrid(m, n), colors, PALETTE)


def lemma1_quasi_pattern(n: int) -> QuasiPattern:
    """``B + lC`` (n = 4l + 1) or ``B + lD + E`` (n = 4l + 3) without the column-0/1 edges."""
    if n % 2 == 0 or n < 5:
        raise ValueError("the B-based quasi-patterns cover odd n >= 5")
    B, C, D, E = (named_pattern(x) for x in "BCDE")
    if n % 4 == 1:
        base = glue(B, repeat(C, (n - 1) // 4))
    else:
        body = glue(B, repeat(D, (n - 3) // 4)) if n > 3 else B
        base = glue(body, E)
    deleted = horizontal_edges_between(TorusGrid(3, n), 0)
    return QuasiPattern(base, frozenset(deleted), PALETTE)


@lru_cache(maxsize=None)
def _lemma1_base(n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    if n == 3:
        c = axis_split(3, 3)
        return c, ConstructionTrace("Lemma1/n=3", None)
    if n % 2 == 0:
        p = three_row_pattern(n)
        return _with_palette(induce_incidence_coloring(p), PALETTE), ConstructionTrace("Lemma1/n-even", p)
    qp = lemma1_quasi_pattern(n)
    c, nodes, radius = _complete_quasi(qp)
    label = "Lemma1/n=4l+1" if n % 4 == 1 else "Lemma1/n=4l+3"
    return c, ConstructionTrace(label, qp, completion_nodes=nodes, repair_radius=radius)


def construct_lemma1(k: int, n: int) -> IncidenceColoring:
    return construct_lemma1_traced(k, n)[0]


def construct_lemma1_traced(k: int, n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    """6-coloring of ``T_{3k,n}``."""
    if k < 1 or n < 3:
        raise ValueError("need k >= 1 and n >= 3")
    c, trace = _lemma1_base(n)
    c, trace = _tile_trace(_checked(c, PALETTE), trace, k, 1)
    return _checked(c, PALETTE), trace


# -- multiples of 4 -------------------------------------------------------------


def split_3p_4q(n: int) -> tuple[int, int]:
    """``n = 3p + 4q`` with the largest possible ``q``."""
    for q in range(n // 4, -1, -1):
        if (n - 4 * q) % 3 == 0:
            return (n - 4 * q) // 3, q
    raise ValueError(f"{n} is not of the form 3p + 4q")


def lemma2_quasi_pattern(n: int) -> QuasiPattern:
    """``pF + qG`` with the ring of edges below rows 0 and 2 deleted."""
    if n in (1, 2, 5) or n < 3:
        raise ValueError(f"{n} is not of the form 3p + 4q")
    F, G = named_pattern("F").base, named_pattern("G").base
    p, q = split_3p_4q(n)
    blocks = [F] * p + [G] * q
    base = blocks[0]
    for b in blocks[1:]:
        base = glue(base, b)
    grid = TorusGrid(4, n)
    deleted = vertical_edges_between(grid, 0) + vertical_edges_between(grid, 2)
    return QuasiPattern(base, frozenset(deleted), PALETTE)


@lru_cache(maxsize=None)
def _lemma2_base(n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    qp = lemma2_quasi_pattern(n)
    c, nodes, radius = _complete_quasi(qp)
    label = {3: "Lemma2/n=3", 4: "Lemma2/n=4"}.get(n, "Lemma2/n=3p+4q")
    return c, ConstructionTrace(label, qp, completion_nodes=nodes, repair_radius=radius)


def construct_lemma2(k: int, n: int) -> IncidenceColoring:
    return construct_lemma2_traced(k, n)[0]


def construct_lemma2_traced(k: int, n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    """6-coloring of ``T_{4k,n}``; ``T_{4,5}`` belongs to :func:`construct_lemma4`."""
    if k < 1 or n < 3:
        raise ValueError("need k >= 1 and n >= 3")
    if (k, n) == (1, 5):
        raise ValueError("T_{4,5} is handled by construct_lemma4('T45')")
    if n == 5:
        c, trace = construct_lemma4_traced("T45")
        c, trace = _tile_trace(c, replace(trace, case_label="Lemma2/n=5"), k, 1)
        return _checked(c, PALETTE), trace
    c, trace = _lemma2_base(n)
    c, trace = _tile_trace(_checked(c, PALETTE), trace, k, 1)
    return _checked(c, PALETTE), trace


# -- general case -----------------------------------------------------------------


def tripled_rows(base_rows: int, count: int) -> list[int]:
    """Rows of the base to triple: even rows lowest first, then odd rows.

    For a 5-row base this eventually picks rows that are adjacent in the base;
    their chains are still separated by the kept edge between them.
    """
    order = list(range(0, base_rows, 2)) + list(range(1, base_rows, 2))
    if count > len(order):
        raise ValueError(f"cannot triple {count} of {base_rows} rows")
    return order[:count]


def lemma3_split(m: int) -> tuple[int, int]:
    """``m = 5k + 2r`` with ``0 <= r <= 4`` and ``k >= 1``."""
    r = (3 * m) % 5
    k = (m - 2 * r) // 5
    if k < 1:
        raise ValueError(f"{m} is not of the form 5k + 2r with k >= 1")
    return k, r


def lemma3_quasi_pattern(m: int, n: int) -> QuasiPattern:
    k, r = lemma3_split(m)
    base = base_pattern(5 * k, n)
    return repeat_rows(base, tripled_rows(5 * k, r), PALETTE)


@lru_cache(maxsize=None)
def _lemma3(m: int, n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    k, r = lemma3_split(m)
    label = f"Lemma3/rows+{2 * r}"
    if r == 0:
        p = base_pattern(m, n)
        c = _with_palette(induce_incidence_coloring(p), PALETTE)
        return c, ConstructionTrace(label, p)
    qp = lemma3_quasi_pattern(m, n)
    c, nodes, radius = _complete_quasi(qp)
    return c, ConstructionTrace(label, qp, completion_nodes=nodes, repair_radius=radius)


def construct_lemma3(m: int, n: int) -> IncidenceColoring:
    return construct_lemma3_traced(m, n)[0]


def construct_lemma3_traced(m: int, n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    """6-coloring of ``T_{m,n}`` for ``m, n >= 5``, ``m`` not 6 or 8, ``n != 7``."""
    if m < 5 or n < 5 or m in (6, 8) or n == 7:
        raise ValueError(f"general case needs m, n >= 5, m not in (6, 8), n != 7; got {m}x{n}")
    c, trace = _lemma3(m, n)
    return _checked(c, PALETTE), trace


# -- the two leftovers ----------------------------------------------------------


@lru_cache(maxsize=None)
def _lemma4(which: str) -> tuple[IncidenceColoring, ConstructionTrace]:
    if which == "T45":
        qp = repeat_rows(named_pattern("C"), [0], PALETTE)
        c, nodes, radius = _complete_quasi(qp)
        c = transpose(c)
        return c, ConstructionTrace("Lemma4/T45", qp, completion_nodes=nodes, repair_radius=radius, transposed=True)
    if which == "T77":
        qp = named_pattern("J")
        c, nodes, radius = _complete_quasi(qp)
        return c, ConstructionTrace("Lemma4/T77", qp, completion_nodes=nodes, repair_radius=radius)
    raise ValueError(f"unknown special case {which!r}; use 'T45' or 'T77'")


def construct_lemma4(which: str) -> IncidenceColoring:
    return construct_lemma4_traced(which)[0]


def construct_lemma4_traced(which: str) -> tuple[IncidenceColoring, ConstructionTrace]:
    c, trace = _lemma4(which)
    return _checked(c, PALETTE), trace


# -- dispatch -----------------------------------------------------------------------


def _flip(result):
    c, trace = result
    return transpose(c), replace(trace, transposed=not trace.transposed)


def _dispatch(m: int, n: int):
    if m % 5 == 0 and n % 5 == 0:
        return construct_five(m, n)
    if m % 3 == 0:
        return construct_lemma1_traced(m // 3, n)
    if n % 3 == 0:
        return _flip(construct_lemma1_traced(n // 3, m))
    if m % 4 == 0:
        if (m, n) == (4, 5):
            return construct_lemma4_traced("T45")
        return construct_lemma2_traced(m // 4, n)
    if n % 4 == 0:
        if (n, m) == (4, 5):
            return _flip(construct_lemma4_traced("T45"))
        return _flip(construct_lemma2_traced(n // 4, m))
    if (m, n) == (7, 7):
        return construct_lemma4_traced("T77")
    # prefer the smaller dimension as the one that gets tripled rows,
    # unless that leaves a width of 7
    if n == 7 or (m > n and m != 7):
        return _flip(construct_lemma3_traced(n, m))
    return construct_lemma3_traced(m, n)


def construct(m: int, n: int) -> tuple[IncidenceColoring, ConstructionTrace]:
    """Incidence coloring of ``T_{m,n}`` with 5 colors if 5 | m and 5 | n, else 6."""
    if m < 3 or n < 3:
        raise ValueError(f"toroidal grids need m, n >= 3, got {m}x{n}")
    c, trace = _dispatch(int(m), int(n))
    palette = 5 if m % 5 == 0 and n % 5 == 0 else PALETTE
    if c.grid != TorusGrid(m, n):
        raise ConstructionError(f"branch {trace.case_label} built T_{{{c.grid.m},{c.grid.n}}}")
    return _checked(c, palette), trace


def optimal_palette(m: int, n: int) -> int:
    return 5 if m % 5 == 0 and n % 5 == 0 else 6
