"""Named patterns, quasi-patterns and reference incidence colorings.

The matrices are stored verbatim from the published construction.
Figure-style colorings use a text layout that mirrors the drawings: each
vertex row takes three lines, holding the N colors, the ``W E`` pairs, and the
S colors.  Letters (``x``, ``y``, ``z``) mark unassigned incidences.
"""

from __future__ import annotations

import numpy as np

from .coloring import PartialIncidenceColoring
from .graph import Direction, TorusGrid
from .pattern import Pattern, QuasiPattern, vertical_edges_between

_MATRICES = {
    "A": [[1, 2, 3, 4], [3, 4, 5, 6], [5, 6, 7, 8], [7, 8, 1, 2]],
    "B": [[3], [1], [2]],
    "C": [[1, 4, 2, 5], [2, 5, 3, 6], [3, 6, 1, 4]],
    "D": [[1, 4, 3, 6], [2, 5, 1, 4], [3, 6, 2, 5]],
    "E": [[2, 5], [3, 6], [1, 4]],
    "F": [[1, 2, 4], [1, 2, 4], [3, 5, 6], [3, 5, 6]],
    "G": [[1, 2, 3, 4], [1, 2, 3, 4], [3, 4, 5, 6], [3, 4, 5, 6]],
    "H": [
        [1, 2, 4, 1, 2, 4, 1, 2, 3, 4, 1, 2, 3, 4],
        [1, 2, 4, 1, 2, 4, 1, 2, 3, 4, 1, 2, 3, 4],
        [3, 5, 6, 3, 5, 6, 3, 4, 5, 6, 3, 4, 5, 6],
        [3, 5, 6, 3, 5, 6, 3, 4, 5, 6, 3, 4, 5, 6],
    ],
    "I": [
        [6, 1, 2, 3, 4, 5],
        [3, 4, 5, 6, 1, 2],
        [5, 6, 1, 2, 3, 4],
        [2, 3, 4, 5, 6, 1],
        [4, 5, 6, 1, 2, 3],
    ],
    "Iprime": [
        [6, 1, 2, 3, 4, 5],
        [6, 1, 2, 3, 4, 5],
        [6, 1, 2, 3, 4, 5],
        [3, 4, 5, 6, 1, 2],
        [5, 6, 1, 2, 3, 4],
        [2, 3, 4, 5, 6, 1],
        [4, 5, 6, 1, 2, 3],
    ],
    "J": [
        [3, 5, 6, 3, 4, 5, 6],
        [1, 2, 4, 1, 2, 3, 4],
        [1, 2, 4, 1, 2, 3, 4],
        [3, 5, 6, 3, 4, 5, 6],
        [3, 5, 6, 3, 4, 5, 6],
        [1, 2, 4, 1, 2, 3, 4],
        [1, 2, 4, 1, 2, 3, 4],
    ],
}

# rows r whose ring of edges to row r + 1 is deleted
_DELETED_ROW_RINGS = {
    "F": (0, 2),
    "G": (0, 2),
    "H": (0, 2),
    # the lone row 0 sits between two identical rows, so its lower ring goes too;
    # rows 0-2 then form the same four-incidence chain as a tripled row
    "J": (0, 1, 3, 5),
}

PATTERN_NAMES = tuple(_MATRICES)


def named_pattern(name: str) -> Pattern | QuasiPattern:
    """Return pattern ``name``; F, G, H and J come back as quasi-patterns."""
    if name not in _MATRICES:
        raise KeyError(f"unknown pattern {name!r}; choose from {', '.join(PATTERN_NAMES)}")
    base = Pattern(_MATRICES[name])
    rings = _DELETED_ROW_RINGS.get(name)
    if rings is None:
        return base
    grid = base.grid()
    deleted = [e for r in rings for e in vertical_edges_between(grid, r)]
    return QuasiPattern(base, frozenset(deleted), palette_size=6)


def parse_figure(text: str, palette_size: int | None = None) -> PartialIncidenceColoring:
    """Read a figure-style incidence coloring (see module docstring)."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) % 3:
        raise ValueError("figure layout needs three lines per vertex row")
    m = len(lines) // 3
    n = len(lines[0])
    colors = np.zeros((m, n, 4), dtype=np.int64)

    def value(tok: str) -> int:
        return int(tok) if tok.isdigit() else 0

    for r in range(m):
        top, mid, bottom = lines[3 * r : 3 * r + 3]
        if len(top) != n or len(bottom) != n or len(mid) != 2 * n:
            raise ValueError(f"vertex row {r} has inconsistent width")
        for c in range(n):
            colors[r, c, Direction.N] = value(top[c])
            colors[r, c, Direction.W] = value(mid[2 * c])
            colors[r, c, Direction.E] = value(mid[2 * c + 1])
            colors[r, c, Direction.S] = value(bottom[c])
    return PartialIncidenceColoring(TorusGrid(m, n), colors, palette_size)


FIGURES = {
    # induced by pattern A on T_{4,4}
    "A_on_T44": """
        7 8 1 2
        4 2 1 3 2 4 3 1
        3 4 5 6
        1 2 3 4
        6 4 3 5 4 6 5 3
        5 6 7 8
        3 4 5 6
        8 6 5 7 6 8 7 5
        7 8 1 2
        5 6 7 8
        2 8 7 1 8 2 1 7
        1 2 3 4
    """,
    # completed 6-coloring of T_{3,5} from B + C
    "T35_complete": """
        2 5 6 1 4
        5 6 3 4 1 2 4 5 2 3
        1 2 5 3 6
        3 6 4 2 5
        6 4 1 5 2 3 5 6 3 1
        2 3 6 1 4
        1 4 5 3 6
        4 5 2 6 3 1 6 4 1 2
        3 1 4 2 5
    """,
    # partial coloring of T_{4,3} from F; the lower colors of row 1 are
    # printed as "3 4 5", which clashes with the E colors of that row, so the
    # values induced by F ("3 5 6") are used here (see F_partial_as_printed)
    "F_partial": """
        3 5 6
        4 2 1 4 2 1
        x x x
        x x x
        4 2 1 4 2 1
        3 5 6
        1 2 4
        6 5 3 6 5 3
        x x x
        x x x
        6 5 3 6 5 3
        1 2 4
    """,
    "F_partial_as_printed": """
        3 5 6
        4 2 1 4 2 1
        x x x
        x x x
        4 2 1 4 2 1
        3 4 5
        1 2 4
        6 5 3 6 5 3
        x x x
        x x x
        6 5 3 6 5 3
        1 2 4
    """,
    # partial coloring of T_{4,4} from G
    "G_partial": """
        3 4 5 6
        4 2 1 3 2 4 3 1
        x x x x
        x x x x
        4 2 1 3 2 4 3 1
        3 4 5 6
        1 2 3 4
        6 4 3 5 4 6 5 3
        x x x x
        x x x x
        6 4 3 5 4 6 5 3
        1 2 3 4
    """,
    # partial coloring of T_{7,6} from I'
    "Iprime_partial": """
        4 5 6 1 2 3
        5 1 6 2 1 3 2 4 3 5 4 6
        x x x x x x
        y y y y y y
        5 1 6 2 1 3 2 4 3 5 4 6
        z z z z z z
        x x x x x x
        5 1 6 2 1 3 2 4 3 5 4 6
        3 4 5 6 1 2
        6 1 2 3 4 5
        2 4 3 5 4 6 5 1 6 2 1 3
        5 6 1 2 3 4
        3 4 5 6 1 2
        4 6 5 1 6 2 1 3 2 4 3 5
        2 3 4 5 6 1
        5 6 1 2 3 4
        1 3 2 4 3 5 4 6 5 1 6 2
        4 5 6 1 2 3
        2 3 4 5 6 1
        3 5 4 6 5 1 6 2 1 3 2 4
        6 1 2 3 4 5
    """,
    # partial 6-coloring of T_{7,7} from J, with some colors already modified
    "J_partial": """
        1 2 4 1 2 3 4
        6 4 3 1 5 2 6 4 3 5 4 6 5 3
        5 6 3 5 6 1 2
        3 5 6 3 4 5 6
        4 2 1 4 2 1 4 2 1 3 2 4 3 1
        y y y y y y y
        5 6 3 5 6 1 2
        4 2 1 4 2 1 4 2 1 3 2 4 3 1
        3 5 6 3 4 5 6
        1 2 4 1 2 3 4
        6 5 3 6 5 3 6 4 3 5 4 6 5 3
        x x x x x x x
        x x x x x x x
        6 5 3 6 5 3 6 4 3 5 4 6 5 3
        1 2 4 1 2 3 4
        3 5 6 3 4 5 6
        4 2 1 4 2 1 4 2 1 3 2 4 3 1
        x x x x x x x
        x x x x x x x
        4 2 1 4 2 1 4 2 1 3 2 4 3 1
        3 5 6 3 4 5 6
    """,
    # complete 6-coloring of T_{4,5} (tripled first row of C, transposed)
    "T45_complete": """
        1 1 1 2 3
        4 3 6 4 3 6 5 4 6 5
        2 2 2 3 1
        5 5 5 6 4
        1 6 3 1 6 3 2 1 3 2
        4 4 4 5 6
        2 2 2 3 1
        6 3 5 6 3 5 4 6 5 4
        1 1 1 2 3
        4 4 4 5 6
        3 6 2 3 6 2 1 3 2 1
        5 5 5 6 4
    """,
}


def figure(name: str) -> PartialIncidenceColoring:
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}")
    return parse_figure(FIGURES[name], palette_size=8 if name == "A_on_T44" else 6)
