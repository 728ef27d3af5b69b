"""Reading and writing colorings and patterns.

Coordinates are 0-based, colors 1-based.  All writers emit UTF-8 with LF line
endings and a fixed key order so repeated runs diff cleanly.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .coloring import UNASSIGNED, IncidenceColoring, PartialIncidenceColoring
from .graph import Axis, Direction, Edge, TorusGrid, Vertex
from .pattern import Pattern, QuasiPattern


class FormatError(ValueError):
    """Input did not parse; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


_DIRS = {d.name: d for d in Direction}


# -- incidence colorings -------------------------------------------------------


def coloring_to_json(c: PartialIncidenceColoring, extra: dict | None = None) -> str:
    entries = []
    for r in range(c.grid.m):
        for col in range(c.grid.n):
            for d in Direction:
                value = int(c.colors[r, col, d])
                if value != UNASSIGNED:
                    entries.append(f'[{r}, {col}, "{d.name}", {value}]')
    body = ",\n    ".join(entries)
    lines = [
        "{",
        f'  "m": {c.grid.m},',
        f'  "n": {c.grid.n},',
        f'  "k": {c.palette_size},',
        f'  "colors": [\n    {body}\n  ]' if entries else '  "colors": []',
    ]
    if extra:
        lines[-1] += ","
        items = list(extra.items())
        for i, (key, value) in enumerate(items):
            sep = "," if i < len(items) - 1 else ""
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    idx = text.find(needle)
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def coloring_from_json(text: str) -> PartialIncidenceColoring:
    """Parse an incidence-coloring document; total colorings come back as :class:`IncidenceColoring`."""
    data = _load_json(text)
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object", 1, 1)
    for key in ("m", "n", "k", "colors"):
        if key not in data:
            raise FormatError(f"missing key {key!r}", 1, 1)
    try:
        grid = TorusGrid(int(data["m"]), int(data["n"]))
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc), *_locate(text, '"m"')) from None
    k = data["k"]
    if not isinstance(k, int) or k < 1:
        raise FormatError("k must be a positive integer", *_locate(text, '"k"'))
    colors = np.zeros((grid.m, grid.n, 4), dtype=np.int64)
    for i, entry in enumerate(data["colors"]):
        ok = (
            isinstance(entry, list)
            and len(entry) == 4
            and all(isinstance(x, int) for x in (entry[0], entry[1], entry[3]))
            and entry[2] in _DIRS
        )
        if not ok or not (0 <= entry[0] < grid.m and 0 <= entry[1] < grid.n) or not 1 <= entry[3] <= k:
            line, col = _locate(text, json.dumps(entry).replace(",", ", ")) if isinstance(entry, list) else (None, None)
            raise FormatError(f"bad colors entry #{i}: {entry!r}", line, col)
        r, col_, d, value = entry[0], entry[1], _DIRS[entry[2]], entry[3]
        if colors[r, col_, d] != UNASSIGNED:
            raise FormatError(f"incidence ({r}, {col_}, {d.name}) listed twice")
        colors[r, col_, d] = value
    if (colors != UNASSIGNED).all():
        return IncidenceColoring(grid, colors, k)
    return PartialIncidenceColoring(grid, colors, k)


# -- patterns ------------------------------------------------------------------


def pattern_to_matrix(p: Pattern) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in p.tolist())


def pattern_from_matrix(text: str) -> Pattern:
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = []
        for match in re.finditer(r"\S+", line):
            token = match.group()
            if not token.isdigit() or int(token) < 1:
                raise FormatError(f"expected a positive integer, got {token!r}", lineno, match.start() + 1)
            row.append(int(token))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"expected {width} entries, got {len(row)}", lineno, 1)
        rows.append(row)
    if not rows:
        raise FormatError("empty matrix", 1, 1)
    return Pattern(rows)


def _edge_to_json(e: Edge) -> list:
    return [[e.a.row, e.a.col], [e.b.row, e.b.col]]


def _edge_from_json(grid: TorusGrid, item) -> Edge:
    (r1, c1), (r2, c2) = item
    e = grid.edge_between(Vertex(r1, c1), Vertex(r2, c2))
    if e is None:
        raise FormatError(f"{item!r} is not an edge of T_{{{grid.m},{grid.n}}}")
    return e


def pattern_to_json(p: Pattern | QuasiPattern) -> str:
    base = p.base if isinstance(p, QuasiPattern) else p
    out = {"rows": base.rows, "cols": base.cols, "entries": base.tolist()}
    if isinstance(p, QuasiPattern):
        edges = sorted(p.deleted_edges, key=lambda e: (e.a, e.axis != Axis.HORIZONTAL))
        out["deleted_edges"] = [_edge_to_json(e) for e in edges]
    return json.dumps(out) + "\n"


def pattern_from_json(text: str) -> Pattern | QuasiPattern:
    data = _load_json(text)
    try:
        p = Pattern(data["entries"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad pattern entries: {exc}", 1, 1) from None
    if p.shape != (data.get("rows", p.rows), data.get("cols", p.cols)):
        raise FormatError("rows/cols do not match entries", 1, 1)
    deleted = data.get("deleted_edges")
    if not deleted:
        return p
    grid = p.grid()
    edges = frozenset(_edge_from_json(grid, item) for item in deleted)
    try:
        return QuasiPattern(p, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_pattern(text: str) -> Pattern | QuasiPattern:
    return pattern_from_json(text) if text.lstrip().startswith("{") else pattern_from_matrix(text)


def pattern_from_coloring(c: PartialIncidenceColoring) -> Pattern | None:
    """The pattern inducing ``c``, if every vertex receives one color from all its neighbors."""
    if not c.is_total():
        return None
    m, n = c.grid.shape
    received = np.empty((m, n, 4), dtype=np.int64)
    for d in Direction:
        dr, dc = d.offset
        # (v - d, d) points at v
        received[:, :, d] = np.roll(c.colors[:, :, d], shift=(dr, dc), axis=(0, 1))
    if not (received == received[:, :, :1]).all():
        return None
    return Pattern(received[:, :, 0])


# -- drawings ------------------------------------------------------------------


def render_ascii(c: PartialIncidenceColoring) -> str:
    """Figure-style drawing: each vertex ``o`` with its four incidence colors around it.

    Unassigned incidences are drawn as ``x``.
    """
    m, n = c.grid.shape
    w = max(1, len(str(int(c.colors.max(initial=0)))))

    def tok(value: int) -> str:
        return ("x" if value == UNASSIGNED else str(value)).rjust(w)

    pad = " " * (w + 1)
    vert = "".join(pad + "|".ljust(w) + " " for _ in range(n)).rstrip()
    lines = [f"T_{{{m},{n}}} k={c.palette_size}", vert]
    for r in range(m):
        top = "".join(pad + tok(c.colors[r, col, Direction.N]) + " " for col in range(n))
        mid = "-" + "-".join(
            f"{tok(c.colors[r, col, Direction.W])} o {tok(c.colors[r, col, Direction.E])}" for col in range(n)
        ) + "-"
        bottom = "".join(pad + tok(c.colors[r, col, Direction.S]) + " " for col in range(n))
        lines += [top.rstrip(), mid, bottom.rstrip(), vert]
    return "\n".join(lines) + "\n"


def parse_ascii(text: str) -> PartialIncidenceColoring:
    """Inverse of :func:`render_ascii`."""
    header, *body = [ln for ln in text.splitlines() if ln.strip()]
    match = re.fullmatch(r"T_\{(\d+),(\d+)\} k=(\d+)", header.strip())
    if not match:
        raise FormatError("missing 'T_{m,n} k=K' header", 1, 1)
    m, n, k = (int(x) for x in match.groups())
    rows = [ln for ln in body if set(ln.strip()) - {"|", " "}]
    if len(rows) != 3 * m:
        raise FormatError(f"expected {3 * m} drawing lines, got {len(rows)}")
    colors = np.zeros((m, n, 4), dtype=np.int64)

    def val(tok: str) -> int:
        return 0 if tok == "x" else int(tok)

    for r in range(m):
        top = rows[3 * r].split()
        mid = rows[3 * r + 1].replace("-", " ").replace(" o ", " ").split()
        bottom = rows[3 * r + 2].split()
        if len(top) != n or len(bottom) != n or len(mid) != 2 * n:
            raise FormatError(f"vertex row {r} has the wrong width")
        for col in range(n):
            colors[r, col, Direction.N] = val(top[col])
            colors[r, col, Direction.W] = val(mid[2 * col])
            colors[r, col, Direction.E] = val(mid[2 * col + 1])
            colors[r, col, Direction.S] = val(bottom[col])
    grid = TorusGrid(m, n)
    if (colors != UNASSIGNED).all():
        return IncidenceColoring(grid, colors, k)
    return PartialIncidenceColoring(grid, colors, k)


def render_dot(c: PartialIncidenceColoring) -> str:
    """Graphviz drawing; each edge carries its two incidence colors as tail/head labels."""
    m, n = c.grid.shape
    lines = [f'graph "T_{m}_{n}" {{', "  node [shape=point];"]
    for r in range(m):
        for col in range(n):
            lines.append(f'  "{r},{col}" [pos="{col},{-r}!"];')
    for e in c.grid.edges():
        a, b, axis = e
        out_d, in_d = (Direction.E, Direction.W) if axis == Axis.HORIZONTAL else (Direction.S, Direction.N)
        tail = int(c.colors[a.row, a.col, out_d]) or "x"
        head = int(c.colors[b.row, b.col, in_d]) or "x"
        lines.append(f'  "{a.row},{a.col}" -- "{b.row},{b.col}" [taillabel="{tail}", headlabel="{head}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
