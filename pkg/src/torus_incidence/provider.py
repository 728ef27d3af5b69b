"""Base patterns that are proper 6-colorings of squared tori.

Requests go through a chain: a known matrix when one fits, then algebraic
compositions of verified blocks, then exact search.  Every pattern is checked
on the square of its torus before it is handed out.  Blocks found by search are
memoized in a small on-disk cache; the cache only saves time.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from functools import lru_cache
from pathlib import Path

import numpy as np

from .catalog import named_pattern
from .config import Settings, load_settings
from .exact import color_search
from .graph import TorusGrid, square, torus_as_graph
from .pattern import Pattern, glue, is_proper_on_square, repeat, tile_pattern

log = logging.getLogger(__name__)

PALETTE = 6
# widths of the five-row blocks glued together; all share the first two
# columns of I, so any concatenation stays proper
BLOCK_WIDTHS = (5, 6, 8, 9)


class PatternUnavailable(RuntimeError):
    """No proper pattern of the requested size was found."""


_settings: Settings | None = None


def configure(settings: Settings | None) -> None:
    """Pin the settings used for caching; ``None`` goes back to reading the environment."""
    global _settings
    _settings = settings


def _cache_dir() -> Path | None:
    return (_settings or load_settings()).cache_dir


def _cache_path(rows: int, cols: int, palette: int, tag: str) -> Path | None:
    root = _cache_dir()
    if root is None:
        return None
    return root / f"pattern-{rows}x{cols}-k{palette}-{tag}.json"


def _read_cached(path: Path | None, rows: int, cols: int, palette: int) -> Pattern | None:
    if path is None or not path.is_file():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        p = Pattern(data["entries"])
    except (OSError, ValueError, KeyError, TypeError):
        log.warning("ignoring unreadable cache entry %s", path)
        return None
    if p.shape != (rows, cols) or p.palette_size > palette:
        return None
    return p


def _write_cached(path: Path | None, p: Pattern) -> None:
    if path is None:
        return
    payload = json.dumps({"rows": p.rows, "cols": p.cols, "entries": p.tolist()}) + "\n"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write pattern cache %s: %s", path, exc)


def search_pattern(
    rows: int, cols: int, palette: int = PALETTE, fixed: dict | None = None, node_limit: int = 5_000_000
) -> Pattern | None:
    """Exact search for a proper ``palette``-coloring of the square of ``T_{rows,cols}``.

    ``fixed`` maps ``(row, col)`` to a prescribed color.
    """
    grid = TorusGrid(rows, cols)
    adj = [set(a) for a in square(torus_as_graph(grid)).adjacency]
    pre = {r * cols + c: color for (r, c), color in (fixed or {}).items()}
    found, _ = color_search(adj, palette, pre, node_limit)
    if found is None:
        return None
    return Pattern(np.array(found).reshape(rows, cols))


def _anchor() -> Pattern:
    return named_pattern("I")


@lru_cache(maxsize=None)
def five_row_block(width: int) -> Pattern:
    """A 5 x ``width`` pattern whose first two columns equal those of I."""
    anchor = _anchor()
    if width == anchor.cols:
        return anchor
    path = _cache_path(5, width, PALETTE, "anchor-I")
    cached = _read_cached(path, 5, width, PALETTE)
    if cached is not None and _is_anchored(cached) and is_proper_on_square(cached):
        return cached
    fixed = {(r, c): int(anchor[r, c]) for r in range(5) for c in range(2)}
    block = search_pattern(5, width, PALETTE, fixed)
    if block is None:
        raise PatternUnavailable(f"no anchored 5x{width} block")
    _write_cached(path, block)
    return block


def _is_anchored(p: Pattern) -> bool:
    return p.rows == 5 and np.array_equal(p.entries[:, :2], _anchor().entries[:, :2])


@lru_cache(maxsize=None)
def block_decomposition(n: int) -> tuple[int, ...] | None:
    """Widths from :data:`BLOCK_WIDTHS` summing to ``n``: fewest blocks, then widest first."""
    best: dict[int, tuple[int, ...]] = {0: ()}
    for total in range(1, n + 1):
        options = []
        for w in BLOCK_WIDTHS:
            if w <= total and (total - w) in best:
                options.append(tuple(sorted(best[total - w] + (w,), reverse=True)))
        if options:
            best[total] = min(options, key=lambda t: (len(t), [-x for x in t]))
    return best.get(n)


def five_color_pattern(m: int, n: int) -> Pattern:
    """``entry(i, j) = (i + 2j) mod 5 + 1``, proper on the square of ``T_{m,n}`` when 5 divides m and n."""
    if m % 5 or n % 5 or m < 5 or n < 5:
        raise ValueError(f"five-color pattern needs m, n divisible by 5, got {m}x{n}")
    i, j = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    return Pattern((i + 2 * j) % 5 + 1)


@lru_cache(maxsize=None)
def five_row_pattern(n: int) -> Pattern:
    """A proper 6-coloring of the square of ``T_{5,n}`` for ``n >= 5``, ``n != 7``."""
    if n < 5 or n == 7:
        raise ValueError(f"no 6-colorable 5-row pattern of width {n} is provided")
    if n == 6:
        return _anchor()
    widths = block_decomposition(n)
    if widths is not None:
        p = five_row_block(widths[0])
        for w in widths[1:]:
            p = glue(p, five_row_block(w))
        if is_proper_on_square(p):
            return p
        log.warning("block composition for 5x%d failed verification; searching", n)
    found = search_pattern(5, n)
    if found is None:
        raise PatternUnavailable(f"no proper 6-coloring of T_{{5,{n}}}^2 found")
    return found


@lru_cache(maxsize=None)
def three_row_pattern(n: int) -> Pattern:
    """A proper 6-coloring of the square of ``T_{3,n}`` for even ``n >= 4``.

    ``n = 4l`` uses ``lC``; ``n = 4l + 6`` uses ``lC + D + E``.
    """
    if n % 2 or n < 4:
        raise ValueError(f"three-row patterns are provided for even n >= 4, got {n}")
    C, D, E = (named_pattern(x) for x in "CDE")
    if n % 4 == 0:
        candidate = repeat(C, n // 4)
    else:
        tail = glue(D, E)
        candidate = tail if n == 6 else glue(repeat(C, (n - 6) // 4), tail)
    if is_proper_on_square(candidate):
        return candidate
    found = search_pattern(3, n)
    if found is None:
        raise PatternUnavailable(f"no proper 6-coloring of T_{{3,{n}}}^2 found")
    return found


def base_pattern(rows: int, cols: int) -> Pattern:
    """Proper pattern for ``T_{rows,cols}^2`` with 5 | rows, tiled from a 5-row pattern."""
    if rows % 5:
        raise ValueError("base patterns are built for row counts divisible by 5")
    p = tile_pattern(five_row_pattern(cols), rows // 5, 1)
    if not is_proper_on_square(p):
        raise AssertionError(f"tiled {rows}x{cols} pattern is not proper")
    return p
