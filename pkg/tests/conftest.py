from __future__ import annotations

import itertools
import os

import networkx as nx
import pytest

from torus_incidence import provider
from torus_incidence.graph import Direction, Incidence, TorusGrid

# acceptance results, filled by test_acceptance and echoed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    cache = tmp_path_factory.mktemp("pattern-cache")
    old = os.environ.get("TORUS_INCIDENCE_CACHE")
    os.environ["TORUS_INCIDENCE_CACHE"] = str(cache)
    provider.configure(None)
    yield cache
    if old is None:
        os.environ.pop("TORUS_INCIDENCE_CACHE", None)
    else:
        os.environ["TORUS_INCIDENCE_CACHE"] = old


@pytest.fixture(autouse=True)
def _unpin_settings():
    # the CLI pins its settings on the provider; don't leak that between tests
    yield
    provider.configure(None)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


# -- independent oracles (networkx, straight from the definitions) ------------------


def nx_torus(m: int, n: int) -> nx.Graph:
    return nx.cartesian_product(nx.cycle_graph(m), nx.cycle_graph(n))


def nx_incidence_pairs(m: int, n: int) -> dict:
    """Map (r, c, d) to (vertex, edge) using the glossary definition of an incidence."""
    grid = TorusGrid(m, n)
    out = {}
    for r, c in itertools.product(range(m), range(n)):
        for d in Direction:
            w = tuple(grid.step((r, c), d))
            out[Incidence(r, c, d)] = ((r, c), frozenset({(r, c), w}))
    return out


def nx_conflict(a, b) -> bool:
    """(v,e) ~ (w,f) iff v = w, or e = f, or the edge vw is e or f."""
    (v, e), (w, f) = a, b
    if (v, e) == (w, f):
        return False
    vw = frozenset({v, w})
    return v == w or e == f or vw == e or vw == f


def nx_incidence_valid(m: int, n: int, colors) -> bool:
    pairs = nx_incidence_pairs(m, n)
    items = list(pairs.items())
    for (ia, a), (ib, b) in itertools.combinations(items, 2):
        ca, cb = colors[ia.row, ia.col, ia.direction], colors[ib.row, ib.col, ib.direction]
        if ca and cb and ca == cb and nx_conflict(a, b):
            return False
    return True


def nx_square_proper(entries) -> bool:
    m, n = len(entries), len(entries[0])
    sq = nx.power(nx_torus(m, n), 2)
    return all(entries[u[0]][u[1]] != entries[v[0]][v[1]] for u, v in sq.edges)
