from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import nx_incidence_valid, nx_square_proper
from torus_incidence.catalog import named_pattern
from torus_incidence.coloring import verify_incidence_coloring, verify_partial
from torus_incidence.constructor import construct
from torus_incidence.graph import Direction, Incidence, TorusGrid, Vertex
from torus_incidence.pattern import (
    Pattern,
    QuasiPattern,
    glue,
    induce_incidence_coloring,
    induce_partial,
    is_proper_on_square,
    repeat,
    repeat_rows,
    stack,
    tile,
    tile_pattern,
    transpose,
    verify_pattern,
    vertical_edges_between,
)
from torus_incidence.provider import five_color_pattern


@st.composite
def patterns(draw, max_dim=7, max_k=7):
    m = draw(st.integers(3, max_dim))
    n = draw(st.integers(3, max_dim))
    k = draw(st.integers(2, max_k))
    return Pattern(draw(arrays(np.int64, (m, n), elements=st.integers(1, k))))


@st.composite
def near_proper(draw):
    # a proper pattern with a few entries perturbed, so both outcomes occur
    base = draw(st.sampled_from(["I", "C", "five", "A"]))
    p = {"five": five_color_pattern(5, 10)}.get(base) or named_pattern(base)
    e = p.entries.copy()
    for _ in range(draw(st.integers(0, 2))):
        r = draw(st.integers(0, p.rows - 1))
        c = draw(st.integers(0, p.cols - 1))
        e[r, c] = draw(st.integers(1, 8))
    return Pattern(e)


def test_pattern_validation():
    with pytest.raises(ValueError):
        Pattern([[1, 0], [2, 3]])
    with pytest.raises(ValueError):
        Pattern([[1, 2], [3]])


def test_mu_map_definition():
    p = named_pattern("A")
    c = induce_incidence_coloring(p)
    # mu(u, uv) = c(v)
    for r in range(4):
        for col in range(4):
            for d in Direction:
                v = c.grid.step(Vertex(r, col), d)
                assert c[Incidence(r, col, d)] == p[v.row, v.col]


@settings(max_examples=80, deadline=None)
@given(st.one_of(patterns(), near_proper()))
def test_mu_equivalence(p):
    assert is_proper_on_square(p) == verify_incidence_coloring(induce_incidence_coloring(p)).valid


@settings(max_examples=40, deadline=None)
@given(st.one_of(patterns(max_dim=5), near_proper()))
def test_square_properness_matches_networkx(p):
    assert is_proper_on_square(p) == nx_square_proper(p.tolist()) == verify_pattern(p).valid


@settings(max_examples=25, deadline=None)
@given(st.one_of(patterns(max_dim=4), near_proper()))
def test_induced_validity_matches_definition(p):
    if p.rows * p.cols > 30:
        return
    c = induce_incidence_coloring(p)
    assert verify_incidence_coloring(c).valid == nx_incidence_valid(p.rows, p.cols, c.colors)


def test_gluing_and_repeat():
    C, D, E = (named_pattern(x) for x in "CDE")
    assert repeat(C, 2) == glue(C, C)
    assert glue(D, E).shape == (3, 6)
    with pytest.raises(ValueError):
        glue(C, named_pattern("A"))
    with pytest.raises(ValueError):
        repeat(C, 0)
    assert stack(C, C).shape == (6, 4)


@pytest.mark.parametrize("l", [1, 2, 3, 5])
def test_three_row_families_proper(l):
    C, D, E = (named_pattern(x) for x in "CDE")
    assert is_proper_on_square(repeat(C, l))
    assert is_proper_on_square(glue(repeat(C, l), glue(D, E)))


def test_five_color_pattern():
    for m, n in [(5, 5), (10, 5), (15, 20)]:
        p = five_color_pattern(m, n)
        assert p.palette_size == 5 and is_proper_on_square(p)
    with pytest.raises(ValueError):
        five_color_pattern(5, 6)


def test_quasi_pattern_requires_properness():
    A = named_pattern("A")
    with pytest.raises(ValueError):
        QuasiPattern(Pattern(np.ones((3, 3), dtype=int)))
    QuasiPattern(A)


@pytest.mark.parametrize("name", ["F", "G", "H", "J"])
def test_named_quasi_patterns_partial_valid(name):
    qp = named_pattern(name)
    c = induce_partial(qp)
    assert verify_partial(c).valid
    assert c.unassigned_count == 2 * len(qp.deleted_edges)
    assert set(c.unassigned()) == set(qp.uncolored())


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["I", "C", "A"]), st.data())
def test_repeat_rows_partial_valid(name, data):
    p = named_pattern(name)
    rows = data.draw(st.lists(st.integers(0, p.rows - 1), min_size=1, max_size=p.rows, unique=True))
    qp = repeat_rows(p, rows)
    assert qp.rows == p.rows + 2 * len(rows)
    c = induce_partial(qp)
    assert verify_partial(c).valid
    # every tripled row leaves 4 unassigned incidences per column
    assert c.unassigned_count == 4 * len(rows) * p.cols


def test_repeat_rows_errors():
    I = named_pattern("I")
    with pytest.raises(ValueError):
        repeat_rows(I, [0, 0])
    with pytest.raises(ValueError):
        repeat_rows(I, [5])
    assert repeat_rows(I, [0]).base == named_pattern("Iprime")


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.integers(3, 8), st.integers(1, 3), st.integers(1, 3))
def test_tiling_closure(m, n, p, q):
    c, _ = construct(m, n)
    t = tile(c, p, q)
    assert t.grid == TorusGrid(p * m, q * n)
    assert verify_incidence_coloring(t).valid


def test_tile_pattern_commutes_with_induce():
    p = named_pattern("I")
    assert induce_incidence_coloring(tile_pattern(p, 2, 3)) == tile(induce_incidence_coloring(p), 2, 3)


def test_tile_rejects_invalid():
    bad = induce_incidence_coloring(Pattern(np.ones((3, 3), dtype=int)))
    with pytest.raises(ValueError):
        tile(bad, 2, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 9), st.integers(3, 9))
def test_transpose_preserves_validity(m, n):
    c, _ = construct(m, n)
    t = transpose(c)
    assert t.grid == TorusGrid(n, m)
    assert verify_incidence_coloring(t).valid
    assert transpose(t) == c


def test_transpose_maps_directions():
    # vertex (r, c) heading N becomes vertex (c, r) heading W
    p = named_pattern("I")
    c = induce_incidence_coloring(p)
    t = transpose(c)
    assert t == induce_incidence_coloring(p.transposed())
    assert t[Incidence(2, 1, Direction.W)] == c[Incidence(1, 2, Direction.N)]
    assert t[Incidence(2, 1, Direction.S)] == c[Incidence(1, 2, Direction.E)]


def test_deleted_ring_helper():
    grid = TorusGrid(4, 3)
    ring = vertical_edges_between(grid, 3)
    assert [tuple(e.b) for e in ring] == [(0, 0), (0, 1), (0, 2)]
