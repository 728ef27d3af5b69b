from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import nx_incidence_valid
from torus_incidence.coloring import (
    IncidenceColoring,
    PartialIncidenceColoring,
    VertexColoring,
    forbidden_colors,
    verify_incidence_coloring,
    verify_partial,
    verify_vertex_coloring,
)
from torus_incidence.constructor import construct
from torus_incidence.graph import Direction, Incidence, TorusGrid, cycle_graph, incidences, incidences_adjacent


@st.composite
def partial_colorings(draw, max_dim=5, max_k=8, allow_unassigned=True):
    m = draw(st.integers(3, max_dim))
    n = draw(st.integers(3, max_dim))
    k = draw(st.integers(5, max_k))
    low = 0 if allow_unassigned else 1
    colors = draw(arrays(np.int64, (m, n, 4), elements=st.integers(low, k)))
    return PartialIncidenceColoring(TorusGrid(m, n), colors, k)


def brute_first_conflict(c):
    grid = c.grid
    incs = incidences(grid)
    for a, b in itertools.product(incs, incs):
        if c[a] and c[a] == c[b] and incidences_adjacent(grid, a, b):
            return a, b
    return None


def test_constant_coloring_invalid():
    grid = TorusGrid(3, 3)
    c = IncidenceColoring(grid, np.ones((3, 3, 4), dtype=int), 1)
    v = verify_incidence_coloring(c)
    assert not v.valid
    assert v.witness == (Incidence(0, 0, Direction.N), Incidence(0, 0, Direction.E))


def test_empty_partial_is_valid():
    assert verify_partial(PartialIncidenceColoring.empty(TorusGrid(4, 4), 6)).valid


def test_total_type_rejects_holes():
    with pytest.raises(ValueError):
        IncidenceColoring(TorusGrid(3, 3), np.zeros((3, 3, 4), dtype=int), 6)
    with pytest.raises(ValueError):
        verify_incidence_coloring(PartialIncidenceColoring.empty(TorusGrid(3, 3), 6))


def test_color_range_checked():
    with pytest.raises(ValueError):
        PartialIncidenceColoring(TorusGrid(3, 3), np.full((3, 3, 4), 7), 6)
    with pytest.raises(ValueError):
        PartialIncidenceColoring(TorusGrid(3, 3), np.full((3, 3, 4), -1), 6)


def test_colors_read_only():
    c = PartialIncidenceColoring.empty(TorusGrid(3, 3), 6)
    with pytest.raises(ValueError):
        c.colors[0, 0, 0] = 1


@settings(max_examples=60, deadline=None)
@given(partial_colorings(max_dim=4, max_k=12))
def test_verifier_matches_definition(c):
    assert verify_partial(c).valid == nx_incidence_valid(c.grid.m, c.grid.n, c.colors)


@settings(max_examples=40, deadline=None)
@given(partial_colorings(max_dim=4, max_k=6))
def test_witness_is_first_conflict(c):
    verdict = verify_partial(c)
    expected = brute_first_conflict(c)
    if expected is None:
        assert verdict.valid
    else:
        assert verdict.witness == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.integers(3, 9), st.data())
def test_monotone_under_unassignment(m, n, data):
    # dropping assignments never makes a valid coloring invalid
    c, _ = construct(m, n)
    keep = data.draw(arrays(np.bool_, (m, n, 4)))
    partial = c.restrict(keep)
    assert verify_partial(partial).valid
    drop = data.draw(st.lists(st.sampled_from(incidences(c.grid)), max_size=10))
    assert verify_partial(partial.without(drop)).valid


@settings(max_examples=60, deadline=None)
@given(partial_colorings(max_dim=4), st.data())
def test_forbidden_colors_brute(c, data):
    grid = c.grid
    a = data.draw(st.sampled_from(incidences(grid)))
    c = c.without([a])
    expected = {c[b] for b in incidences(grid) if c[b] and incidences_adjacent(grid, a, b)}
    assert forbidden_colors(c, a) == expected


def test_forbidden_colors_on_assigned_raises():
    grid = TorusGrid(3, 3)
    c = PartialIncidenceColoring.from_mapping(grid, {Incidence(0, 0, Direction.N): 1}, 6)
    with pytest.raises(ValueError):
        forbidden_colors(c, Incidence(0, 0, Direction.N))


def test_vertex_coloring():
    g = cycle_graph(5)
    assert verify_vertex_coloring(VertexColoring(g, (1, 2, 1, 2, 3), 3)).valid
    bad = verify_vertex_coloring(VertexColoring(g, (1, 2, 1, 2, 1), 3))
    assert not bad.valid and bad.witness == (0, 4)


def test_with_colors_and_equality():
    grid = TorusGrid(3, 4)
    c = PartialIncidenceColoring.empty(grid, 6)
    a = Incidence(1, 2, Direction.W)
    d = c.with_colors({a: 3})
    assert d[a] == 3 and c[a] == 0
    assert d == PartialIncidenceColoring.from_mapping(grid, {a: 3}, 6)
    assert hash(d) == hash(PartialIncidenceColoring.from_mapping(grid, {a: 3}, 6))
    assert d.assigned() == [a]
