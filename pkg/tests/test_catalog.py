from __future__ import annotations

import numpy as np
import pytest

import latex_source
from torus_incidence.catalog import FIGURES, PATTERN_NAMES, figure, named_pattern, parse_figure
from torus_incidence.coloring import forbidden_colors, verify_incidence_coloring, verify_partial
from torus_incidence.graph import Direction, Incidence
from torus_incidence.pattern import (
    QuasiPattern,
    glue,
    induce_incidence_coloring,
    induce_partial,
    is_proper_on_square,
    repeat,
    repeat_rows,
)

SOURCE_NAMES = {"Iprime": "I'"}
# drawings in source order
DRAWINGS = ["A_on_T44", "T35_complete", "F_partial_as_printed", "G_partial", "Iprime_partial", "T45_complete", "J_partial"]


def _base(name):
    p = named_pattern(name)
    return p.base if isinstance(p, QuasiPattern) else p


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_matrices_match_source(name):
    assert _base(name).tolist() == latex_source.matrix(SOURCE_NAMES.get(name, name))


def test_h_is_2f_plus_2g():
    F, G = _base("F"), _base("G")
    assert _base("H") == glue(repeat(F, 2), repeat(G, 2))


@pytest.mark.parametrize("name,drawing", list(zip(DRAWINGS, latex_source.drawings())))
def test_figures_match_source(name, drawing):
    printed = parse_figure(latex_source.as_figure_text(drawing))
    assert np.array_equal(printed.colors, figure(name).colors)


@pytest.mark.parametrize("name", ["A", "C", "D", "I"])
def test_proper_patterns(name):
    assert is_proper_on_square(_base(name))


def test_a_coloring_is_induced_by_a():
    assert figure("A_on_T44") == induce_incidence_coloring(named_pattern("A"))
    # color 6 reaches vertex (row 3, col 2) counted from 1, from all four neighbors
    c = figure("A_on_T44")
    r, col = 2, 1
    into = [c[Incidence((r - dr) % 4, (col - dc) % 4, d)] for d in Direction for dr, dc in [d.offset]]
    assert into == [6, 6, 6, 6]


@pytest.mark.parametrize("name", ["T35_complete", "T45_complete"])
def test_full_figures_valid(name):
    c = figure(name)
    assert c.is_total() and c.palette_size == 6
    assert verify_incidence_coloring(c).valid


@pytest.mark.parametrize("name", ["F_partial", "G_partial", "Iprime_partial", "J_partial"])
def test_partial_figures_valid(name):
    assert verify_partial(figure(name)).valid


def test_printed_F_partial_has_a_typo():
    printed = figure("F_partial_as_printed")
    assert not verify_partial(printed).valid
    assert figure("F_partial") == induce_partial(named_pattern("F"))
    diff = np.argwhere(printed.colors != figure("F_partial").colors)
    assert [tuple(x) for x in diff] == [(1, 1, Direction.S), (1, 2, Direction.S)]


def test_G_partial_and_Iprime_partial_are_induced():
    assert figure("G_partial") == induce_partial(named_pattern("G"))
    assert figure("Iprime_partial") == induce_partial(repeat_rows(named_pattern("I"), [0], 6))


def test_Iprime_partial_forbidden_counts():
    c = figure("Iprime_partial")
    for j in range(6):
        a, b = Incidence(0, j, Direction.S), Incidence(2, j, Direction.N)
        fa, fb = forbidden_colors(c, a), forbidden_colors(c, b)
        assert len(fa) == len(fb) == 4
        assert len(fa & fb) == 3
        common = set(range(1, 7)) - fa - fb
        assert common
        filled = c.with_colors({a: min(common), b: min(common)})
        assert len(forbidden_colors(filled, Incidence(1, j, Direction.N))) == 5
        assert len(forbidden_colors(filled, Incidence(1, j, Direction.S))) == 5


def test_J_partial_forbidden_counts():
    c = figure("J_partial")
    for inc in c.unassigned():
        expected = 5 if inc.row == 1 else 4
        assert len(forbidden_colors(c, inc)) == expected


def test_unknown_names():
    with pytest.raises(KeyError):
        named_pattern("Z")
    with pytest.raises(KeyError):
        figure("J_partial9")


def test_parse_figure_rejects_ragged():
    with pytest.raises(ValueError):
        parse_figure("1 2 3\n1 2\n1 2 3")
    assert set(FIGURES) >= set(DRAWINGS)
