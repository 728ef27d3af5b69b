"""Optimal incidence colorings of toroidal grids ``T_{m,n} = C_m x C_n``."""

from __future__ import annotations

from .coloring import (
    UNASSIGNED,
    IncidenceColoring,
    PartialIncidenceColoring,
    Verdict,
    VertexColoring,
    forbidden_colors,
    verify_incidence_coloring,
    verify_partial,
    verify_vertex_coloring,
)
from .completion import CompletionBudget, CompletionResult, Outcome, complete, complete_with_repair
from .constructor import ConstructionTrace, construct, optimal_palette
from .exact import (
    ChromaticReport,
    SizeGuardError,
    exact_incidence_chromatic,
    exact_vertex_chromatic,
    regular_equivalence_check,
)
from .graph import Direction, Edge, GenericGraph, Incidence, TorusGrid, Vertex, incidences_adjacent, square
from .pattern import Pattern, QuasiPattern, glue, induce_incidence_coloring, induce_partial, repeat, tile

__version__ = "0.1.0"
