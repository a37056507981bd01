"""Alternating-free grid colourings, (p, q)-colourings of hypergraphs, and tools to check them."""
from __future__ import annotations

from .colorings import (
    ABSENT,
    ColorTable,
    EdgePartition,
    GraphColoring,
    GridColoring,
    Rectangle,
    agreement_graph,
    union_subgraph,
)
from .graphs import SimpleGraph, chromatic_number, is_bipartite, proper_coloring
from .solvers import BudgetExhausted, Checkpoint, SearchResult, exact_f, exact_g, exact_G
from .verifiers import (
    PQViolation,
    find_alternating_rectangle,
    verify_bipartite_rows,
    verify_chi_slow_grow,
    verify_chromatic_pq,
    verify_pq,
)
from .witnesses import PreconditionError, shelah_witness, stepdown_bound, stepdown_witness

__version__ = "0.1.0"
