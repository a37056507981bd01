"""Colouring the grid K_m x K_n without alternating rectangles.

A rectangle alternates when its two horizontal sides share a colour and its
two vertical sides share a colour. Rows can be chosen first; a grid exists
exactly when every pair of rows has an r-colourable agreement graph.
"""
from __future__ import annotations

import numpy as np

from gridramsey.colorings import ColorTable, EdgePartition, GraphColoring, GridColoring, agreement_graph
from gridramsey.constructions import (
    ChromaticObstruction,
    asymmetric_grid,
    grid_from_rows,
    product_partition,
    random_grid,
)
from gridramsey.graphs import chromatic_number
from gridramsey.verifiers import find_alternating_rectangle, verify_bipartite_rows


def random_colouring_fails() -> None:
    grid = GridColoring.random(4, 6, 2, np.random.default_rng(0))
    print("uniform 2-colouring of K_4 x K_6, first alternating rectangle:",
          find_alternating_rectangle(grid))


def rows_then_columns() -> None:
    table = ColorTable.range(3)
    rng = np.random.default_rng(5)
    rows = [GraphColoring.from_values(6, 2, rng.integers(0, 3, 15), table) for _ in range(3)]
    chis = [chromatic_number(agreement_graph(rows[a], rows[b]), 6).chi for a, b in ((0, 1), (0, 2), (1, 2))]
    print("agreement graph chromatic numbers:", chis)
    for r in (max(chis) - 1, max(chis)):
        try:
            grid = grid_from_rows(rows, r)
            print(f"  r={r}: grid built, alternating rectangle = {find_alternating_rectangle(grid)}")
        except ChromaticObstruction as exc:
            print(f"  r={r}: rows {exc.i + 1} and {exc.ip + 1} need more than {exc.r} column colours")


def from_partitions() -> None:
    part = product_partition(4, 2)
    print(f"product partition of K_16 into {part.t} classes")
    grid = random_grid(part, 4, 6, seed=3)
    if grid is None:
        print("  seed 3 produced a bad row pair at r=4")
    else:
        print(f"  random 6 x 16 grid, row colours {len(grid.row_palette())}, "
              f"clean = {find_alternating_rectangle(grid) is None}")
    singles = random_grid(EdgePartition.singletons(5), 3, 5, seed=0)
    print("  singleton partition on K_5, r=3:", "ok" if singles is not None else "failed")


def asymmetric() -> None:
    for r in (4, 10):
        grid = asymmetric_grid(r)
        print(f"asymmetric grid r={r}: {grid.m} x {grid.n}, {len(grid.row_palette())} row colours, "
              f"{len(grid.col_palette())} column colours, clean = {find_alternating_rectangle(grid) is None}, "
              f"odd row cycle = {verify_bipartite_rows(grid)}")


if __name__ == "__main__":
    random_colouring_fails()
    rows_then_columns()
    from_partitions()
    asymmetric()
