"""Triple systems where every few vertices see many colours.

A grid colouring becomes a colouring of the tripartite-like triple system on
rows plus columns, and alternating-freeness turns into the statement that
every two-row, two-column 4-set spans three colours. Doubling constructions
build on this to colour all triples of [n].
"""
from __future__ import annotations

from math import comb

import numpy as np

from gridramsey.colorings import EdgePartition, GridColoring
from gridramsey.constructions import f3_43_coloring, random_grid, f3_56_coloring, grid_to_partite3, partite3_to_grid
from gridramsey.verifiers import find_alternating_rectangle, verify_pq


def bijection() -> None:
    for seed in range(3):
        grid = GridColoring.random(3, 3, 2, np.random.default_rng(seed))
        h = grid_to_partite3(grid)
        print(f"seed {seed}: grid clean = {find_alternating_rectangle(grid) is None}, "
              f"triples (4,3) = {verify_pq(h, 4, 3) is None}, "
              f"round trip = {partite3_to_grid(h) == grid}")
    grid = random_grid(EdgePartition.singletons(3), 3, 3, seed=0)
    if grid is not None:
        grid = grid.take_rows(range(3))  # random_grid may keep extra rows
        h = grid_to_partite3(grid)
        print(f"rows-first grid: clean = {find_alternating_rectangle(grid) is None}, "
              f"triples (4,3) = {verify_pq(h, 4, 3) is None}")


def doubling() -> None:
    for n in (4, 8, 16):
        c = f3_43_coloring(n)
        print(f"f3-43 on {n} vertices: {len(c.used_colors())} colours over {comb(n, 3)} triples, "
              f"(4,3) holds = {verify_pq(c, 4, 3) is None}")
    c = f3_56_coloring(16)
    print(f"f3-56 on 16 vertices: {len(c.used_colors())} colours, (5,6) holds = {verify_pq(c, 5, 6) is None}")


if __name__ == "__main__":
    bijection()
    doubling()
