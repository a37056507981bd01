"""Extracting the unavoidable structure that colour bounds promise.

When the grid is large enough relative to the palette, the pigeonhole
argument names an alternating rectangle. The step-down argument does the
same for complete hypergraphs, returning a p-set with too few colours.
"""
from __future__ import annotations

import numpy as np

from gridramsey.colorings import GraphColoring, GridColoring
from gridramsey.witnesses import PreconditionError, shelah_bound, shelah_witness, stepdown_bound, stepdown_witness


def pigeonhole() -> None:
    for r in (2, 3):
        n = shelah_bound(r)
        grid = GridColoring.random(r + 1, n, r, np.random.default_rng(r))
        rect = shelah_witness(grid, r)
        print(f"r={r}: {r + 1} x {n} grid, rectangle rows {rect.i + 1},{rect.ip + 1} "
              f"columns {rect.j + 1},{rect.jp + 1}")
    try:
        shelah_witness(GridColoring.random(3, 9, 3, np.random.default_rng(0)), 2)
    except PreconditionError as exc:
        print("three colours on a two-colour budget:", exc)


def step_down() -> None:
    for k, r, p, q in ((2, 2, 3, 2), (3, 2, 4, 3)):
        n = stepdown_bound(k, r, p, q)
        c = GraphColoring.random(n, k, r, np.random.default_rng(7))
        bad = stepdown_witness(c, r, p, q)
        print(f"k={k}, r={r}: n={n}, {p}-set {[v + 1 for v in bad.vertices]} "
              f"spans {bad.color_count} colour(s), degenerate = {bad.degenerate}")


if __name__ == "__main__":
    pigeonhole()
    step_down()
