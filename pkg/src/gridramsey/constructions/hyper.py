"""3-uniform hypergraph colourings and their correspondence with grid colourings."""
from __future__ import annotations

from functools import lru_cache
from itertools import count
from typing import Callable

import numpy as np

from ..colorings import ABSENT, ColorTable, EdgePartition, GraphColoring, GridColoring, Rectangle, subsets_array
from ..verifiers import find_alternating_rectangle
from .complete import binary_coloring, mubayi_coloring
from .grids import random_grid

GridProvider = Callable[[int], GridColoring]

ROW_TAG, COL_TAG = 0, 1


class GridProviderError(ValueError):
    """A grid provider returned a grid of the wrong size or with an alternating rectangle."""

    def __init__(self, m: int, rectangle: Rectangle | None, message: str | None = None) -> None:
        super().__init__(message or f"grid for m={m} has alternating rectangle {rectangle}")
        self.m = m
        self.rectangle = rectangle


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def grid_to_partite3(grid: GridColoring) -> GraphColoring:
    """Colour the triples of ``[2n]`` meeting both halves from a square grid.

    Rows of the grid are the vertices ``0..n-1`` (side A), columns are
    ``n..2n-1`` (side B). Triple ``{i, j, j'}`` takes the colour of the row
    edge ``{(i,j), (i,j')}`` tagged ``(0, value)``; triple ``{i, i', j}`` the
    colour of the column edge ``{(i,j), (i',j)}`` tagged ``(1, value)``.
    Triples inside one side stay uncoloured.
    """
    if grid.m != grid.n:
        raise ValueError(f"need a square grid, got {grid.m} x {grid.n}")
    n = grid.n
    subs = subsets_array(2 * n, 3)
    in_a = (subs < n).sum(axis=1)
    table = ColorTable()
    row_ids = sorted(grid.row_palette())
    col_ids = sorted(grid.col_palette())
    row_trans = np.full(len(grid.table), ABSENT, dtype=np.int64)
    col_trans = np.full(len(grid.table), ABSENT, dtype=np.int64)
    for cid in row_ids:
        row_trans[cid] = table.intern((ROW_TAG, grid.table.value(cid)))
    for cid in col_ids:
        col_trans[cid] = table.intern((COL_TAG, grid.table.value(cid)))
    vals = np.full(len(subs), ABSENT, dtype=np.int64)
    one = in_a == 1
    s = subs[one]
    vals[one] = row_trans[grid.row[s[:, 0], s[:, 1] - n, s[:, 2] - n]]
    two = in_a == 2
    s = subs[two]
    vals[two] = col_trans[grid.col[s[:, 0], s[:, 1], s[:, 2] - n]]
    return GraphColoring.from_values(2 * n, 3, vals, table)


def partite3_to_grid(h: GraphColoring) -> GridColoring:
    """Inverse of :func:`grid_to_partite3`.

    Colour values tagged ``(0, v)`` / ``(1, v)`` on the matching kind of edge
    are unwrapped to ``v``; any other values are kept as they are.
    """
    if h.k != 3 or h.n % 2:
        raise ValueError("need a 3-uniform colouring on an even number of vertices")
    n = h.n // 2
    subs = subsets_array(h.n, 3)
    vals = h.subset_colors()
    in_a = (subs < n).sum(axis=1)
    partite = (in_a == 1) | (in_a == 2)
    if (vals[partite] == ABSENT).any() or (vals[~partite] != ABSENT).any():
        raise ValueError("colouring must colour exactly the triples meeting both halves")
    one, two = subs[in_a == 1], subs[in_a == 2]
    row_src = np.full((n, n, n), ABSENT, dtype=np.int64)
    row_src[one[:, 0], one[:, 1] - n, one[:, 2] - n] = vals[in_a == 1]
    col_src = np.full((n, n, n), ABSENT, dtype=np.int64)
    col_src[two[:, 0], two[:, 1], two[:, 2] - n] = vals[in_a == 2]
    pn = subsets_array(n, 2)
    row_vals = row_src[:, pn[:, 0], pn[:, 1]]
    col_vals = col_src[pn[:, 0], pn[:, 1], :]

    def tagged(cid: int, tag: int) -> bool:
        v = h.table.value(cid)
        return isinstance(v, tuple) and len(v) == 2 and v[0] == tag

    unwrap = all(tagged(c, ROW_TAG) for c in np.unique(row_vals)) and all(
        tagged(c, COL_TAG) for c in np.unique(col_vals)
    )
    table = ColorTable()
    trans = {}
    for cid in sorted(set(np.unique(row_vals).tolist()) | set(np.unique(col_vals).tolist())):
        v = h.table.value(cid)
        trans[cid] = table.intern(v[1] if unwrap else v)
    lookup = np.vectorize(trans.__getitem__, otypes=[np.int64])
    return GridColoring.from_values(n, n, lookup(row_vals), lookup(col_vals), table)


def default_grid_provider(seed: int = 0) -> GridProvider:
    """Square alternating-free grids from random class colourings of the binary partition.

    For each size the number of colours starts at 2 and grows until one of a
    few seeds succeeds; results are cached per size.
    """

    @lru_cache(maxsize=None)
    def provide(m: int) -> GridColoring:
        if m == 1:
            return GridColoring.monochromatic(1, 1)
        partition = EdgePartition.from_coloring(binary_coloring(m))
        for r in count(2):
            for attempt in range(8):
                grid = random_grid(partition, r, m, seed + attempt)
                if grid is not None:
                    return grid.take_rows(range(m))
        raise AssertionError("unreachable")

    return provide


def _checked_grid(provider: GridProvider, m: int) -> GridColoring:
    grid = provider(m)
    if (grid.m, grid.n) != (m, m):
        raise GridProviderError(m, None, f"provider returned a {grid.m} x {grid.n} grid for m={m}")
    rect = find_alternating_rectangle(grid)
    if rect is not None:
        raise GridProviderError(m, rect)
    return grid


def f3_43_coloring(n: int, grid_provider: GridProvider | None = None) -> GraphColoring:
    """A colouring of the triples of ``[n]`` in which every 4-set sees at least 3 colours.

    ``n`` must be a power of two. Sizes up to 4 are rainbow. For ``n = 2m``
    both halves reuse the colouring of size ``m`` and a triple meeting both
    halves gets ``(n, tag, grid colour, binary colour)``: the grid colour of the
    corresponding edge of the ``m x m`` grid (tag 0 for row edges, 1 for
    column edges) and the binary colour of its two vertices on the same side.
    """
    if not _is_power_of_two(n):
        raise ValueError(f"n must be a power of two, got {n}")
    provider = grid_provider or default_grid_provider()
    return _f3_43(n, provider)


def _f3_43(n: int, provider: GridProvider) -> GraphColoring:
    if n <= 4:
        size = len(subsets_array(n, 3))
        return GraphColoring.from_values(
            n, 3, np.arange(size), ColorTable((0, rank) for rank in range(size))
        )
    m = n // 2
    inner = _f3_43(m, provider)
    grid = _checked_grid(provider, m)
    cb = binary_coloring(m)
    table = ColorTable(inner.table.values)

    def color(s: tuple[int, ...]):
        a = [x for x in s if x < m]
        b = [x - m for x in s if x >= m]
        if len(a) == 3:
            return inner.value(*a)
        if len(b) == 3:
            return inner.value(*b)
        if len(a) == 1:
            (i,), (j, jp) = a, b
            return (n, ROW_TAG, grid.table.value(grid.row_color(i, j, jp)), cb.value(j, jp))
        (i, ip), (j,) = a, b
        return (n, COL_TAG, grid.table.value(grid.col_color(i, ip, j)), cb.value(i, ip))

    return GraphColoring.from_function(n, 3, color, table)


def f3_56_coloring(n: int, grid_provider: GridProvider | None = None) -> GraphColoring:
    """A colouring of the triples of ``[n]`` in which every 5-set sees at least 6 colours.

    The colour of ``{u, v, w}`` is the tuple of: its colour under
    :func:`f3_43_coloring`; the first bit ``i`` (1-based, least significant
    first) where the three labels ``x-1`` are not all equal; the bit of the
    odd one out at ``i``; and the digit-pair colour of the other two.
    """
    if not _is_power_of_two(n):
        raise ValueError(f"n must be a power of two, got {n}")
    c1 = f3_43_coloring(n, grid_provider)
    if n < 3:
        return GraphColoring.from_function(n, 3, lambda s: None)
    cm = mubayi_coloring(n)

    def color(s: tuple[int, ...]):
        u, v, w = s
        spread = (u ^ v) | (u ^ w)
        i = (spread & -spread).bit_length() - 1
        bu, bv, bw = (u >> i) & 1, (v >> i) & 1, (w >> i) & 1
        if bu == bv:
            odd, pair = w, (u, v)
        elif bu == bw:
            odd, pair = v, (u, w)
        else:
            odd, pair = u, (v, w)
        return (c1.value(u, v, w), i + 1, (odd >> i) & 1, cm.value(*pair))

    return GraphColoring.from_function(n, 3, color)
