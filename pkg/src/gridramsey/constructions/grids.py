"""Alternating-free grid colourings assembled from row colourings of K_n."""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from ..colorings import ColorTable, EdgePartition, GraphColoring, GridColoring, agreement_graph, union_subgraph
from ..graphs import TwoColoring, is_bipartite, proper_coloring
from ..verifiers import find_alternating_rectangle, rows_of
from .complete import binary_coloring


class ChromaticObstruction(Exception):
    """The agreement graph of rows ``i`` and ``i'`` (0-based) needs more than ``r`` colours."""

    def __init__(self, i: int, ip: int, r: int) -> None:
        super().__init__(f"rows {i + 1} and {ip + 1} agree on a graph with chromatic number > {r}")
        self.i, self.ip, self.r = i, ip, r


def _merged_rows(rows: Sequence[GraphColoring]) -> tuple[ColorTable, np.ndarray]:
    table = rows[0].table
    if all(row.table is table for row in rows):
        return table, np.stack([row.subset_colors() for row in rows])
    table = ColorTable()
    out = []
    for row in rows:
        trans = np.array([table.intern(v) for v in row.table.values], dtype=np.int64)
        out.append(trans[row.subset_colors()])
    return table, np.stack(out)


def grid_from_rows(rows: Sequence[GraphColoring], r: int) -> GridColoring:
    """Grid whose i-th row is ``rows[i]`` and whose columns use the colours ``1 .. r``.

    For each pair of rows the column edges between them are coloured by a
    proper colouring of the rows' agreement graph: two column edges sharing a
    colour never have equally coloured row edges between them. Raises
    :class:`ChromaticObstruction` when some agreement graph is not
    ``r``-colourable.
    """
    if not rows:
        raise ValueError("need at least one row")
    if r < 1:
        raise ValueError("r must be positive")
    n = rows[0].n
    if any(row.n != n or row.k != 2 for row in rows):
        raise ValueError("all rows must colour the same complete graph")
    m = len(rows)
    table, row_vals = _merged_rows(rows)
    col_ids = np.array([table.intern(c) for c in range(1, r + 1)], dtype=np.int64)
    col_vals = np.empty((comb(m, 2), n), dtype=np.int64)
    for idx, (i, ip) in enumerate(combinations(range(m), 2)):
        conflict = agreement_graph(rows[i], rows[ip])
        coloring = proper_coloring(conflict, r)
        if coloring is None:
            raise ChromaticObstruction(i, ip, r)
        col_vals[idx] = col_ids[list(coloring)]
    grid = GridColoring.from_values(m, n, row_vals, col_vals, table)
    rect = find_alternating_rectangle(grid)
    assert rect is None, f"assembled grid has alternating rectangle {rect}"
    return grid


def rows_from_grid(grid: GridColoring) -> list[GraphColoring]:
    """The colourings of K_n carried by each row, sharing the grid's colour table."""
    return rows_of(grid)


def random_grid(p: EdgePartition, r: int, m: int, seed: int) -> GridColoring | None:
    """Alternating-free grid with at least ``m`` rows from random class colourings.

    ``2m`` rows are drawn; row ``i`` gives every edge of class ``s`` the colour
    ``v_i[s]`` with ``v_i`` uniform in ``[r]^t``. Two rows agree exactly on the
    union of classes where their vectors coincide. Bad pairs (that union
    needs more than ``r`` colours) are scanned in lexicographic order and the
    later row of each still-intact bad pair is dropped. Returns ``None`` when
    fewer than ``m`` rows survive.
    """
    if r < 1 or m < 1:
        raise ValueError("need r >= 1 and m >= 1")
    rng = np.random.default_rng(seed)
    vectors = rng.integers(1, r + 1, size=(2 * m, p.t))
    alive = [True] * (2 * m)
    cache: dict[frozenset[int], bool] = {}
    for i, j in combinations(range(2 * m), 2):
        if not (alive[i] and alive[j]):
            continue
        agree = frozenset(np.flatnonzero(vectors[i] == vectors[j]).tolist())
        ok = cache.get(agree)
        if ok is None:
            ok = proper_coloring(union_subgraph(p, agree), r) is not None
            cache[agree] = ok
        if not ok:
            alive[j] = False
    survivors = [i for i in range(2 * m) if alive[i]]
    if len(survivors) < m:
        return None
    table = ColorTable.range(r)
    classes = p.class_values()
    rows = [
        GraphColoring.from_values(p.n, 2, vectors[i][classes] - 1, table) for i in survivors
    ]
    return grid_from_rows(rows, r)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def modular_sequences(p: int) -> list[tuple[int, ...]]:
    """The ``p*p`` progressions ``(a, a+b, ..., a+(p-1)b) mod p``, ordered by ``(a, b)``.

    Two distinct progressions agree in at most one coordinate.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [tuple((a + i * b) % p for i in range(p)) for a in range(p) for b in range(p)]


def asymmetric_prime(r: int) -> int:
    """Smallest prime ``p`` with ``r/2 <= p <= r`` and ``floor(r*r/4) <= 2**p``."""
    if r < 4:
        raise ValueError("the asymmetric construction needs r >= 4")
    for p in range((r + 1) // 2, r + 1):
        if is_prime(p) and r * r // 4 <= 2**p:
            return p
    raise ValueError(f"no prime in [{(r + 1) // 2}, {r}] with {r * r // 4} <= 2**p")


def asymmetric_grid(r: int) -> GridColoring:
    """Alternating-free grid with ``floor(r^2/4)`` rows, ``2^p`` columns, two column colours.

    Row ``i`` carries the ``i``-th progression ``B``; its edge ``{j, j'}`` gets
    colour ``B[t] + 1`` where ``t`` is the first differing bit of ``j`` and
    ``j'``. Any two rows agree only on edges split by one bit, a bipartite
    graph, whose BFS bipartition colours the column edges with ``1`` and ``2``.
    """
    p = asymmetric_prime(r)
    m, n = r * r // 4, 2**p
    seqs = np.array(modular_sequences(p)[:m], dtype=np.int64)
    bits = binary_coloring(n).subset_colors()  # 0-based first differing bit
    table = ColorTable.range(max(p, 2))
    row_vals = seqs[:, bits]
    rows = [GraphColoring.from_values(n, 2, row_vals[i], table) for i in range(m)]
    col_vals = np.empty((comb(m, 2), n), dtype=np.int64)
    for idx, (i, ip) in enumerate(combinations(range(m), 2)):
        res = is_bipartite(agreement_graph(rows[i], rows[ip]))
        if not isinstance(res, TwoColoring):
            raise AssertionError(f"rows {i + 1} and {ip + 1} agree on a non-bipartite graph")
        col_vals[idx] = res.sides
    grid = GridColoring.from_values(m, n, row_vals, col_vals, table)
    rect = find_alternating_rectangle(grid)
    assert rect is None, f"asymmetric grid has alternating rectangle {rect}"
    return grid
