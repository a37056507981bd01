"""Exhaustive and sampled property checks for the colourings in this package.

Every check returns ``None`` when the property holds and a witness object
otherwise; witnesses are re-checked against the input before being returned.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .colorings import ABSENT, GraphColoring, GridColoring, Rectangle, agreement_graph, subsets_array
from .graphs import (
    ChromaticResult,
    OddCycle,
    SimpleGraph,
    chromatic_number,
    independent_sets,
    is_bipartite,
    proper_coloring,
)

Progress = Callable[[int, int], None]

CHUNK = 1 << 16


@dataclass(frozen=True)
class PQViolation:
    """A p-set of vertices (0-based) whose k-subsets use fewer than q colours.

    ``degenerate`` marks witnesses found without any search, when even a
    rainbow colouring of the smaller set could not reach q colours.
    """

    vertices: tuple[int, ...]
    color_count: int
    colors: frozenset[int]
    degenerate: bool = False

    def __post_init__(self) -> None:
        if self.color_count != len(self.colors) or len(set(self.vertices)) != len(self.vertices):
            raise ValueError("inconsistent violation record")


@dataclass(frozen=True)
class ChromaticWitness:
    """Colour ids whose classes together need at least ``p`` colours."""

    colors: tuple[int, ...]
    result: ChromaticResult


# ---------------------------------------------------------------------------
# Grids


def find_alternating_rectangle(grid: GridColoring) -> Rectangle | None:
    """First alternating rectangle in order of ``(i, i', j, j')``, or ``None``."""
    upper = np.triu(np.ones((grid.n, grid.n), dtype=bool), k=1)
    for i in range(grid.m):
        for ip in range(i + 1, grid.m):
            col = grid.col[i, ip]
            hit = (grid.row[i] == grid.row[ip]) & (col[:, None] == col[None, :]) & upper
            if hit.any():
                j, jp = map(int, np.argwhere(hit)[0])
                rect = Rectangle(i, j, ip, jp)
                assert grid.is_alternating(rect)
                return rect
    return None


def verify_bipartite_rows(grid: GridColoring) -> tuple[int, int, OddCycle] | None:
    """Check that every pair of rows agrees on a bipartite set of edges.

    Returns ``(i, i', odd_cycle)`` for the first failing pair.
    """
    rows = rows_of(grid)
    for i in range(grid.m):
        for ip in range(i + 1, grid.m):
            res = is_bipartite(agreement_graph(rows[i], rows[ip]))
            if isinstance(res, OddCycle):
                return i, ip, res
    return None


def rows_of(grid: GridColoring) -> list[GraphColoring]:
    return [GraphColoring(grid.n, 2, grid.row[i].copy(), grid.table) for i in range(grid.m)]


# ---------------------------------------------------------------------------
# (p, q)-colourings


def _chunks(n: int, p: int, size: int) -> Iterator[np.ndarray]:
    it = combinations(range(n), p)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), p)


def _first_violation(c: GraphColoring, q: int, sets: np.ndarray, positions: np.ndarray):
    idx = tuple(sets[:, positions[:, t]] for t in range(positions.shape[1]))
    cols = c.colors[idx]
    complete = (cols != ABSENT).all(axis=1)
    ordered = np.sort(cols, axis=1)
    distinct = 1 + (np.diff(ordered, axis=1) != 0).sum(axis=1)
    bad = np.flatnonzero(complete & (distinct < q))
    if bad.size == 0:
        return None
    row = int(bad[0])
    colors = frozenset(int(x) for x in cols[row])
    return PQViolation(tuple(int(v) for v in sets[row]), len(colors), colors)


def verify_pq(
    c: GraphColoring,
    p: int,
    q: int,
    *,
    threads: int = 1,
    progress: Progress | None = None,
) -> PQViolation | None:
    """Check that every p-set spans at least q colours on its k-subsets.

    For partial colourings only p-sets whose k-subsets are all coloured are
    tested. The returned violation is the lexicographically first one.
    """
    k = c.k
    if not k + 1 <= p <= c.n:
        raise ValueError(f"need {k + 1} <= p <= {c.n}, got p={p}")
    if not 2 <= q <= math.comb(p, k):
        raise ValueError(f"need 2 <= q <= C(p,k) = {math.comb(p, k)}, got q={q}")
    positions = subsets_array(p, k)
    total = math.comb(c.n, p)
    check = lambda sets: _first_violation(c, q, sets, positions)  # noqa: E731
    chunks = _chunks(c.n, p, CHUNK)
    done = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while True:
            # windows of ``threads`` chunks, results consumed in input order
            window = list(islice(chunks, max(threads, 1)))
            if not window:
                return None
            hits = pool.map(check, window) if pool else map(check, window)
            for sets, hit in zip(window, hits):
                done += len(sets)
                if progress:
                    progress(done, total)
                if hit is not None:
                    return hit
    finally:
        if pool:
            pool.shutdown(wait=True)


# ---------------------------------------------------------------------------
# Chromatic (p, q)-colourings


class ClassIndex:
    """Per-colour adjacency bitmasks and edge lists of a graph colouring."""

    def __init__(self, c: GraphColoring) -> None:
        if c.k != 2:
            raise ValueError("colour classes as graphs need k = 2")
        self.n = c.n
        self.colors = c.used_colors()
        pairs = subsets_array(c.n, 2)
        vals = c.subset_colors()
        order = np.argsort(vals, kind="stable")
        size = len(c.table)
        counts = np.bincount(vals[vals != ABSENT], minlength=size)
        self.ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        keep = order[vals[order] != ABSENT]
        self.eu = pairs[keep, 0].copy()
        self.ev = pairs[keep, 1].copy()
        self.masks: list[list[int]] = []
        for cid in range(size):
            adj = [0] * c.n
            for u, v in zip(
                self.eu[self.ptr[cid] : self.ptr[cid + 1]].tolist(),
                self.ev[self.ptr[cid] : self.ptr[cid + 1]].tolist(),
            ):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            self.masks.append(adj)

    def union(self, color_ids: Iterable[int]) -> SimpleGraph:
        adj = [0] * self.n
        for cid in color_ids:
            for v, mask in enumerate(self.masks[cid]):
                adj[v] |= mask
        return SimpleGraph(self.n, tuple(adj))

    def first_fit_counts(self, subsets: np.ndarray) -> np.ndarray:
        """Colours used by first-fit on each union of classes (compiled kernel)."""
        from ._kernels import first_fit_class_unions

        subsets = np.ascontiguousarray(subsets, dtype=np.int64)
        return first_fit_class_unions(self.n, self.ptr, self.eu, self.ev, subsets)


def sample_color_subsets(
    palette: Sequence[int], size: int, count: int, seed: int
) -> list[tuple[int, ...]]:
    """``count`` uniformly random ``size``-subsets of ``palette``, reproducible from ``seed``.

    Each draw uses its own child of ``SeedSequence(seed)``, so draw ``i`` does
    not depend on how many draws are made or in which order they run.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    pal = np.asarray(sorted(palette))
    out = []
    for child in children:
        rng = np.random.default_rng(child)
        out.append(tuple(sorted(int(x) for x in rng.choice(pal, size=size, replace=False))))
    return out


def verify_chromatic_pq(
    c: GraphColoring,
    p: int,
    q: int,
    *,
    samples: int | None = None,
    seed: int = 0,
    progress: Progress | None = None,
) -> ChromaticWitness | None:
    """Check that every union of ``q-1`` colour classes is ``(p-1)``-colourable.

    ``samples=None`` tests all ``(q-1)``-subsets of the used colours,
    otherwise ``samples`` seeded random subsets.
    """
    index = ClassIndex(c)
    size = q - 1
    if size < 1:
        raise ValueError("q must be at least 2")
    if len(index.colors) < size:
        raise ValueError(f"palette has {len(index.colors)} colours, need at least {size}")
    if samples is not None and samples <= 0:
        raise ValueError("sample count must be positive")
    if samples is None:
        subsets: Iterable[tuple[int, ...]] = combinations(index.colors, size)
        total = math.comb(len(index.colors), size)
    else:
        subsets = sample_color_subsets(index.colors, size, samples, seed)
        total = samples
    for done, X in enumerate(subsets, 1):
        g = index.union(X)
        if proper_coloring(g, p - 1) is None:
            result = chromatic_number(g, g.n)
            assert result.chi is not None and result.chi >= p
            return ChromaticWitness(tuple(X), result)
        if progress and done % 256 == 0:
            progress(done, total)
    return None


# ---------------------------------------------------------------------------
# Slowly growing chromatic number of the digit-pair colouring


def slow_growth_bound(size: int) -> float:
    """``2 ** (3 * sqrt(s log2 s))`` for a colour set of size ``s >= 2``."""
    return 2.0 ** (3.0 * math.sqrt(size * math.log2(size)))


@dataclass
class SlowGrowthReport:
    """Summary of :func:`verify_chi_slow_grow`; ``failures`` lists offending colour sets."""

    exhaustive_checked: dict[int, int] = field(default_factory=dict)
    exhaustive_max_colors: dict[int, int] = field(default_factory=dict)
    sampled: int = 0
    sampled_max_ratio: float = 0.0
    independent_sets_checked: int = 0
    failures: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_chi_slow_grow(
    c: GraphColoring,
    *,
    exhaustive_sizes: Sequence[int] = (2, 3),
    samples: int = 1000,
    max_size: int = 8,
    seed: int = 0,
    progress: Progress | None = None,
) -> SlowGrowthReport:
    """Check the colour-union chromatic bound on a digit-pair colouring.

    Exhaustive sizes are swept with the compiled first-fit kernel; an upper
    bound within ``slow_growth_bound`` certifies the set. Sampled sets (sizes
    2..``max_size``, cycled) also get three checks from the independent-set
    argument on the auxiliary colour graph: every independent set's union is
    bipartite, and chi is at most the number of independent sets.
    """
    from .constructions.complete import auxiliary_color_graph

    index = ClassIndex(c)
    report = SlowGrowthReport()
    for size in exhaustive_sizes:
        combos = subsets_array(len(index.colors), size)
        palette = np.asarray(index.colors, dtype=np.int64)
        bound = slow_growth_bound(size)
        checked, worst = 0, 0
        for lo in range(0, len(combos), 1 << 18):
            block = palette[combos[lo : lo + (1 << 18)]]
            counts = index.first_fit_counts(block)
            if (counts < 0).any():
                raise AssertionError("first-fit kernel produced an improper colouring")
            for row in np.flatnonzero(counts > bound):
                report.failures.append(("bound", tuple(int(x) for x in block[row])))
            checked += len(block)
            worst = max(worst, int(counts.max()))
            if progress:
                progress(checked, len(combos))
        report.exhaustive_checked[size] = checked
        report.exhaustive_max_colors[size] = worst

    sizes = [2 + i % (max_size - 1) for i in range(samples)]
    children = np.random.SeedSequence(seed).spawn(samples)
    palette = np.asarray(index.colors)
    for size, child in zip(sizes, children):
        rng = np.random.default_rng(child)
        X = tuple(sorted(int(x) for x in rng.choice(palette, size=size, replace=False)))
        g = index.union(X)
        aux = auxiliary_color_graph(c, X)
        families = independent_sets(aux)
        bound = min(slow_growth_bound(size), len(families))
        coloring = proper_coloring(g, int(bound))
        if coloring is None:
            report.failures.append(("bound", X))
        else:
            report.sampled_max_ratio = max(report.sampled_max_ratio, (max(coloring) + 1) / slow_growth_bound(size))
        for family in families:
            if not family:
                continue
            sub = index.union(X[v] for v in family)
            if isinstance(is_bipartite(sub), OddCycle):
                report.failures.append(("independent-set", tuple(X[v] for v in family)))
            report.independent_sets_checked += 1
        report.sampled += 1
    return report
