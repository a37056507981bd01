"""Witness finders that run pigeonhole arguments on a concrete colouring."""
from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .colorings import GraphColoring, GridColoring, Rectangle, subsets_array
from .verifiers import PQViolation


class PreconditionError(ValueError):
    """The input is too small (or uses too many colours) for the argument to apply."""


def shelah_bound(r: int) -> int:
    """Column count ``r**C(r+1, 2) + 1`` that forces an alternating rectangle."""
    return r ** comb(r + 1, 2) + 1


def shelah_witness(grid: GridColoring, r: int) -> Rectangle:
    """Alternating rectangle found by double pigeonhole on the first ``r+1`` rows.

    Columns restricted to those rows take at most ``r**C(r+1,2)`` colour
    patterns, so two columns ``j < j'`` match (the first repeat in column
    order). The ``r+1`` row edges between them then repeat a colour at rows
    ``i < i'`` (the first repeat in row order).
    """
    if r < 1:
        raise PreconditionError("r must be positive")
    need = shelah_bound(r)
    if grid.m < r + 1 or grid.n < need:
        raise PreconditionError(
            f"need at least {r + 1} rows and {need} columns, got {grid.m} x {grid.n}"
        )
    top = grid.take_rows(range(r + 1))
    if len(top.row_palette()) > r or len(top.col_palette()) > r:
        raise PreconditionError(f"rows 1..{r + 1} use more than {r} row or column colours")
    pairs = subsets_array(r + 1, 2)
    patterns = np.ascontiguousarray(top.col[pairs[:, 0], pairs[:, 1], :].T)
    seen: dict[bytes, int] = {}
    for jp in range(grid.n):
        j = seen.setdefault(patterns[jp].tobytes(), jp)
        if j != jp:
            break
    else:
        raise AssertionError("no two columns coloured alike")
    first_row: dict[int, int] = {}
    for ip in range(r + 1):
        i = first_row.setdefault(int(top.row[ip, j, jp]), ip)
        if i != ip:
            break
    else:
        raise AssertionError("no two rows coloured alike between the matched columns")
    rect = Rectangle(i, j, ip, jp)
    assert grid.is_alternating(rect)
    return rect


def stepdown_bound(k: int, r: int, p: int, q: int) -> int:
    """Vertex count from which every r-colouring of the k-subsets has a p-set with < q colours.

    Uses pigeonhole for ``k = 1`` and the recursive bound
    ``r ** C(T, k-1)`` otherwise, where ``T`` is the bound one uniformity
    lower with ``p-1`` (or ``p-1`` itself when ``q > C(p-1, k-1)``).
    """
    if k < 1 or r < 1:
        raise ValueError("need k >= 1 and r >= 1")
    if p < k + 1 or not 2 <= q <= comb(p, k):
        raise ValueError(f"need p >= k+1 and 2 <= q <= C(p,k); got k={k}, p={p}, q={q}")
    if k == 1:
        if q - 1 >= r:
            return p
        return p + (r - q + 1) * ((p - 1) // (q - 1))
    return r ** comb(_inner_size(k, r, p, q), k - 1)


def _degenerate(k: int, p: int, q: int) -> bool:
    return q > comb(p - 1, k - 1)


def _inner_size(k: int, r: int, p: int, q: int) -> int:
    return p - 1 if _degenerate(k, p, q) else stepdown_bound(k - 1, r, p - 1, q)


def _colors_on(c: GraphColoring, vertices) -> frozenset[int]:
    return frozenset(c.color(*s) for s in combinations(sorted(vertices), c.k))


def stepdown_witness(c: GraphColoring, r: int, p: int, q: int) -> PQViolation:
    """A p-set whose k-subsets use at most ``q-1`` colours.

    Builds nested sets ``X`` (growing one vertex at a time, always the least
    remaining candidate) and ``Y`` (candidates whose colours towards every
    ``(k-2)``-subset of ``X`` plus the newest vertex agree, keeping the
    largest such class, ties to the smallest member). On the final ``X`` the
    colour of a k-set with ``k-1`` vertices in ``X`` only depends on those
    ``k-1`` vertices; the resulting ``(k-1)``-uniform colouring is searched
    recursively and the answer is extended by one vertex of ``Y``.
    """
    k = c.k
    need = stepdown_bound(k, r, p, q)
    if c.n < need:
        raise PreconditionError(f"need at least {need} vertices, got {c.n}")
    used = c.used_colors()
    if len(used) > r:
        raise PreconditionError(f"colouring uses {len(used)} colours, more than r={r}")
    if k == 1:
        return _pigeonhole_points(c, p, q)

    size = _inner_size(k, r, p, q)
    X = list(range(k - 2))
    Y = np.arange(k - 2, c.n)
    while len(X) < size:
        if len(Y) == 0:
            raise AssertionError("candidate set ran out before the inner size was reached")
        x, rest = int(Y[0]), Y[1:]
        X.append(x)
        if len(rest) == 0:
            Y = rest
            continue
        profile = np.stack(
            [c.colors[tuple(e) + (x, rest)] for e in combinations(X[:-1], k - 2)], axis=1
        )
        _, inverse, counts = np.unique(profile, axis=0, return_inverse=True, return_counts=True)
        inverse = inverse.ravel()
        # largest class; among equals, the one whose least member comes first
        firsts = np.full(len(counts), len(rest))
        np.minimum.at(firsts, inverse, np.arange(len(rest)))
        best = min(range(len(counts)), key=lambda b: (-counts[b], firsts[b]))
        Y = rest[inverse == best]
    if len(Y) == 0:
        raise AssertionError("no vertex left to extend the inner witness")
    y = int(Y[0])

    subs = subsets_array(size, k - 1)
    X_arr = np.asarray(X)
    inner_vals = c.colors[tuple(X_arr[subs].T) + (np.full(len(subs), y),)]
    inner = GraphColoring.from_values(size, k - 1, inner_vals, c.table)
    if _degenerate(k, p, q):
        chosen, degenerate = list(X), True
    else:
        sub = stepdown_witness(inner, r, p - 1, q)
        chosen, degenerate = [X[v] for v in sub.vertices], sub.degenerate
    vertices = tuple(sorted(chosen + [y]))
    colors = _colors_on(c, vertices)
    assert len(colors) <= q - 1, "step-down witness failed re-verification"
    return PQViolation(vertices, len(colors), colors, degenerate)


def _pigeonhole_points(c: GraphColoring, p: int, q: int) -> PQViolation:
    # k = 1: the q-1 largest colour classes (ties to the earliest member) hold p points
    ids = c.colors
    classes: dict[int, list[int]] = {}
    for v, cid in enumerate(ids.tolist()):
        classes.setdefault(cid, []).append(v)
    ranked = sorted(classes.values(), key=lambda vs: (-len(vs), vs[0]))[: q - 1]
    pool = sorted(v for vs in ranked for v in vs)
    if len(pool) < p:
        raise AssertionError("pigeonhole failed to collect p points")
    vertices = tuple(pool[:p])
    colors = _colors_on(c, vertices)
    assert len(colors) <= q - 1
    return PQViolation(vertices, len(colors), colors)
