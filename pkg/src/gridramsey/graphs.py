"""Simple graphs on dense vertex ids and the exact graph algorithms built on them.

Adjacency is stored as one Python ``int`` bitmask per vertex, which keeps the
colouring and clique searches below cheap for the graph sizes used in this
package (up to a few hundred vertices).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

import numpy as np


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected graph on vertices ``0 .. n-1`` with bitmask adjacency."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, mask in enumerate(self.adj):
            if mask >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if mask >> self.n:
                raise ValueError(f"vertex {v} has a neighbour outside [0, {self.n})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> SimpleGraph:
        """Build from a boolean adjacency matrix; only the upper triangle is read."""
        mat = np.asarray(matrix, dtype=bool)
        n = mat.shape[0]
        upper = np.triu(mat, k=1)
        sym = upper | upper.T
        adj = []
        for row in sym:
            packed = np.packbits(row, bitorder="little").tobytes()
            adj.append(int.from_bytes(packed, "little"))
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> SimpleGraph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def num_edges(self) -> int:
        return sum(mask.bit_count() for mask in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def to_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            mat[u, v] = mat[v, u] = True
        return mat

    def union(self, other: SimpleGraph) -> SimpleGraph:
        if other.n != self.n:
            raise ValueError("graphs have different vertex counts")
        return SimpleGraph(self.n, tuple(a | b for a, b in zip(self.adj, other.adj)))

    def is_proper(self, coloring: Sequence[int]) -> bool:
        if len(coloring) != self.n:
            return False
        return all(coloring[u] != coloring[v] for u, v in self.edges())


# ---------------------------------------------------------------------------
# Colouring results


@dataclass(frozen=True)
class ChromaticResult:
    """Outcome of :func:`chromatic_number`.

    ``chi`` and ``coloring`` are set when the chromatic number is at most
    ``limit``; otherwise both are ``None`` and the graph needs more than
    ``limit`` colours.
    """

    limit: int
    chi: int | None = None
    coloring: tuple[int, ...] | None = None

    @property
    def exact(self) -> bool:
        return self.chi is not None

    @property
    def exceeds_limit(self) -> bool:
        return self.chi is None


@dataclass(frozen=True)
class TwoColoring:
    sides: tuple[int, ...]


@dataclass(frozen=True)
class OddCycle:
    """Closed walk ``cycle[0] - cycle[1] - ... - cycle[-1] - cycle[0]`` of odd length."""

    cycle: tuple[int, ...]


BipartiteResult = Union[TwoColoring, OddCycle]


# ---------------------------------------------------------------------------
# Heuristics and bounds


def dsatur_coloring(g: SimpleGraph) -> list[int]:
    """Greedy saturation-degree colouring. Ties go to higher degree, then lower id."""
    n = g.n
    colors = [-1] * n
    forbidden = [0] * n
    uncolored = (1 << n) - 1
    degree = [g.degree(v) for v in range(n)]
    for _ in range(n):
        best, best_key = -1, (-1, -1)
        for v in _bits(uncolored):
            key = (forbidden[v].bit_count(), degree[v])
            if key > best_key:
                best, best_key = v, key
        free = ~forbidden[best]
        c = (free & -free).bit_length() - 1
        colors[best] = c
        uncolored &= ~(1 << best)
        for u in _bits(g.adj[best] & uncolored):
            forbidden[u] |= 1 << c
    return colors


def greedy_clique(g: SimpleGraph) -> list[int]:
    """Clique grown greedily from each vertex; the largest one found is returned."""
    best: list[int] = []
    for start in range(g.n):
        clique = [start]
        cand = g.adj[start]
        while cand:
            v = max(_bits(cand), key=lambda u: ((g.adj[u] & cand).bit_count(), -u))
            clique.append(v)
            cand &= g.adj[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def max_clique(g: SimpleGraph, node_budget: int = 200_000) -> list[int]:
    """Maximum clique by branch and bound with a greedy-colouring bound.

    If ``node_budget`` runs out the best clique found so far is returned, so
    the result is always a valid clique and a valid lower bound on chi.
    """
    best = greedy_clique(g)
    if g.n == 0:
        return best
    adj = g.adj
    nodes = 0

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # (vertex, colour class index) in increasing class order
        order: list[tuple[int, int]] = []
        k = 0
        rest = cand
        while rest:
            k += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                order.append((v, k))
                rest &= ~low
                avail &= ~low & ~adj[v]
        return order

    def expand(clique: list[int], cand: int) -> bool:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            return False
        order = color_bound(cand)
        for v, k in reversed(order):
            if len(clique) + k <= len(best):
                return True
            new_cand = cand & adj[v]
            clique.append(v)
            if new_cand:
                if not expand(clique, new_cand):
                    clique.pop()
                    return False
            elif len(clique) > len(best):
                best = sorted(clique)
            clique.pop()
            cand &= ~(1 << v)
        return True

    expand([], (1 << g.n) - 1)
    return best


# ---------------------------------------------------------------------------
# Exact colouring


def _k_coloring(g: SimpleGraph, k: int, clique: Sequence[int]) -> list[int] | None:
    """Find a proper colouring with at most ``k`` colours, or prove none exists.

    DSATUR branching. The vertices of ``clique`` are precoloured 0, 1, ...
    and a fresh colour is only ever tried as ``max used + 1``.
    """
    n = g.n
    if len(clique) > k:
        return None
    adj = g.adj
    colors = [-1] * n
    forbidden = [0] * n
    degree = [g.degree(v) for v in range(n)]
    uncolored = (1 << n) - 1
    for c, v in enumerate(clique):
        colors[v] = c
        uncolored &= ~(1 << v)
    for c, v in enumerate(clique):
        for u in _bits(adj[v] & uncolored):
            forbidden[u] |= 1 << c
    full = (1 << k) - 1

    def search(uncolored: int, used: int) -> bool:
        if not uncolored:
            return True
        best, best_key = -1, (-1, -1)
        for v in _bits(uncolored):
            sat = forbidden[v].bit_count()
            if sat >= k:
                return False
            key = (sat, degree[v])
            if key > best_key:
                best, best_key = v, key
        v = best
        limit = min(k, used + 1)
        options = ~forbidden[v] & ((1 << limit) - 1) & full
        rest = uncolored & ~(1 << v)
        nbrs = adj[v] & rest
        for c in _bits(options):
            bit = 1 << c
            changed = [u for u in _bits(nbrs) if not forbidden[u] & bit]
            for u in changed:
                forbidden[u] |= bit
            colors[v] = c
            if search(rest, max(used, c + 1)):
                return True
            for u in changed:
                forbidden[u] &= ~bit
        colors[v] = -1
        return False

    if search(uncolored, len(clique)):
        return colors
    return None


def _canonical(coloring: Sequence[int]) -> tuple[int, ...]:
    """Relabel colours by first appearance so results do not depend on search order."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in coloring)


def chromatic_number(g: SimpleGraph, limit: int) -> ChromaticResult:
    """Exact chromatic number when it is at most ``limit``.

    A DSATUR colouring gives the upper bound and a maximum clique the lower
    bound. The gap is closed by exhaustive search, so a returned ``chi`` is
    always certified minimal.
    """
    if limit < 1:
        raise ValueError("limit must be a positive integer")
    if g.n == 0:
        return ChromaticResult(limit, 0, ())
    if g.num_edges == 0:
        return ChromaticResult(limit, 1, (0,) * g.n)
    clique = max_clique(g)
    if len(clique) > limit:
        return ChromaticResult(limit)
    best = dsatur_coloring(g)
    best_k = max(best) + 1
    if best_k > limit:
        found = _k_coloring(g, limit, clique)
        if found is None:
            return ChromaticResult(limit)
        best, best_k = found, max(found) + 1
    while best_k > len(clique):
        found = _k_coloring(g, best_k - 1, clique)
        if found is None:
            break
        best, best_k = found, max(found) + 1
    return ChromaticResult(limit, best_k, _canonical(best))


def proper_coloring(g: SimpleGraph, r: int) -> tuple[int, ...] | None:
    """A proper colouring with at most ``r`` colours, or ``None`` when chi(g) > r.

    Greedy DSATUR is tried first; the exact search only runs when greedy
    needs more than ``r`` colours.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    if g.n == 0:
        return ()
    greedy = dsatur_coloring(g)
    if max(greedy) + 1 <= r:
        return _canonical(greedy)
    clique = greedy_clique(g)
    found = _k_coloring(g, r, clique)
    return None if found is None else _canonical(found)


def is_bipartite(g: SimpleGraph) -> BipartiteResult:
    """Two-colour by BFS from the lowest unvisited vertex, or return an odd cycle."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in _bits(g.adj[u]):
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    return OddCycle(_odd_cycle(parent, u, v))
    return TwoColoring(tuple(side))


def _odd_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    # u and v are adjacent, on the same BFS layer parity; join their tree paths.
    path_u = [u]
    while parent[path_u[-1]] != -1:
        path_u.append(parent[path_u[-1]])
    path_v = [v]
    while parent[path_v[-1]] != -1:
        path_v.append(parent[path_v[-1]])
    on_u = {x: i for i, x in enumerate(path_u)}
    for j, x in enumerate(path_v):
        if x in on_u:
            i = on_u[x]
            return tuple(path_u[: i + 1] + path_v[:j][::-1])
    raise AssertionError("BFS tree paths share no vertex")


def independent_sets(g: SimpleGraph) -> list[tuple[int, ...]]:
    """All independent sets (including the empty set), in order of discovery."""
    out: list[tuple[int, ...]] = []

    def grow(current: list[int], cand: int) -> None:
        out.append(tuple(current))
        for v in _bits(cand):
            current.append(v)
            grow(current, cand & ~((1 << (v + 1)) - 1) & ~g.adj[v])
            current.pop()

    grow([], (1 << g.n) - 1)
    return out


def is_clique(g: SimpleGraph, vertices: Sequence[int]) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(vertices, 2))
