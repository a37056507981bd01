"""Edge colourings of complete (hyper)graphs and grid graphs.

All vertex indices are 0-based here. Colours are dense integer ids into a
:class:`ColorTable`, which keeps the structured value behind each id (an int,
a tuple, a frozenset pair, ...). Uncoloured edges of partial colourings hold
:data:`ABSENT`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .graphs import SimpleGraph

ABSENT = -1


def normalize_color(value: Any) -> Hashable:
    """Canonical hashable form: sets become frozensets, lists become tuples."""
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (set, frozenset)):
        return frozenset(normalize_color(v) for v in value)
    if isinstance(value, tuple) and hasattr(value, "_fields"):
        return type(value)(*(normalize_color(v) for v in value))
    if isinstance(value, (list, tuple)):
        return tuple(normalize_color(v) for v in value)
    raise TypeError(f"unsupported colour component {value!r}")


class ColorTable:
    """Interning table from structured colour values to dense ids ``0, 1, ...``."""

    def __init__(self, values: Iterable[Any] = ()) -> None:
        self._values: list[Hashable] = []
        self._index: dict[Hashable, int] = {}
        for v in values:
            self.intern(v)

    def intern(self, value: Any) -> int:
        key = normalize_color(value)
        cid = self._index.get(key)
        if cid is None:
            cid = len(self._values)
            self._values.append(key)
            self._index[key] = cid
        return cid

    def id_of(self, value: Any) -> int | None:
        return self._index.get(normalize_color(value))

    def value(self, cid: int) -> Hashable:
        return self._values[cid]

    @property
    def values(self) -> tuple[Hashable, ...]:
        return tuple(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, value: Any) -> bool:
        return normalize_color(value) in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ColorTable) and self._values == other._values

    def __repr__(self) -> str:
        return f"ColorTable({self._values!r})"

    @classmethod
    def range(cls, r: int, start: int = 1) -> ColorTable:
        """Table holding the integer colours ``start .. start + r - 1``."""
        return cls(range(start, start + r))


@lru_cache(maxsize=64)
def subsets_array(n: int, k: int) -> np.ndarray:
    """All k-subsets of ``range(n)`` as rows, in lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    count = comb(n, k)
    out = np.fromiter(
        (v for c in combinations(range(n), k) for v in c), dtype=np.int64, count=count * k
    )
    out = out.reshape(count, k)
    out.setflags(write=False)
    return out


def symmetric_array(n: int, k: int, values: np.ndarray) -> np.ndarray:
    """Dense ``(n,)*k`` array with ``values[s]`` at every ordering of subset ``s``.

    ``values`` follows the order of :func:`subsets_array`. Entries with a
    repeated index are :data:`ABSENT`.
    """
    subs = subsets_array(n, k)
    vals = np.asarray(values, dtype=np.int32)
    if vals.shape != (len(subs),):
        raise ValueError(f"expected {len(subs)} values, got shape {vals.shape}")
    out = np.full((n,) * k, ABSENT, dtype=np.int32)
    for perm in permutations(range(k)):
        out[tuple(subs[:, list(perm)].T)] = vals
    return out


@dataclass(frozen=True, eq=False)
class GraphColoring:
    """Colouring of the k-subsets of ``range(n)``; ``k = 2`` for graphs.

    ``colors`` is a dense symmetric array of shape ``(n,)*k``. A colouring is
    partial when some k-subsets carry :data:`ABSENT`.
    """

    n: int
    k: int
    colors: np.ndarray
    table: ColorTable = field(default_factory=ColorTable)

    def __post_init__(self) -> None:
        if self.colors.shape != (self.n,) * self.k:
            raise ValueError("colour array shape does not match (n,)*k")
        self.colors.setflags(write=False)

    @classmethod
    def from_values(
        cls, n: int, k: int, values: Sequence[int] | np.ndarray, table: ColorTable
    ) -> GraphColoring:
        """Build from colour ids listed in lexicographic k-subset order."""
        vals = np.asarray(values, dtype=np.int64)
        if vals.size and (vals.max() >= len(table) or vals.min() < ABSENT):
            raise ValueError("colour id outside the table")
        return cls(n, k, symmetric_array(n, k, vals), table)

    @classmethod
    def from_function(
        cls, n: int, k: int, fn: Callable[[tuple[int, ...]], Any], table: ColorTable | None = None
    ) -> GraphColoring:
        """Colour subset ``s`` (a sorted 0-based tuple) with ``fn(s)``; ``None`` leaves it absent."""
        table = ColorTable() if table is None else table
        vals = []
        for s in combinations(range(n), k):
            v = fn(s)
            vals.append(ABSENT if v is None else table.intern(v))
        return cls.from_values(n, k, vals, table)

    @classmethod
    def random(cls, n: int, k: int, r: int, rng: np.random.Generator) -> GraphColoring:
        """Uniform colouring with the integer colours ``1 .. r``."""
        vals = rng.integers(0, r, size=comb(n, k))
        return cls.from_values(n, k, vals, ColorTable.range(r))

    @classmethod
    def monochromatic(cls, n: int, k: int = 2, value: Any = 1) -> GraphColoring:
        table = ColorTable([value])
        return cls.from_values(n, k, np.zeros(comb(n, k), dtype=np.int64), table)

    @classmethod
    def rainbow(cls, n: int, k: int = 2) -> GraphColoring:
        count = comb(n, k)
        return cls.from_values(n, k, np.arange(count), ColorTable(range(1, count + 1)))

    def color(self, *vertices: int) -> int:
        return int(self.colors[tuple(vertices)])

    def value(self, *vertices: int) -> Hashable:
        return self.table.value(self.color(*vertices))

    def subset_colors(self) -> np.ndarray:
        """Colour ids in lexicographic k-subset order."""
        subs = subsets_array(self.n, self.k)
        return self.colors[tuple(subs.T)]

    @property
    def palette_size(self) -> int:
        return len(self.table)

    def used_colors(self) -> list[int]:
        vals = np.unique(self.subset_colors())
        return [int(v) for v in vals if v != ABSENT]

    @property
    def is_partial(self) -> bool:
        return bool((self.subset_colors() == ABSENT).any())

    def class_matrix(self, color_ids: Iterable[int]) -> np.ndarray:
        """Boolean adjacency of the graph formed by the given colour classes (k = 2)."""
        if self.k != 2:
            raise ValueError("colour classes as graphs need k = 2")
        ids = np.fromiter(color_ids, dtype=np.int32)
        return np.isin(self.colors, ids)

    def class_graph(self, color_ids: Iterable[int]) -> SimpleGraph:
        return SimpleGraph.from_matrix(self.class_matrix(color_ids))

    def same_classes(self, other: GraphColoring) -> bool:
        """Whether both colourings induce the same partition of the k-subsets."""
        if (self.n, self.k) != (other.n, other.k):
            return False
        a, b = self.subset_colors(), other.subset_colors()
        if ((a == ABSENT) != (b == ABSENT)).any():
            return False
        pairs = {(int(x), int(y)) for x, y in zip(a, b) if x != ABSENT}
        return len({x for x, _ in pairs}) == len(pairs) == len({y for _, y in pairs})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphColoring):
            return NotImplemented
        if (self.n, self.k) != (other.n, other.k):
            return False
        a = [self.table.value(c) if c != ABSENT else None for c in self.subset_colors()]
        b = [other.table.value(c) if c != ABSENT else None for c in other.subset_colors()]
        return a == b

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Rectangle:
    """Rectangle ``(i, j, i', j')`` of a grid graph, 0-based, ``i < ip`` and ``j < jp``."""

    i: int
    j: int
    ip: int
    jp: int

    def __post_init__(self) -> None:
        if not (0 <= self.i < self.ip and 0 <= self.j < self.jp):
            raise ValueError(f"invalid rectangle {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i, self.j, self.ip, self.jp)

    def one_based(self) -> tuple[int, int, int, int]:
        return (self.i + 1, self.j + 1, self.ip + 1, self.jp + 1)

    def __str__(self) -> str:
        return "({}, {}, {}, {})".format(*self.one_based())


@dataclass(frozen=True, eq=False)
class GridColoring:
    """Edge colouring of the grid graph on ``m`` rows and ``n`` columns.

    ``row[i, j, j']`` colours the edge between ``(i, j)`` and ``(i, j')``;
    ``col[i, i', j]`` colours the edge between ``(i, j)`` and ``(i', j)``.
    Both arrays are symmetric in the swapped pair and hold :data:`ABSENT`
    on the diagonal.
    """

    m: int
    n: int
    row: np.ndarray
    col: np.ndarray
    table: ColorTable = field(default_factory=ColorTable)

    def __post_init__(self) -> None:
        if self.row.shape != (self.m, self.n, self.n) or self.col.shape != (self.m, self.m, self.n):
            raise ValueError("row/column array shapes do not match the grid size")
        self.row.setflags(write=False)
        self.col.setflags(write=False)

    @classmethod
    def from_values(
        cls,
        m: int,
        n: int,
        row_values: np.ndarray,
        col_values: np.ndarray,
        table: ColorTable,
    ) -> GridColoring:
        """``row_values`` has shape ``(m, C(n,2))``, ``col_values`` shape ``(C(m,2), n)``.

        Pairs are listed in lexicographic order.
        """
        row_values = np.asarray(row_values, dtype=np.int64).reshape(m, comb(n, 2))
        col_values = np.asarray(col_values, dtype=np.int64).reshape(comb(m, 2), n)
        pairs_n = subsets_array(n, 2)
        pairs_m = subsets_array(m, 2)
        row = np.full((m, n, n), ABSENT, dtype=np.int32)
        row[:, pairs_n[:, 0], pairs_n[:, 1]] = row_values
        row[:, pairs_n[:, 1], pairs_n[:, 0]] = row_values
        col = np.full((m, m, n), ABSENT, dtype=np.int32)
        col[pairs_m[:, 0], pairs_m[:, 1], :] = col_values
        col[pairs_m[:, 1], pairs_m[:, 0], :] = col_values
        for arr in (row_values, col_values):
            if arr.size and (arr.min() < 0 or arr.max() >= len(table)):
                raise ValueError("colour id outside the table")
        return cls(m, n, row, col, table)

    @classmethod
    def random(cls, m: int, n: int, r: int, rng: np.random.Generator) -> GridColoring:
        """Uniform colouring of every edge with the integer colours ``1 .. r``."""
        rows = rng.integers(0, r, size=(m, comb(n, 2)))
        cols = rng.integers(0, r, size=(comb(m, 2), n))
        return cls.from_values(m, n, rows, cols, ColorTable.range(r))

    @classmethod
    def monochromatic(cls, m: int, n: int, value: Any = 1) -> GridColoring:
        rows = np.zeros((m, comb(n, 2)), dtype=np.int64)
        cols = np.zeros((comb(m, 2), n), dtype=np.int64)
        return cls.from_values(m, n, rows, cols, ColorTable([value]))

    def row_color(self, i: int, j: int, jp: int) -> int:
        return int(self.row[i, j, jp])

    def col_color(self, i: int, ip: int, j: int) -> int:
        return int(self.col[i, ip, j])

    def row_values(self) -> np.ndarray:
        pairs = subsets_array(self.n, 2)
        return self.row[:, pairs[:, 0], pairs[:, 1]]

    def col_values(self) -> np.ndarray:
        pairs = subsets_array(self.m, 2)
        return self.col[pairs[:, 0], pairs[:, 1], :]

    def row_palette(self) -> set[int]:
        return {int(v) for v in np.unique(self.row_values())}

    def col_palette(self) -> set[int]:
        return {int(v) for v in np.unique(self.col_values())}

    def used_colors(self) -> set[int]:
        return self.row_palette() | self.col_palette()

    def is_alternating(self, rect: Rectangle) -> bool:
        i, j, ip, jp = rect.as_tuple()
        return (
            self.row[i, j, jp] == self.row[ip, j, jp]
            and self.col[i, ip, j] == self.col[i, ip, jp]
        )

    def take_rows(self, rows: Sequence[int]) -> GridColoring:
        idx = np.asarray(rows, dtype=np.int64)
        return GridColoring(
            len(idx), self.n, self.row[idx].copy(), self.col[np.ix_(idx, idx)].copy(), self.table
        )

    def same_classes(self, other: GridColoring) -> bool:
        """Whether both grids colour their edges with the same partition into classes."""
        if (self.m, self.n) != (other.m, other.n):
            return False
        a = np.concatenate([self.row_values().ravel(), self.col_values().ravel()])
        b = np.concatenate([other.row_values().ravel(), other.col_values().ravel()])
        pairs = set(zip(a.tolist(), b.tolist()))
        return len({x for x, _ in pairs}) == len(pairs) == len({y for _, y in pairs})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridColoring):
            return NotImplemented
        if (self.m, self.n) != (other.m, other.n):
            return False
        va = self.table.values
        vb = other.table.values
        ra, rb = self.row_values(), other.row_values()
        ca, cb = self.col_values(), other.col_values()
        return [va[c] for c in ra.ravel()] == [vb[c] for c in rb.ravel()] and [
            va[c] for c in ca.ravel()
        ] == [vb[c] for c in cb.ravel()]

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class EdgePartition:
    """Partition of the edges of K_n into ``t`` (possibly empty) classes.

    ``class_of`` is a symmetric ``(n, n)`` array with :data:`ABSENT` on the
    diagonal. ``labels`` optionally names each class by a structured value.
    """

    n: int
    t: int
    class_of: np.ndarray
    labels: tuple[Hashable, ...] | None = None

    def __post_init__(self) -> None:
        if self.class_of.shape != (self.n, self.n):
            raise ValueError("class array must be n x n")
        vals = self.class_of[np.triu_indices(self.n, 1)]
        if vals.size and (vals.min() < 0 or vals.max() >= self.t):
            raise ValueError("class index outside [0, t)")
        if self.labels is not None and len(self.labels) != self.t:
            raise ValueError("need one label per class")
        self.class_of.setflags(write=False)

    @classmethod
    def from_values(cls, n: int, t: int, values: Sequence[int] | np.ndarray, labels=None) -> EdgePartition:
        return cls(n, t, symmetric_array(n, 2, np.asarray(values)), labels)

    @classmethod
    def from_coloring(cls, c: GraphColoring) -> EdgePartition:
        """Colour classes of a graph colouring, one class per table entry."""
        if c.k != 2 or c.is_partial:
            raise ValueError("need a total colouring of a graph")
        return cls(c.n, len(c.table), c.colors.copy(), c.table.values)

    @classmethod
    def singletons(cls, n: int) -> EdgePartition:
        """Every edge in its own class, numbered in lexicographic edge order."""
        return cls.from_values(n, comb(n, 2), np.arange(comb(n, 2)))

    def class_values(self) -> np.ndarray:
        pairs = subsets_array(self.n, 2)
        return self.class_of[pairs[:, 0], pairs[:, 1]]

    def classes(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.t)]
        for (u, v), c in zip(subsets_array(self.n, 2).tolist(), self.class_values().tolist()):
            out[c].append((u, v))
        return out

    def nonempty_count(self) -> int:
        return len(np.unique(self.class_values()))


def union_subgraph(p: EdgePartition, classes: Iterable[int]) -> SimpleGraph:
    """The graph on ``p.n`` vertices whose edges are the union of the given classes."""
    idx = sorted(set(int(c) for c in classes))
    if idx and (idx[0] < 0 or idx[-1] >= p.t):
        raise IndexError(f"class index out of range [0, {p.t})")
    return SimpleGraph.from_matrix(np.isin(p.class_of, idx))


def agreement_graph(c1: GraphColoring, c2: GraphColoring) -> SimpleGraph:
    """Edges on which two graph colourings agree; colours compare by value."""
    if c1.k != 2 or c2.k != 2:
        raise ValueError("agreement graphs are defined for graph colourings")
    if c1.n != c2.n:
        raise ValueError(f"colourings on {c1.n} and {c2.n} vertices")
    if c1.table is c2.table:
        same = c1.colors == c2.colors
    else:
        # translate ids of c2 into ids of c1; values c1 never uses map to -2
        trans = np.array(
            [-2 if (cid := c1.table.id_of(v)) is None else cid for v in c2.table.values] + [-3],
            dtype=np.int64,
        )
        same = c1.colors == trans[c2.colors]
    same &= c1.colors != ABSENT
    return SimpleGraph.from_matrix(same)
