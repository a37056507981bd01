"""Colourings and partitions of complete graphs built from digit expansions."""
from __future__ import annotations

from itertools import product
from typing import Any, Iterable, NamedTuple

import numpy as np

from ..colorings import ColorTable, EdgePartition, GraphColoring, subsets_array
from ..graphs import SimpleGraph

MAX_PRODUCT_VERTICES = 4096


def _log2_ceil(n: int) -> int:
    return (n - 1).bit_length()


def binary_coloring(n: int) -> GraphColoring:
    """First differing bit of ``x-1`` and ``y-1`` (least significant bit = colour 1).

    Colour values are the integers ``1 .. ceil(log2 n)`` and their ids are
    ``value - 1``.
    """
    if n < 2:
        raise ValueError("binary colouring needs n >= 2")
    t = _log2_ceil(n)
    pairs = subsets_array(n, 2)
    diff = pairs[:, 0] ^ pairs[:, 1]
    low = diff & -diff
    first_bit = np.log2(low).round().astype(np.int64)  # 0-based bit index
    return GraphColoring.from_values(n, 2, first_bit, ColorTable.range(t))


class MubayiColor(NamedTuple):
    """Colour ``({x_i, y_i}, a)`` where ``i`` is the first coordinate where the
    two digit vectors differ and ``a[j-1] = 1`` iff they differ at coordinate ``j``."""

    pair: frozenset
    a: tuple

    @property
    def iota(self) -> int:
        """1-based index of the first differing coordinate."""
        return self.a.index(1) + 1

    @property
    def eta1(self) -> int:
        return min(self.pair)

    @property
    def eta2(self) -> int:
        return max(self.pair)

    def a_at(self, j: int) -> int:
        """Agreement flag at 1-based coordinate ``j``."""
        return self.a[j - 1]


def as_mubayi(value: Any) -> MubayiColor:
    """Coerce a structured colour value to :class:`MubayiColor` or raise ``ValueError``."""
    try:
        pair, a = value
        pair = frozenset(pair)
        a = tuple(int(x) for x in a)
    except (TypeError, ValueError):
        raise ValueError(f"{value!r} is not a digit-pair colour") from None
    if not 1 <= len(pair) <= 2 or any(x not in (0, 1) for x in a) or 1 not in a:
        raise ValueError(f"{value!r} is not a digit-pair colour")
    return MubayiColor(pair, a)


def mubayi_parameters(n: int) -> tuple[int, int]:
    """``(t, m)`` with ``t`` least such that ``n <= 2**(t*t)`` and ``m = 2**t``."""
    t = 1
    while n > 2 ** (t * t):
        t += 1
    return t, 2**t


def mubayi_digits(n: int) -> np.ndarray:
    """Base-``m`` digits of ``x-1`` for each vertex, least significant first."""
    t, m = mubayi_parameters(n)
    x = np.arange(n)
    return np.stack([(x // m**i) % m for i in range(t)], axis=1)


def mubayi_coloring(n: int) -> GraphColoring:
    """The digit-pair / agreement-vector colouring of K_n.

    Ids are assigned in order of first appearance over edges in
    lexicographic order.
    """
    if n < 2:
        raise ValueError("digit-pair colouring needs n >= 2")
    digits = mubayi_digits(n)
    pairs = subsets_array(n, 2)
    du, dv = digits[pairs[:, 0]], digits[pairs[:, 1]]
    differ = du != dv
    first = differ.argmax(axis=1)
    rows = np.arange(len(pairs))
    table = ColorTable()
    vals = [
        table.intern(MubayiColor(frozenset((int(a), int(b))), tuple(int(x) for x in d)))
        for a, b, d in zip(du[rows, first], dv[rows, first], differ.astype(np.int64))
    ]
    return GraphColoring.from_values(n, 2, vals, table)


def product_partition(N: int, t: int) -> EdgePartition:
    """Partition of K_{N^t}: the class of ``{v, w}`` is ``(i, c(v_i, w_i))``.

    Vertices are the words of ``[N]^t`` in lexicographic order, ``i`` is the
    first (1-based) coordinate where ``v`` and ``w`` differ, and ``c`` is the
    digit-pair colouring of K_N. Classes are numbered by sorted ``(i, id)``.
    """
    if N < 2 or t < 1:
        raise ValueError("need N >= 2 and t >= 1")
    n = N**t
    if n > MAX_PRODUCT_VERTICES:
        raise ValueError(f"N**t = {n} exceeds the maximum of {MAX_PRODUCT_VERTICES} vertices")
    inner = mubayi_coloring(N)
    words = np.array(list(product(range(N), repeat=t)), dtype=np.int64)
    pairs = subsets_array(n, 2)
    wu, wv = words[pairs[:, 0]], words[pairs[:, 1]]
    first = (wu != wv).argmax(axis=1)
    rows = np.arange(len(pairs))
    inner_ids = inner.colors[wu[rows, first], wv[rows, first]]
    keys = first.astype(np.int64) * len(inner.table) + inner_ids
    uniq, classes = np.unique(keys, return_inverse=True)
    labels = tuple(
        (int(k) // len(inner.table) + 1, inner.table.value(int(k) % len(inner.table))) for k in uniq
    )
    return EdgePartition.from_values(n, len(uniq), classes, labels)


def auxiliary_color_graph(c: GraphColoring, X: Iterable[int]) -> SimpleGraph:
    """Graph on the colour ids of ``X`` (vertex ``i`` is the ``i``-th smallest id).

    Two colours with first-difference indices ``i1 <= i2`` are adjacent when
    the colour with index ``i1`` also differs at coordinate ``i2``.
    """
    ids = sorted(set(X))
    colors = [as_mubayi(c.table.value(x)) for x in ids]
    edges = []
    for s in range(len(colors)):
        for u in range(s + 1, len(colors)):
            lo, hi = colors[s], colors[u]
            if lo.iota > hi.iota:
                lo, hi = hi, lo
            if lo.a_at(hi.iota) == 1:
                edges.append((s, u))
    return SimpleGraph.from_edges(len(ids), edges)
