"""Plain-text coloring files.

Every file starts with a header line, then optional palette comments, then
one edge per line. Vertices are 1-based and colours are 0-based dense ids::

    graph <n> <palette>             body: u v c
    hyper <n> <k> <palette>         body: v1 ... vk c
    grid <n> <m> <palette>          body: row i j j' c   /   col i i' j c
    partition <n> <t>               body: u v class

A grid has ``m`` rows and ``n`` columns; ``row i j j' c`` colours the edge
between ``(i, j)`` and ``(i, j')``, ``col i i' j`` the edge between
``(i, j)`` and ``(i', j)``. Lines ``# color <id> <value>`` (``# class`` for
partitions) give the structured value behind an id as a Python literal, with
sets written as ``{...}``; without them the value of id ``c`` is ``c``.
Uncoloured hyperedges are simply omitted. Fields are separated by single
spaces and lines end in LF; :func:`dumps` output parses back to an equal
object and re-serialises to the same text.
"""
from __future__ import annotations

import ast
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Any, Union

import numpy as np

from .colorings import ABSENT, ColorTable, EdgePartition, GraphColoring, GridColoring, subsets_array

Coloring = Union[GraphColoring, GridColoring, EdgePartition]


class FormatError(ValueError):
    """Malformed coloring file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def encode_value(value: Any) -> str:
    """Deterministic Python literal for a colour value (sets sorted, no spaces inside names)."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return repr(value)
    if isinstance(value, (set, frozenset)):
        if not value:
            return "set()"
        return "{" + ", ".join(sorted((encode_value(v) for v in value), key=_literal_key)) + "}"
    if isinstance(value, (tuple, list)):
        items = [encode_value(v) for v in value]
        return "(" + ", ".join(items) + ("," if len(items) == 1 else "") + ")"
    raise TypeError(f"cannot encode colour {value!r}")


def _literal_key(text: str):
    try:
        return (0, int(text), "")
    except ValueError:
        return (1, 0, text)


def decode_value(text: str) -> Any:
    try:
        raw = ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise FormatError(f"bad colour literal {text!r}") from exc
    return _freeze(raw)


def _freeze(v: Any) -> Any:
    if isinstance(v, (set, frozenset)):
        return frozenset(_freeze(x) for x in v)
    if isinstance(v, (list, tuple)):
        return tuple(_freeze(x) for x in v)
    return v


def _palette_lines(tag: str, values: tuple) -> list[str]:
    return [f"# {tag} {cid} {encode_value(v)}" for cid, v in enumerate(values)]


def _is_identity(values: tuple) -> bool:
    return all(isinstance(v, int) and v == i for i, v in enumerate(values))


def dumps(obj: Coloring) -> str:
    if isinstance(obj, GridColoring):
        lines = [f"grid {obj.n} {obj.m} {len(obj.table)}"]
        lines += _palette_lines("color", obj.table.values)
        rows = obj.row_values()
        pairs = subsets_array(obj.n, 2).tolist()
        for i in range(obj.m):
            lines += [f"row {i + 1} {j + 1} {jp + 1} {c}" for (j, jp), c in zip(pairs, rows[i].tolist())]
        cols = obj.col_values()
        for idx, (i, ip) in enumerate(combinations(range(obj.m), 2)):
            lines += [f"col {i + 1} {ip + 1} {j + 1} {c}" for j, c in enumerate(cols[idx].tolist())]
    elif isinstance(obj, EdgePartition):
        lines = [f"partition {obj.n} {obj.t}"]
        if obj.labels is not None:
            lines += _palette_lines("class", obj.labels)
        for (u, v), c in zip(subsets_array(obj.n, 2).tolist(), obj.class_values().tolist()):
            lines.append(f"{u + 1} {v + 1} {c}")
    elif isinstance(obj, GraphColoring):
        head = f"graph {obj.n}" if obj.k == 2 else f"hyper {obj.n} {obj.k}"
        lines = [f"{head} {len(obj.table)}"]
        lines += _palette_lines("color", obj.table.values)
        for s, c in zip(subsets_array(obj.n, obj.k).tolist(), obj.subset_colors().tolist()):
            if c != ABSENT:
                lines.append(" ".join(str(v + 1) for v in s) + f" {c}")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def _ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError as exc:
        raise FormatError(f"expected integers, got {' '.join(fields)!r}", lineno) from exc


def loads(text: str) -> Coloring:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty file")
    head = lines[0].split()
    kind = head[0] if head else ""
    expected = {"graph": 3, "hyper": 4, "grid": 4, "partition": 3}
    if kind not in expected or len(head) != expected[kind]:
        raise FormatError(f"bad header {lines[0]!r}", 1)
    params = _ints(head[1:], 1)
    if any(x < 0 for x in params):
        raise FormatError("negative size in header", 1)

    tag = "class" if kind == "partition" else "color"
    declared: dict[int, Any] = {}
    body: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            parts = line[1:].strip().split(" ", 2)
            if len(parts) == 3 and parts[0] == tag:
                cid = _ints([parts[1]], lineno)[0]
                if cid in declared:
                    raise FormatError(f"{tag} {cid} declared twice", lineno)
                declared[cid] = decode_value(parts[2])
            continue
        fields = line.split()
        if fields:
            body.append((lineno, fields))

    size = params[-1]
    if declared and sorted(declared) != list(range(size)):
        raise FormatError(f"{tag} declarations must cover ids 0..{size - 1}")
    values = tuple(declared[i] for i in range(size)) if declared else tuple(range(size))

    def check_id(c: int, lineno: int) -> int:
        if not 0 <= c < size:
            raise FormatError(f"{tag} id {c} outside 0..{size - 1}", lineno)
        return c

    if kind == "grid":
        n, m, _ = params
        return _load_grid(m, n, ColorTable(values), body, check_id)
    if kind == "partition":
        n, t = params
        vals = _load_uniform(n, 2, body, check_id, total=True)
        return EdgePartition.from_values(n, t, vals, values if declared else None)
    n, *rest = params
    k = 2 if kind == "graph" else rest[0]
    if k < 1:
        raise FormatError("hyperedge size must be positive", 1)
    vals = _load_uniform(n, k, body, check_id, total=kind == "graph")
    return GraphColoring.from_values(n, k, vals, ColorTable(values))


def _load_uniform(n: int, k: int, body, check_id, total: bool) -> np.ndarray:
    index = {tuple(s): e for e, s in enumerate(subsets_array(n, k).tolist())}
    vals = np.full(comb(n, k), ABSENT, dtype=np.int64)
    for lineno, fields in body:
        nums = _ints(fields, lineno)
        if len(nums) != k + 1:
            raise FormatError(f"expected {k} vertices and a colour", lineno)
        verts = nums[:k]
        if any(not 1 <= v <= n for v in verts):
            raise FormatError(f"vertex outside 1..{n}", lineno)
        key = tuple(sorted(v - 1 for v in verts))
        if len(set(key)) != k:
            raise FormatError("repeated vertex", lineno)
        e = index[key]
        if vals[e] != ABSENT:
            raise FormatError(f"edge {' '.join(map(str, verts))} coloured twice", lineno)
        vals[e] = check_id(nums[k], lineno)
    if total and (vals == ABSENT).any():
        missing = subsets_array(n, k)[int(np.flatnonzero(vals == ABSENT)[0])] + 1
        raise FormatError(f"edge {' '.join(map(str, missing.tolist()))} has no colour")
    return vals


def _load_grid(m: int, n: int, table: ColorTable, body, check_id) -> GridColoring:
    col_pairs = {tuple(s): e for e, s in enumerate(subsets_array(n, 2).tolist())}
    row_pairs = {tuple(s): e for e, s in enumerate(subsets_array(m, 2).tolist())}
    rows = np.full((m, len(col_pairs)), ABSENT, dtype=np.int64)
    cols = np.full((len(row_pairs), n), ABSENT, dtype=np.int64)
    for lineno, fields in body:
        if fields[0] not in ("row", "col") or len(fields) != 5:
            raise FormatError("expected 'row i j j' c' or 'col i i' j c'", lineno)
        a, b, d, c = _ints(fields[1:], lineno)
        if fields[0] == "row":
            i, pair, limit = a, (b, d), n
            if not 1 <= i <= m:
                raise FormatError(f"row outside 1..{m}", lineno)
        else:
            i, pair, limit = d, (a, b), m
            if not 1 <= i <= n:
                raise FormatError(f"column outside 1..{n}", lineno)
        lo, hi = sorted(pair)
        if not 1 <= lo < hi <= limit:
            raise FormatError("bad vertex pair", lineno)
        if fields[0] == "row":
            slot = (rows, i - 1, col_pairs[lo - 1, hi - 1])
        else:
            slot = (cols, row_pairs[lo - 1, hi - 1], i - 1)
        arr, x, y = slot
        if arr[x, y] != ABSENT:
            raise FormatError("edge coloured twice", lineno)
        arr[x, y] = check_id(c, lineno)
    if (rows == ABSENT).any() or (cols == ABSENT).any():
        raise FormatError("grid file leaves some edge uncoloured")
    return GridColoring.from_values(m, n, rows, cols, table)


def read(path: str | Path) -> Coloring:
    return loads(Path(path).read_text())


def write(obj: Coloring, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))
