"""Exact small values of g(m, n), G(r) and f_k(n, p, q) by pruned backtracking.

The search assigns colours edge by edge in a fixed scan order. A colour may
only be used once every smaller colour has appeared earlier in the scan, so
each colouring is visited once up to renaming of colours. Constraints are
checked as soon as their last edge is assigned (grids) or as soon as they can
no longer reach ``q`` colours (hypergraphs).

Searches are resumable: when the node budget runs out a
:class:`BudgetExhausted` carries a :class:`Checkpoint`, whose text form is::

    gridramsey-checkpoint 1
    problem grid <m> <n> <r>          | problem hyper <n> <k> <p> <q> <r>
    nodes <assignments tried so far>
    depth <length of the assign line>
    next <colour to try at position depth>
    assign <colour of scan edge 0> <colour of scan edge 1> ...

Colours are 0-based. ``loads(dumps(cp)) == cp`` and ``dumps(loads(s)) == s``
for every checkpoint text this module writes.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Callable, Sequence

import numpy as np

from .colorings import ColorTable, GraphColoring, GridColoring, subsets_array
from .verifiers import find_alternating_rectangle, verify_pq
from .witnesses import shelah_bound

DEFAULT_BUDGET = 10**8
BRUTE_FORCE_LIMIT = 10**7
CHECKPOINT_MAGIC = "gridramsey-checkpoint 1"


@dataclass(frozen=True)
class Checkpoint:
    """Position of an interrupted search: the current path and the next colour to try."""

    problem: tuple[int | str, ...]
    nodes: int
    next: int
    assign: tuple[int, ...]

    def dumps(self) -> str:
        lines = [
            CHECKPOINT_MAGIC,
            "problem " + " ".join(str(x) for x in self.problem),
            f"nodes {self.nodes}",
            f"depth {len(self.assign)}",
            f"next {self.next}",
            "assign" + "".join(f" {c}" for c in self.assign),
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Checkpoint:
        lines = text.split("\n")
        if lines[-1] == "":
            lines.pop()
        if len(lines) != 6 or lines[0] != CHECKPOINT_MAGIC:
            raise ValueError("not a version 1 checkpoint")
        fields = {}
        for line, key in zip(lines[1:], ("problem", "nodes", "depth", "next", "assign")):
            head, _, rest = line.partition(" ")
            if head != key:
                raise ValueError(f"expected {key!r} line, got {line!r}")
            fields[key] = rest.split()
        kind, *params = fields["problem"]
        assign = tuple(int(c) for c in fields["assign"])
        if int(fields["depth"][0]) != len(assign):
            raise ValueError("depth does not match the assign line")
        return cls(
            problem=(kind, *(int(x) for x in params)),
            nodes=int(fields["nodes"][0]),
            next=int(fields["next"][0]),
            assign=assign,
        )


class BudgetExhausted(RuntimeError):
    """The node budget ran out; ``checkpoint`` resumes the search where it stopped."""

    def __init__(self, checkpoint: Checkpoint, lower: int | None = None, upper: int | None = None):
        super().__init__(f"node budget exhausted after {checkpoint.nodes} nodes")
        self.checkpoint = checkpoint
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class Exhaustion:
    """Proof that no valid colouring exists for ``parameter``.

    ``nodes`` counts the assignments the search tried; ``brute_force`` is the
    number of raw colourings enumerated by the independent cross-check, or
    ``None`` when the raw space exceeded the enumeration limit.
    """

    parameter: int
    nodes: int
    brute_force: int | None


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    seconds: float


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exact search.

    ``value`` is ``None`` when the search could not decide; ``bracket`` then
    holds the proven ``(lower, upper)`` bounds (``upper`` may be ``None``).
    """

    value: int | None
    certificate: GraphColoring | GridColoring | None
    exhausted: tuple[Exhaustion, ...]
    stats: SearchStats
    bracket: tuple[int, int | None] = field(default=(0, None))
    interrupted: Checkpoint | None = None


# ---------------------------------------------------------------- problems


class _Problem:
    """Edges in scan order plus a pruning rule checked when an edge is assigned."""

    key: tuple[int | str, ...]
    edges: int
    r: int

    def ok(self, x: list[int], e: int) -> bool:
        raise NotImplementedError

    def valid(self, x: Sequence[int]) -> bool:
        """Full check of a complete assignment, independent of the pruning rule."""
        raise NotImplementedError

    def certificate(self, x: Sequence[int]):
        raise NotImplementedError


class GridProblem(_Problem):
    """Alternating-free r-colourings of the grid with ``m`` rows and ``n`` columns.

    Scan order: row edges row by row (pairs of columns in lexicographic
    order), then column edges column by column (pairs of rows likewise).
    """

    def __init__(self, m: int, n: int, r: int) -> None:
        if m < 1 or n < 1 or r < 1:
            raise ValueError("need m, n, r >= 1")
        self.m, self.n, self.r = m, n, r
        self.key = ("grid", m, n, r)
        col_pairs = list(combinations(range(n), 2))
        row_pairs = list(combinations(range(m), 2))
        self.row_index = {(i, j, jp): idx for idx, (i, (j, jp)) in enumerate(
            (i, pr) for i in range(m) for pr in col_pairs)}
        base = len(self.row_index)
        self.col_index = {(i, ip, j): base + idx for idx, (j, (i, ip)) in enumerate(
            (j, pr) for j in range(n) for pr in row_pairs)}
        self.edges = base + len(self.col_index)
        self.rects: list[tuple[int, int, int, int]] = []
        self.watch: list[list[tuple[int, int, int, int]]] = [[] for _ in range(self.edges)]
        for i, ip in row_pairs:
            for j, jp in col_pairs:
                quad = (
                    self.row_index[i, j, jp], self.row_index[ip, j, jp],
                    self.col_index[i, ip, j], self.col_index[i, ip, jp],
                )
                self.rects.append(quad)
                self.watch[max(quad)].append(quad)

    def ok(self, x: list[int], e: int) -> bool:
        for a, b, c, d in self.watch[e]:
            if x[a] == x[b] and x[c] == x[d]:
                return False
        return True

    def valid(self, x: Sequence[int]) -> bool:
        return not any(x[a] == x[b] and x[c] == x[d] for a, b, c, d in self.rects)

    def certificate(self, x: Sequence[int]) -> GridColoring:
        m, n = self.m, self.n
        rows = np.empty((m, comb(n, 2)), dtype=np.int64)
        for i in range(m):
            rows[i] = [x[self.row_index[i, j, jp]] for j, jp in combinations(range(n), 2)]
        cols = np.empty((comb(m, 2), n), dtype=np.int64)
        for idx, (i, ip) in enumerate(combinations(range(m), 2)):
            cols[idx] = [x[self.col_index[i, ip, j]] for j in range(n)]
        grid = GridColoring.from_values(m, n, rows, cols, ColorTable.range(self.r))
        assert find_alternating_rectangle(grid) is None
        return grid


class HyperProblem(_Problem):
    """r-colourings of the k-subsets of ``[n]`` in which every p-set sees at least q colours.

    Scan order is colex. A p-set is abandoned as soon as its distinct colours
    plus its unassigned edges fall short of ``q``.
    """

    def __init__(self, n: int, k: int, p: int, q: int, r: int) -> None:
        if k < 1 or not k + 1 <= p <= n or not 2 <= q <= comb(p, k) or r < 1:
            raise ValueError(f"need k+1 <= p <= n and 2 <= q <= C(p,k); got n={n} k={k} p={p} q={q}")
        self.n, self.k, self.p, self.q, self.r = n, k, p, q, r
        self.key = ("hyper", n, k, p, q, r)
        self.scan = sorted(combinations(range(n), k), key=lambda s: s[::-1])
        index = {s: e for e, s in enumerate(self.scan)}
        self.edges = len(self.scan)
        self.groups = [
            sorted(index[s] for s in combinations(ps, k)) for ps in combinations(range(n), p)
        ]
        self.watch: list[list[list[int]]] = [[] for _ in range(self.edges)]
        for g in self.groups:
            for e in g:
                self.watch[e].append(g)

    def ok(self, x: list[int], e: int) -> bool:
        q = self.q
        for g in self.watch[e]:
            seen = set()
            unassigned = 0
            for f in g:
                if f > e:
                    unassigned += 1
                else:
                    seen.add(x[f])
            if len(seen) + unassigned < q:
                return False
        return True

    def valid(self, x: Sequence[int]) -> bool:
        return all(len({x[f] for f in g}) >= self.q for g in self.groups)

    def certificate(self, x: Sequence[int]) -> GraphColoring:
        lex = {s: x[e] for e, s in enumerate(self.scan)}
        vals = np.array([lex[tuple(s)] for s in subsets_array(self.n, self.k).tolist()], dtype=np.int64)
        c = GraphColoring.from_values(self.n, self.k, vals, ColorTable.range(self.r))
        assert verify_pq(c, self.p, self.q) is None
        return c


def problem_from_key(key: Sequence[int | str]) -> _Problem:
    kind, *params = key
    if kind == "grid" and len(params) == 3:
        return GridProblem(*params)
    if kind == "hyper" and len(params) == 5:
        return HyperProblem(*params)
    raise ValueError(f"unknown problem {' '.join(map(str, key))!r}")


# ---------------------------------------------------------------- search


@dataclass(frozen=True)
class Decision:
    """Result of one fixed-r search: a colouring in scan order, or ``None`` after exhaustion."""

    assignment: tuple[int, ...] | None
    nodes: int


def decide(
    problem: _Problem,
    budget: int = DEFAULT_BUDGET,
    start: Checkpoint | None = None,
    progress: Callable[[int], None] | None = None,
) -> Decision:
    """Depth-first search for a valid colouring; first in scan-lexicographic order."""
    E, r = problem.edges, problem.r
    x = [-1] * E
    top = [-1] * (E + 1)  # top[d] = largest colour among x[:d]
    depth, nxt, nodes = 0, 0, 0
    if start is not None:
        if tuple(start.problem) != tuple(problem.key):
            raise ValueError("checkpoint belongs to a different problem")
        depth, nxt, nodes = len(start.assign), start.next, start.nodes
        for d, c in enumerate(start.assign):
            x[d] = c
            top[d + 1] = max(top[d], c)
    while True:
        if depth == E:
            return Decision(tuple(x), nodes)
        limit = min(r - 1, top[depth] + 1)
        c = nxt
        placed = False
        while c <= limit:
            if nodes >= budget:
                raise BudgetExhausted(Checkpoint(tuple(problem.key), nodes, c, tuple(x[:depth])))
            nodes += 1
            if progress is not None and nodes % 100_000 == 0:
                progress(nodes)
            x[depth] = c
            if problem.ok(x, depth):
                placed = True
                break
            c += 1
        if placed:
            top[depth + 1] = max(top[depth], c)
            depth += 1
            nxt = 0
            continue
        x[depth] = -1
        if depth == 0:
            return Decision(None, nodes)
        depth -= 1
        nxt = x[depth] + 1
        x[depth] = -1


def brute_force_exists(problem: _Problem) -> bool | None:
    """Unrestricted enumeration of all ``r**edges`` colourings; ``None`` above the limit."""
    if problem.r ** problem.edges > BRUTE_FORCE_LIMIT:
        return None
    return any(problem.valid(x) for x in product(range(problem.r), repeat=problem.edges))


def _exhaustion(problem: _Problem, parameter: int, nodes: int) -> Exhaustion:
    brute = brute_force_exists(problem)
    if brute:
        raise AssertionError(f"search exhausted {problem.key} but brute force found a colouring")
    return Exhaustion(parameter, nodes, None if brute is None else problem.r ** problem.edges)


def _minimum_colours(
    make: Callable[[int], _Problem], r_max: int, budget: int, progress, resume: Checkpoint | None
) -> SearchResult:
    t0 = time.perf_counter()
    proofs: list[Exhaustion] = []
    total = 0
    for r in range(1, r_max + 1):
        problem = make(r)
        start = resume if resume is not None and tuple(resume.problem) == problem.key else None
        try:
            res = decide(problem, budget - total, start=start, progress=progress)
        except BudgetExhausted as exc:
            raise BudgetExhausted(exc.checkpoint, lower=r, upper=None) from None
        total += res.nodes
        if res.assignment is not None:
            cert = problem.certificate(res.assignment)
            return SearchResult(r, cert, tuple(proofs), SearchStats(total, time.perf_counter() - t0), (r, r))
        proofs.append(_exhaustion(problem, r, res.nodes))
    return SearchResult(
        None, None, tuple(proofs), SearchStats(total, time.perf_counter() - t0), (r_max + 1, None)
    )


def exact_g(
    m: int, n: int, r_max: int, budget: int = DEFAULT_BUDGET, progress=None, resume: Checkpoint | None = None
) -> SearchResult:
    """Fewest colours of an alternating-free colouring of the ``m x n`` grid (searching up to ``r_max``).

    ``resume`` continues an interrupted search at the matching ``r``; smaller
    values of ``r`` are searched again.
    """
    return _minimum_colours(lambda r: GridProblem(m, n, r), r_max, budget, progress, resume)


def exact_f(
    n: int,
    p: int,
    q: int,
    k: int,
    r_max: int,
    budget: int = DEFAULT_BUDGET,
    progress=None,
    resume: Checkpoint | None = None,
) -> SearchResult:
    """Fewest colours of a (p, q)-colouring of the k-subsets of ``[n]`` (searching up to ``r_max``)."""
    return _minimum_colours(lambda r: HyperProblem(n, k, p, q, r), r_max, budget, progress, resume)


def exact_G(
    r: int, n_max: int, budget: int = DEFAULT_BUDGET, progress=None, resume: Checkpoint | None = None
) -> SearchResult:
    """Smallest ``n <= n_max`` where every r-colouring of the ``n x n`` grid has an alternating rectangle.

    The certificate is an alternating-free r-colouring of the largest grid
    below the answer. When ``n_max`` or the budget is reached first, ``value``
    is ``None`` and ``bracket`` holds the proven bounds, the upper one from
    the pigeonhole bound ``r**C(r+1,2) + 1``.
    """
    if r < 1 or n_max < 1:
        raise ValueError("need r >= 1 and n_max >= 1")
    t0 = time.perf_counter()
    total = 0
    cert = None
    upper = shelah_bound(r)
    lower = 1
    stopped = None
    for n in range(1, n_max + 1):
        problem = GridProblem(n, n, r)
        start = resume if resume is not None and tuple(resume.problem) == problem.key else None
        try:
            res = decide(problem, budget - total, start=start, progress=progress)
        except BudgetExhausted as exc:
            total, stopped = budget, exc.checkpoint
            break
        total += res.nodes
        if res.assignment is None:
            proof = _exhaustion(problem, n, res.nodes)
            stats = SearchStats(total, time.perf_counter() - t0)
            return SearchResult(n, cert, (proof,), stats, (n, n))
        cert = problem.certificate(res.assignment)
        lower = n + 1
    stats = SearchStats(total, time.perf_counter() - t0)
    return SearchResult(None, cert, (), stats, (lower, upper), stopped)
