"""Compiled inner loops for the exhaustive colour-subset sweeps."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def first_fit_class_unions(n, ptr, eu, ev, subsets):
    """Colours used by first-fit (vertex order 0..n-1) on each union of colour classes.

    ``ptr/eu/ev`` list the edges of colour ``c`` at ``eu[ptr[c]:ptr[c+1]]``,
    ``ev[...]``. Row ``s`` of ``subsets`` names the colours of one union.
    Returns ``-1`` for a row if the produced colouring is not proper, which
    would indicate a bug rather than a property failure.
    """
    out = np.zeros(subsets.shape[0], dtype=np.int64)
    max_edges = 0
    for c in range(ptr.shape[0] - 1):
        max_edges = max(max_edges, ptr[c + 1] - ptr[c])
    cap = 2 * max_edges * subsets.shape[1]
    deg = np.zeros(n + 1, dtype=np.int64)
    start = np.zeros(n + 1, dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    nbr = np.zeros(cap, dtype=np.int64)
    color = np.zeros(n, dtype=np.int64)
    mark = np.zeros(n + 1, dtype=np.int64)
    stamp = 0
    for s in range(subsets.shape[0]):
        deg[:] = 0
        for t in range(subsets.shape[1]):
            c = subsets[s, t]
            for e in range(ptr[c], ptr[c + 1]):
                deg[eu[e]] += 1
                deg[ev[e]] += 1
        start[0] = 0
        for v in range(n):
            start[v + 1] = start[v] + deg[v]
            fill[v] = start[v]
        for t in range(subsets.shape[1]):
            c = subsets[s, t]
            for e in range(ptr[c], ptr[c + 1]):
                a = eu[e]
                b = ev[e]
                nbr[fill[a]] = b
                fill[a] += 1
                nbr[fill[b]] = a
                fill[b] += 1
        used = 0
        for v in range(n):
            stamp += 1
            for q in range(start[v], start[v + 1]):
                u = nbr[q]
                if u < v:
                    mark[color[u]] = stamp
            k = 0
            while mark[k] == stamp:
                k += 1
            color[v] = k
            if k + 1 > used:
                used = k + 1
        ok = True
        for t in range(subsets.shape[1]):
            c = subsets[s, t]
            for e in range(ptr[c], ptr[c + 1]):
                if color[eu[e]] == color[ev[e]]:
                    ok = False
        out[s] = used if ok else -1
    return out
