"""Edge colourings of complete graphs and what they avoid.

The binary colouring gives K_n no monochromatic triangle using only
ceil(log2 n) colours. The digit-pair colouring uses far more colours but
guarantees that every four vertices see at least three colours, and the
chromatic number of any handful of its colour classes stays small.
"""
from __future__ import annotations

from itertools import combinations

from gridramsey.colorings import EdgePartition, union_subgraph
from gridramsey.constructions import binary_coloring, mubayi_coloring
from gridramsey.graphs import chromatic_number
from gridramsey.verifiers import verify_chi_slow_grow, verify_chromatic_pq, verify_pq


def binary_demo(n: int = 32) -> None:
    c = binary_coloring(n)
    print(f"binary colouring of K_{n}: {len(c.used_colors())} colours")
    print("  monochromatic triangle:", verify_pq(c, 3, 2))
    part = EdgePartition.from_coloring(c)
    for J in [(0,), (0, 1), (1, 3, 4)]:
        chi = chromatic_number(union_subgraph(part, J), n).chi
        print(f"  classes {J}: chi = {chi} (bound 2^{len(J)} = {2 ** len(J)})")


def digit_pair_demo(n: int = 64) -> None:
    c = mubayi_coloring(n)
    print(f"digit-pair colouring of K_{n}: {len(c.used_colors())} colours")
    print("  4-set with fewer than 3 colours:", verify_pq(c, 4, 3))
    print("  colour pair whose union breaks (4,3):", verify_chromatic_pq(c, 4, 3))
    rep = verify_chi_slow_grow(c, exhaustive_sizes=(2,), samples=100, max_size=6, seed=1)
    print(f"  slow growth: ok={rep.ok}, pairs={rep.exhaustive_checked[2]}, "
          f"sampled={rep.sampled}, worst ratio={rep.sampled_max_ratio:.3f}")


def tiny_table(n: int = 5) -> None:
    c = binary_coloring(n)
    print(f"colour of each edge of K_{n} (1-based vertices):")
    for u, v in combinations(range(n), 2):
        print(f"  {u + 1}-{v + 1}: {c.table.values[c.colors[u, v]]}")


if __name__ == "__main__":
    tiny_table()
    binary_demo()
    digit_pair_demo()
