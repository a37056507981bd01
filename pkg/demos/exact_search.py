"""Exact small values by backtracking, with resumable budgets.

The search fixes edges in a fixed order, canonicalises colours on first use
and prunes as soon as a rectangle or p-set is complete. A budget stops the
run with a checkpoint that a later call resumes from the same node.
"""
from __future__ import annotations

from gridramsey.solvers import BudgetExhausted, exact_f, exact_G, exact_g


def small_values() -> None:
    for m, n in ((1, 4), (2, 2), (2, 4), (3, 3)):
        res = exact_g(m, n, 3)
        print(f"g({m},{n}) = {res.value}  nodes={res.stats.nodes}")
    print("G(1) =", exact_G(1, 4).value)
    for n, p, q in ((3, 3, 2), (4, 4, 6), (5, 3, 2)):
        print(f"f({n},{p},{q}) = {exact_f(n, p, q, 2, 7).value}")
    res = exact_G(2, 6, budget=20_000)
    print(f"G(2) within 20000 nodes: bracket {res.bracket}")


def resume() -> None:
    try:
        exact_g(3, 3, 3, budget=40)
    except BudgetExhausted as exc:
        print("stopped; checkpoint:")
        print("  " + exc.checkpoint.dumps().strip().replace("\n", "\n  "))
        print("resumed value:", exact_g(3, 3, 3, resume=exc.checkpoint).value)


if __name__ == "__main__":
    small_values()
    resume()
