from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridramsey.colorings import ColorTable, GraphColoring, GridColoring, Rectangle
from gridramsey.constructions import asymmetric_grid, binary_coloring, grid_to_partite3, mubayi_coloring
from gridramsey.graphs import OddCycle
from gridramsey.verifiers import (
    find_alternating_rectangle,
    sample_color_subsets,
    slow_growth_bound,
    verify_bipartite_rows,
    verify_chi_slow_grow,
    verify_chromatic_pq,
    verify_pq,
)

from . import oracles


def as_dict(c: GraphColoring) -> dict:
    return {s: c.value(*s) for s in combinations(range(c.n), c.k) if c.color(*s) >= 0}


class TestAlternatingRectangle:
    def test_all_one(self):
        assert find_alternating_rectangle(GridColoring.monochromatic(2, 2)) == Rectangle(0, 0, 1, 1)

    def test_two_row_colours(self):
        grid = GridColoring.from_values(2, 2, [[0], [1]], [[0, 0]], ColorTable.range(2))
        assert find_alternating_rectangle(grid) is None

    @pytest.mark.parametrize("seed", range(25))
    def test_random_3x9_always_alternating(self, seed):
        grid = GridColoring.random(3, 9, 2, np.random.default_rng(seed))
        assert find_alternating_rectangle(grid) is not None

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 5), st.integers(1, 3), st.integers(0, 2**32 - 1))
    def test_first_matches_oracle(self, m, n, r, seed):
        grid = GridColoring.random(m, n, r, np.random.default_rng(seed))
        expected = oracles.alternating_rectangles(m, n, grid.row_color, grid.col_color)
        got = find_alternating_rectangle(grid)
        assert (got.as_tuple() if got else None) == (expected[0] if expected else None)


class TestPQ:
    def test_rainbow(self):
        assert verify_pq(GraphColoring.rainbow(5, 3), 4, 3) is None

    def test_monochromatic(self):
        bad = verify_pq(GraphColoring.monochromatic(4), 3, 2)
        assert bad.vertices == (0, 1, 2) and bad.color_count == 1

    def test_mubayi_32(self):
        assert verify_pq(mubayi_coloring(32), 4, 3) is None

    def test_parameter_checks(self):
        c = GraphColoring.rainbow(5)
        with pytest.raises(ValueError):
            verify_pq(c, 2, 2)
        with pytest.raises(ValueError):
            verify_pq(c, 3, 4)
        with pytest.raises(ValueError):
            verify_pq(c, 6, 2)

    def test_partial_skips_uncoloured(self):
        grid = GridColoring.monochromatic(2, 2)
        h = grid_to_partite3(grid)
        bad = verify_pq(h, 4, 3)
        assert bad is not None and bad.vertices == (0, 1, 2, 3)
        assert verify_pq(grid_to_partite3(asymmetric_grid(4).take_rows(range(4))), 4, 3) is None

    @pytest.mark.parametrize("threads", [2, 3])
    def test_threads_same_answer(self, threads):
        c = GraphColoring.random(24, 2, 3, np.random.default_rng(9))
        assert verify_pq(c, 4, 3, threads=threads) == verify_pq(c, 4, 3)
        clean = mubayi_coloring(24)
        assert verify_pq(clean, 4, 3, threads=threads) is None

    @settings(max_examples=120, deadline=None)
    @given(st.integers(3, 10), st.integers(2, 3), st.integers(1, 4), st.integers(0, 2**32 - 1), st.data())
    def test_matches_naive(self, n, k, r, seed, data):
        if n <= k:
            return
        p = data.draw(st.integers(k + 1, min(n, k + 3)))
        from math import comb

        q = data.draw(st.integers(2, comb(p, k)))
        c = GraphColoring.random(n, k, r, np.random.default_rng(seed))
        expected = oracles.first_pq_violation(as_dict(c), n, k, p, q)
        got = verify_pq(c, p, q)
        assert (None if got is None else (got.vertices, got.color_count)) == expected


class TestChromaticPQ:
    def test_binary_classes_bipartite(self):
        assert verify_chromatic_pq(binary_coloring(16), 3, 2) is None

    def test_monochromatic_witness(self):
        w = verify_chromatic_pq(GraphColoring.monochromatic(4), 4, 2)
        assert w.colors == (0,) and w.result.chi == 4

    def test_sampled_needs_positive_count(self):
        with pytest.raises(ValueError):
            verify_chromatic_pq(binary_coloring(8), 3, 2, samples=0)

    def test_sampling_deterministic(self):
        a = sample_color_subsets(list(range(30)), 3, 20, seed=1)
        b = sample_color_subsets(list(range(30)), 3, 20, seed=1)
        assert list(a) == list(b)

    def test_mubayi_sampled(self):
        assert verify_chromatic_pq(mubayi_coloring(64), 4, 3, samples=200, seed=3) is None


class TestChiSlowGrow:
    def test_bound(self):
        assert slow_growth_bound(2) == pytest.approx(2 ** (3 * 2**0.5))

    def test_small_run(self):
        rep = verify_chi_slow_grow(mubayi_coloring(32), exhaustive_sizes=(2,), samples=30, max_size=5, seed=2)
        assert rep.ok and rep.sampled == 30 and rep.exhaustive_checked[2] == 62 * 61 // 2
        assert rep.independent_sets_checked > 0


class TestBipartiteRows:
    def test_asymmetric(self):
        assert verify_bipartite_rows(asymmetric_grid(6)) is None

    def test_triangle_agreement(self):
        grid = GridColoring.monochromatic(2, 3)
        i, ip, cyc = verify_bipartite_rows(grid)
        assert (i, ip) == (0, 1) and isinstance(cyc, OddCycle) and len(cyc.cycle) == 3
