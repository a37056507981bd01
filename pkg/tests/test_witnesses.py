from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from gridramsey.colorings import ColorTable, GraphColoring, GridColoring, Rectangle
from gridramsey.witnesses import (
    PreconditionError,
    shelah_bound,
    shelah_witness,
    stepdown_bound,
    stepdown_witness,
)


class TestShelah:
    def test_bound(self):
        assert [shelah_bound(r) for r in (1, 2, 3)] == [2, 9, 730]

    def test_r1(self):
        assert shelah_witness(GridColoring.monochromatic(2, 2), 1) == Rectangle(0, 0, 1, 1)

    @pytest.mark.parametrize("r,m,n", [(1, 2, 2), (2, 3, 9), (3, 4, 730)])
    def test_random(self, r, m, n):
        for seed in range(20):
            grid = GridColoring.random(m, n, r, np.random.default_rng(seed))
            assert grid.is_alternating(shelah_witness(grid, r))

    def test_extra_rows_ignored(self):
        grid = GridColoring.random(6, 9, 2, np.random.default_rng(0))
        rect = shelah_witness(grid, 2)
        assert rect.ip <= 2

    def test_too_small(self):
        with pytest.raises(PreconditionError):
            shelah_witness(GridColoring.random(3, 8, 2, np.random.default_rng(0)), 2)
        with pytest.raises(PreconditionError):
            shelah_witness(GridColoring.random(2, 9, 2, np.random.default_rng(0)), 2)

    def test_too_many_colours(self):
        with pytest.raises(PreconditionError):
            shelah_witness(GridColoring.random(3, 9, 3, np.random.default_rng(1)), 2)


class TestStepdownBound:
    def test_examples(self):
        assert stepdown_bound(1, 2, 3, 2) == 5
        assert stepdown_bound(2, 2, 3, 2) == 8
        assert stepdown_bound(2, 2, 3, 3) == 4
        assert stepdown_bound(3, 2, 4, 3) == 64

    def test_large_q_pigeonhole(self):
        assert stepdown_bound(1, 2, 4, 3) == 4

    def test_ranges(self):
        with pytest.raises(ValueError):
            stepdown_bound(2, 2, 2, 2)
        with pytest.raises(ValueError):
            stepdown_bound(2, 2, 3, 4)


class TestStepdownWitness:
    def test_points(self):
        c = GraphColoring.from_values(5, 1, [0, 1, 0, 1, 1], ColorTable.range(2))
        bad = stepdown_witness(c, 2, 3, 2)
        assert bad.vertices == (1, 3, 4) and bad.color_count == 1

    def test_triangles(self):
        for seed in range(40):
            c = GraphColoring.random(8, 2, 2, np.random.default_rng(seed))
            bad = stepdown_witness(c, 2, 3, 2)
            assert len(bad.vertices) == 3
            assert len({c.color(u, v) for u, v in combinations(bad.vertices, 2)}) == 1
            assert not bad.degenerate

    def test_hypergraph(self):
        for seed in range(10):
            c = GraphColoring.random(64, 3, 2, np.random.default_rng(seed))
            bad = stepdown_witness(c, 2, 4, 3)
            assert len({c.color(*s) for s in combinations(bad.vertices, 3)}) <= 2
            assert bad.degenerate  # the inner level has q > C(p-1, k-1)

    def test_larger_than_bound(self):
        c = GraphColoring.random(12, 2, 2, np.random.default_rng(1))
        bad = stepdown_witness(c, 2, 3, 2)
        assert bad.color_count == 1

    def test_too_small(self):
        with pytest.raises(PreconditionError, match="8"):
            stepdown_witness(GraphColoring.random(7, 2, 2, np.random.default_rng(0)), 2, 3, 2)

    def test_too_many_colours(self):
        with pytest.raises(PreconditionError):
            stepdown_witness(GraphColoring.rainbow(8), 2, 3, 2)
