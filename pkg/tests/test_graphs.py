from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridramsey.graphs import (
    OddCycle,
    SimpleGraph,
    TwoColoring,
    chromatic_number,
    dsatur_coloring,
    independent_sets,
    is_bipartite,
    is_clique,
    max_clique,
    proper_coloring,
)

from . import oracles


@st.composite
def graphs(draw, max_n: int = 8):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return SimpleGraph.from_edges(n, chosen)


def petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + spokes + inner)


def hypercube(d: int) -> SimpleGraph:
    n = 1 << d
    return SimpleGraph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


class TestSimpleGraph:
    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            SimpleGraph.from_edges(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            SimpleGraph.from_edges(3, [(0, 3)])

    def test_duplicate_edges_collapse(self):
        g = SimpleGraph.from_edges(3, [(0, 1), (1, 0)])
        assert g.num_edges == 1

    def test_matrix_round_trip(self):
        g = petersen()
        assert SimpleGraph.from_matrix(g.to_matrix()) == g

    def test_complete_and_cycle(self):
        assert SimpleGraph.complete(5).num_edges == 10
        assert SimpleGraph.cycle(5).edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


class TestChromaticNumber:
    def test_empty_graph(self):
        assert chromatic_number(SimpleGraph.empty(5), 5).chi == 1

    def test_complete(self):
        assert chromatic_number(SimpleGraph.complete(4), 10).chi == 4

    def test_five_cycle(self):
        res = chromatic_number(SimpleGraph.cycle(5), 3)
        assert res.chi == 3 == oracles.chromatic_number(5, SimpleGraph.cycle(5).edges())

    def test_exceeds_limit(self):
        res = chromatic_number(SimpleGraph.complete(5), 4)
        assert res.exceeds_limit and res.chi is None and res.limit == 4

    def test_no_vertices(self):
        assert chromatic_number(SimpleGraph.empty(0), 1).chi == 0

    def test_limit_must_be_positive(self):
        with pytest.raises(ValueError):
            chromatic_number(SimpleGraph.empty(2), 0)

    def test_petersen(self):
        g = petersen()
        res = chromatic_number(g, 10)
        assert res.chi == 3
        assert g.is_proper(res.coloring) and len(set(res.coloring)) == 3

    @settings(max_examples=150, deadline=None)
    @given(graphs())
    def test_matches_brute_force(self, g):
        res = chromatic_number(g, max(g.n, 1))
        assert res.chi == oracles.chromatic_number(g.n, g.edges())
        if g.n:
            assert g.is_proper(res.coloring) and len(set(res.coloring)) == res.chi

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=9), st.data())
    def test_monotone_under_edge_addition(self, g, data):
        missing = [e for e in combinations(range(g.n), 2) if not g.has_edge(*e)]
        if not missing:
            return
        extra = data.draw(st.lists(st.sampled_from(missing), min_size=1, unique=True))
        bigger = g.union(SimpleGraph.from_edges(g.n, extra))
        limit = max(g.n, 1)
        assert chromatic_number(bigger, limit).chi >= chromatic_number(g, limit).chi


class TestBipartite:
    def test_single_edge(self):
        assert isinstance(is_bipartite(SimpleGraph.from_edges(2, [(0, 1)])), TwoColoring)

    def test_triangle(self):
        res = is_bipartite(SimpleGraph.complete(3))
        assert isinstance(res, OddCycle) and len(res.cycle) == 3

    def test_hypercube_parity(self):
        g = hypercube(4)
        res = is_bipartite(g)
        assert isinstance(res, TwoColoring)
        parity = [bin(v).count("1") % 2 for v in range(16)]
        assert all((res.sides[v] != res.sides[0]) == parity[v] for v in range(16))

    @settings(max_examples=150, deadline=None)
    @given(graphs(max_n=9))
    def test_iff_two_colourable(self, g):
        res = is_bipartite(g)
        assert isinstance(res, TwoColoring) == oracles.is_bipartite(g.n, g.edges())
        if isinstance(res, TwoColoring):
            assert g.is_proper(res.sides)
        else:
            cyc = res.cycle
            assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
            assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        chi = chromatic_number(g, 2)
        assert isinstance(res, TwoColoring) == chi.exact


class TestProperColoring:
    def test_triangle_two_colours(self):
        assert proper_coloring(SimpleGraph.complete(3), 2) is None

    def test_triangle_three_colours(self):
        assert proper_coloring(SimpleGraph.complete(3), 3) == (0, 1, 2)

    def test_petersen(self):
        col = proper_coloring(petersen(), 3)
        assert col is not None and petersen().is_proper(col) and max(col) < 3

    @settings(max_examples=100, deadline=None)
    @given(graphs(), st.integers(1, 4))
    def test_iff_contract(self, g, r):
        col = proper_coloring(g, r)
        chi = oracles.chromatic_number(g.n, g.edges())
        assert (col is not None) == (chi <= r)
        if col is not None:
            assert g.is_proper(col) and (not col or max(col) < r)


class TestHelpers:
    def test_dsatur_is_proper(self):
        g = petersen()
        assert g.is_proper(dsatur_coloring(g))

    def test_max_clique(self):
        g = SimpleGraph.complete(4).union(SimpleGraph.from_edges(4, []))
        assert sorted(max_clique(g)) == [0, 1, 2, 3]
        assert len(max_clique(petersen())) == 2

    def test_independent_sets_of_path(self):
        path = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
        assert sorted(independent_sets(path)) == [(), (0,), (0, 2), (1,), (2,)]

    def test_is_clique(self):
        assert is_clique(SimpleGraph.complete(4), [0, 2, 3])
        assert not is_clique(SimpleGraph.cycle(4), [0, 1, 2])
