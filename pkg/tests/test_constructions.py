from __future__ import annotations

from itertools import combinations
from math import ceil, comb, log2

import numpy as np
import pytest

from gridramsey.colorings import ABSENT, ColorTable, EdgePartition, GraphColoring, GridColoring
from gridramsey.constructions import (
    ChromaticObstruction,
    GridProviderError,
    MubayiColor,
    as_mubayi,
    asymmetric_grid,
    asymmetric_prime,
    auxiliary_color_graph,
    binary_coloring,
    default_grid_provider,
    f3_43_coloring,
    f3_56_coloring,
    grid_from_rows,
    grid_to_partite3,
    modular_sequences,
    mubayi_coloring,
    mubayi_parameters,
    partite3_to_grid,
    product_partition,
    random_grid,
    rows_from_grid,
)
from gridramsey.graphs import OddCycle, TwoColoring, chromatic_number, independent_sets, is_bipartite
from gridramsey.colorings import agreement_graph, union_subgraph
from gridramsey.verifiers import find_alternating_rectangle, verify_pq

from . import oracles

# palette sizes of the digit-pair colouring, computed by oracles.mubayi_color
MUBAYI_PALETTE = {2: 1, 4: 6, 16: 18, 32: 62, 64: 84, 128: 169, 512: 196}


class TestBinary:
    def test_two_vertices(self):
        c = binary_coloring(2)
        assert c.value(0, 1) == 1 and len(c.used_colors()) == 1

    def test_four_vertices(self):
        c = binary_coloring(4)
        got = {(u + 1, v + 1): c.value(u, v) for u, v in combinations(range(4), 2)}
        assert got == {(1, 2): 1, (1, 3): 2, (1, 4): 1, (2, 3): 1, (2, 4): 2, (3, 4): 1}

    @pytest.mark.parametrize("n", [2, 3, 5, 17, 33, 64])
    def test_matches_oracle(self, n):
        c = binary_coloring(n)
        for u, v in combinations(range(n), 2):
            assert c.value(u, v) == oracles.binary_color(u + 1, v + 1)

    def test_palette_64(self):
        assert len(binary_coloring(64).used_colors()) == 6

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            binary_coloring(1)


class TestMubayi:
    def test_small_example(self):
        c = mubayi_coloring(4)
        assert mubayi_parameters(4) == (2, 4)
        assert c.value(0, 1) == (frozenset({0, 1}), (1, 0))
        assert len(c.used_colors()) == 6

    def test_two_vertices(self):
        c = mubayi_coloring(2)
        assert c.value(0, 1) == (frozenset({0, 1}), (1,))

    @pytest.mark.parametrize("n", sorted(MUBAYI_PALETTE))
    def test_palette(self, n):
        c = mubayi_coloring(n)
        assert len(c.used_colors()) == MUBAYI_PALETTE[n]
        t, m = mubayi_parameters(n)
        assert len(c.used_colors()) <= m * m * 2**t

    @pytest.mark.parametrize("n", [5, 16, 20])
    def test_matches_oracle(self, n):
        c = mubayi_coloring(n)
        for u, v in combinations(range(n), 2):
            assert c.value(u, v) == oracles.mubayi_color(n, u + 1, v + 1)

    def test_accessors(self):
        col = MubayiColor(frozenset({3, 1}), (0, 1, 1))
        assert (col.iota, col.eta1, col.eta2, col.a_at(3)) == (2, 1, 3, 1)
        assert as_mubayi(((1, 3), [0, 1, 1])) == col
        with pytest.raises(ValueError):
            as_mubayi((frozenset({1}), (0, 0)))


class TestProductPartition:
    def test_two_by_two(self):
        p = product_partition(2, 2)
        assert p.n == 4 and p.t == 2
        assert p.labels == ((1, (frozenset({0, 1}), (1,))), (2, (frozenset({0, 1}), (1,))))

    def test_single_coordinate_matches_mubayi(self):
        p = product_partition(5, 1)
        c = mubayi_coloring(5)
        q = EdgePartition.from_coloring(c)
        pairs = set(zip(p.class_values().tolist(), q.class_values().tolist()))
        assert len(pairs) == len({a for a, _ in pairs}) == len({b for _, b in pairs})

    def test_class_count(self):
        assert product_partition(4, 2).t == 12

    def test_overflow(self):
        with pytest.raises(ValueError):
            product_partition(8, 5)


class TestGridFromRows:
    def test_identical_single_edges(self):
        row = GraphColoring.from_values(2, 2, [0], ColorTable.range(2))
        grid = grid_from_rows([row, row], 2)
        assert sorted(grid.col_values()[0].tolist()) == [0, 1]
        assert find_alternating_rectangle(grid) is None
        assert rows_from_grid(grid)[1] == row

    def test_disjoint_palettes_one_colour(self):
        t = ColorTable([1, 2, 3, 4, 5, 6, 7])
        a = GraphColoring.from_values(3, 2, [0, 1, 2], t)
        b = GraphColoring.from_values(3, 2, [3, 4, 5], t)
        grid = grid_from_rows([a, b], 1)
        assert len(grid.col_palette()) == 1
        assert find_alternating_rectangle(grid) is None

    def test_obstruction(self):
        row = GraphColoring.monochromatic(2)
        with pytest.raises(ChromaticObstruction) as info:
            grid_from_rows([row, row], 1)
        assert (info.value.i, info.value.ip) == (0, 1)

    def test_single_row(self):
        row = binary_coloring(5)
        grid = grid_from_rows([row], 1)
        assert rows_from_grid(grid) == [row]

    @pytest.mark.parametrize("seed", range(5))
    def test_rows_satisfy_chi_condition(self, seed):
        part = EdgePartition.from_coloring(binary_coloring(16))
        grid = random_grid(part, 4, 3, seed)
        assert grid is not None
        r = len(grid.col_palette())
        for a, b in combinations(rows_from_grid(grid), 2):
            assert chromatic_number(agreement_graph(a, b), r).exact


class TestRandomGrid:
    def test_trivial(self):
        grid = random_grid(EdgePartition.singletons(4), 1, 1, seed=0)
        assert grid is not None and grid.m >= 1

    def test_binary_classes(self):
        part = EdgePartition.from_coloring(binary_coloring(16))
        grid = random_grid(part, 4, 3, seed=11)
        assert grid is not None and grid.m >= 3 and grid.n == 16
        assert find_alternating_rectangle(grid) is None

    def test_singleton_partition(self):
        grid = random_grid(EdgePartition.singletons(6), 3, 2, seed=5)
        assert grid is not None and find_alternating_rectangle(grid) is None

    def test_deterministic(self):
        part = EdgePartition.from_coloring(binary_coloring(8))
        a = random_grid(part, 3, 2, seed=4)
        b = random_grid(part, 3, 2, seed=4)
        assert a == b

    def test_failure_returns_none(self):
        # three classes on 8 vertices, two colours: some pair of 16 rows agrees on two classes
        part = EdgePartition.from_coloring(binary_coloring(8))
        assert random_grid(part, 2, 8, seed=0) is None


class TestModularSequences:
    def test_first_examples(self):
        seqs = modular_sequences(3)
        assert len(seqs) == 9 and seqs[1] == (0, 1, 2)

    def test_agreement_examples(self):
        b01, b11, b12 = (0, 1, 2), (1, 2, 0), (1, 0, 2)
        seqs = modular_sequences(3)
        assert {b01, b11, b12} <= set(seqs)
        assert sum(x == y for x, y in zip(b01, b11)) == 0
        assert [i for i in range(3) if b01[i] == b12[i]] == [2]

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_pairwise_agreement(self, p):
        seqs = np.array(modular_sequences(p))
        agree = (seqs[:, None, :] == seqs[None, :, :]).sum(axis=2)
        np.fill_diagonal(agree, 0)
        assert agree.max() <= 1 and len(set(map(tuple, seqs.tolist()))) == p * p

    def test_not_prime(self):
        with pytest.raises(ValueError):
            modular_sequences(9)


class TestAsymmetricGrid:
    def test_r10(self):
        grid = asymmetric_grid(10)
        assert (grid.m, grid.n) == (25, 32)
        assert grid.row_palette() <= set(range(10)) and len(grid.col_palette()) == 2
        assert find_alternating_rectangle(grid) is None

    def test_prime_choice(self):
        assert asymmetric_prime(4) == 2
        assert asymmetric_prime(10) == 5
        with pytest.raises(ValueError):
            asymmetric_prime(3)

    @pytest.mark.parametrize("r", [4, 6, 8])
    def test_rows_bipartite(self, r):
        grid = asymmetric_grid(r)
        rows = rows_from_grid(grid)
        for a, b in combinations(rows, 2):
            assert isinstance(is_bipartite(agreement_graph(a, b)), TwoColoring)


class TestPartite:
    def test_counts(self):
        grid = GridColoring.random(3, 3, 2, np.random.default_rng(0))
        h = grid_to_partite3(grid)
        assert (h.subset_colors() != ABSENT).sum() == 18 == 2 * 3 * comb(3, 2)

    def test_two_by_two(self):
        for seed in range(20):
            grid = GridColoring.random(2, 2, 2, np.random.default_rng(seed))
            h = grid_to_partite3(grid)
            colours = {h.color(*s) for s in combinations(range(4), 3) if h.color(*s) != ABSENT}
            assert (len(colours) >= 3) == (find_alternating_rectangle(grid) is None)

    def test_round_trip(self):
        grid = GridColoring.random(4, 4, 3, np.random.default_rng(3))
        back = partite3_to_grid(grid_to_partite3(grid))
        assert back == grid and back.same_classes(grid)

    def test_rainbow_partite(self):
        subs = [s for s in combinations(range(6), 3) if 0 < sum(v < 3 for v in s) < 3]
        ranks = {s: i for i, s in enumerate(subs)}
        h = GraphColoring.from_function(6, 3, lambda s: ranks.get(s))
        grid = partite3_to_grid(h)
        assert (grid.m, grid.n) == (3, 3) and find_alternating_rectangle(grid) is None

    def test_non_square(self):
        with pytest.raises(ValueError):
            grid_to_partite3(GridColoring.monochromatic(2, 3))

    def test_malformed(self):
        with pytest.raises(ValueError):
            partite3_to_grid(GraphColoring.rainbow(6, 3))


class TestHypergraphColourings:
    def test_base_rainbow(self):
        c = f3_43_coloring(4)
        assert len(c.used_colors()) == 4

    @pytest.mark.parametrize("n", [8, 16])
    def test_f3_43(self, n):
        assert verify_pq(f3_43_coloring(n), 4, 3) is None

    def test_palette_recursion_bound(self):
        provider = default_grid_provider()
        c = f3_43_coloring(16, provider)
        bound = 4
        for m in (4, 8):
            g = provider(m)
            bound += 2 * ceil(log2(m)) * len(g.used_colors())
        assert len(c.used_colors()) <= bound

    def test_bad_provider(self):
        with pytest.raises(GridProviderError) as info:
            f3_43_coloring(8, lambda m: GridColoring.monochromatic(m, m))
        assert info.value.rectangle is not None

    def test_wrong_size_provider(self):
        with pytest.raises(GridProviderError):
            f3_43_coloring(8, lambda m: GridColoring.monochromatic(1, 1))

    def test_f3_56_triple(self):
        c = f3_56_coloring(8)
        c1, c2, c3, c4 = c.value(0, 1, 2)
        assert c1 == f3_43_coloring(8).value(0, 1, 2)
        assert (c2, c3) == (1, 1)
        assert c4 == mubayi_coloring(8).value(0, 2)

    def test_f3_56(self):
        c = f3_56_coloring(16)
        assert verify_pq(c, 5, 6) is None
        assert verify_pq(c, 4, 3) is None

    @pytest.mark.parametrize("n", [6, 12])
    def test_power_of_two_required(self, n):
        with pytest.raises(ValueError):
            f3_43_coloring(n)
        with pytest.raises(ValueError):
            f3_56_coloring(n)


class TestAuxiliaryGraph:
    def test_single(self):
        c = mubayi_coloring(16)
        assert auxiliary_color_graph(c, [0]).num_edges == 0

    def test_same_iota_adjacent(self):
        c = mubayi_coloring(16)
        ids = [c.table.id_of((frozenset({0, 1}), (1, 0))), c.table.id_of((frozenset({2, 3}), (1, 1)))]
        assert auxiliary_color_graph(c, ids).num_edges == 1

    @pytest.mark.parametrize("seed", range(5))
    def test_independent_unions_bipartite(self, seed):
        c = mubayi_coloring(16)
        part = EdgePartition.from_coloring(c)
        rng = np.random.default_rng(seed)
        X = sorted(rng.choice(c.used_colors(), size=4, replace=False).tolist())
        for family in independent_sets(auxiliary_color_graph(c, X)):
            assert isinstance(is_bipartite(union_subgraph(part, [X[v] for v in family])), TwoColoring)

    def test_rejects_other_colours(self):
        with pytest.raises(ValueError):
            auxiliary_color_graph(binary_coloring(4), [0])
