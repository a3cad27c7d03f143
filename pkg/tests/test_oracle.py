"""The brute-force oracle layer and labeled-tree enumeration."""

import random

import pytest

from equiforest import (
    Forest,
    OracleLimitError,
    enumerate_labeled_trees,
    labeled_trees_in_range,
    num_labeled_trees,
    oracle_alpha,
    oracle_alpha_x,
    oracle_coloring,
    oracle_exists,
    parse_forest,
)
from equiforest.generators import FamilySpec, gen_family

from conftest import brute_alpha, brute_alpha_x, brute_equitable_exists


def path(n):
    return gen_family(FamilySpec("path", (n,)))


def star(d):
    return gen_family(FamilySpec("star", (d,)))


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 16), (8, 262144)])
    def test_cayley_counts(self, n, count):
        assert num_labeled_trees(n) == count
        assert sum(1 for _ in enumerate_labeled_trees(n)) == count

    def test_cayley_counts_mid(self):
        for n in (5, 6, 7):
            assert sum(1 for _ in enumerate_labeled_trees(n)) == n ** (n - 2)

    def test_trees_distinct_and_valid(self):
        for n in range(1, 7):
            seen = set()
            for f in enumerate_labeled_trees(n):
                f.validate()
                assert f.n == n and f.num_components == 1
                seen.add(f.edges)
            assert len(seen) == num_labeled_trees(n)

    def test_large_level_spot_validation(self):
        for i, f in enumerate(enumerate_labeled_trees(7)):
            if i % 97 == 0:
                f.validate()
                assert f.num_components == 1

    def test_range_sharding_partitions_the_space(self):
        n = 6
        total = num_labeled_trees(n)
        full = [f.edges for f in enumerate_labeled_trees(n)]
        cuts = [0, total // 3, 2 * total // 3 + 5, total]
        pieces = []
        for lo, hi in zip(cuts, cuts[1:]):
            pieces.extend(f.edges for f in labeled_trees_in_range(n, lo, hi))
        assert pieces == full

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            enumerate_labeled_trees(0)
        with pytest.raises(ValueError):
            enumerate_labeled_trees(9)  # needs an explicit cap raise
        enumerate_labeled_trees(9, cap=9).close()


class TestOracleExists:
    def test_star5_not_three_colorable(self):
        assert oracle_exists(star(5), 3) is False

    def test_star5_four_colorable_with_sizes(self):
        assert oracle_exists(star(5), 4) is True
        coloring = oracle_coloring(star(5), 4)
        counts = sorted(
            [coloring.count(c) for c in range(1, 5)]
        )
        assert counts == [1, 1, 2, 2]

    def test_path4_two_colorable(self):
        assert oracle_exists(path(4), 2) is True

    def test_size_guard(self):
        with pytest.raises(OracleLimitError):
            oracle_exists(path(21), 3)

    def test_matches_naive_reference(self):
        for n in range(1, 7):
            for f in enumerate_labeled_trees(n):
                for k in range(1, n + 1):
                    assert oracle_exists(f, k) == brute_equitable_exists(f, k)

    def test_relabeling_symmetry(self):
        rng = random.Random(0)
        for trial in range(100):
            n = rng.randint(2, 10)
            f = gen_family(FamilySpec("random_tree", (n,), trial))
            perm = list(range(n))
            rng.shuffle(perm)
            g = Forest.from_edges(n, ((perm[u], perm[v]) for u, v in f.edges))
            k = rng.randint(2, n)
            assert oracle_exists(f, k) == oracle_exists(g, k)


class TestOracleStability:
    def test_alpha_examples(self):
        assert oracle_alpha(path(5)) == 3
        assert oracle_alpha(parse_forest("4")) == 4
        assert oracle_alpha(star(6)) == 6

    def test_alpha_x_examples(self):
        assert oracle_alpha_x(path(5), 1) == 2
        assert oracle_alpha_x(star(6), 0) == 1
        assert oracle_alpha_x(parse_forest("3"), 0) == 3

    def test_alpha_matches_subset_enumeration(self):
        for n in range(1, 6):
            for f in enumerate_labeled_trees(n):
                assert oracle_alpha(f) == brute_alpha(f)
                for x in range(n):
                    assert oracle_alpha_x(f, x) == brute_alpha_x(f, x)

    def test_alpha_x_vertex_guard(self):
        with pytest.raises(ValueError):
            oracle_alpha_x(path(3), 3)
