from fractions import Fraction

import pytest

from conftest import nst
from operahedra.arrangement import WallVectorError
from operahedra.diagonal import (
    PointOutsidePolytopeError,
    bot_top_point,
    coarsen,
    coarsen_nest,
    diagonal_count,
    diagonal_image,
    diagonal_via_projection,
    pair_in_image,
    pair_in_image_cone,
    pair_midpoint,
    tp_bm_filter,
)
from operahedra.tables import (
    DIMENSION_1,
    DIMENSION_2,
    format_partition,
    partition_nesting,
)
from operahedra.trees import (
    Nesting,
    all_trees,
    corolla,
    enumerate_nestings,
    linear_tree,
    nesting_partition,
    two_leveled_tree,
)


def image_as_partitions(t):
    return {
        (
            format_partition(nesting_partition(t, p.left)),
            format_partition(nesting_partition(t, p.right)),
        )
        for p in diagonal_image(t)
    }


class TestPairInImage:
    def test_dimension_one_list(self):
        t = two_leveled_tree(3)
        assert pair_in_image(t, partition_nesting(t, "1|2"), partition_nesting(t, "12"))
        assert pair_in_image(t, partition_nesting(t, "12"), partition_nesting(t, "2|1"))
        assert not pair_in_image(
            t, partition_nesting(t, "12"), partition_nesting(t, "1|2")
        )

    def test_dimension_two_member(self):
        t = two_leveled_tree(4)
        assert pair_in_image(
            t, partition_nesting(t, "13|2"), partition_nesting(t, "3|12")
        )

    def test_top_top_fails(self):
        t = two_leveled_tree(3)
        top = Nesting.trivial(t)
        assert not pair_in_image(t, top, top)

    def test_vertex_pairs_follow_the_order(self):
        t = two_leveled_tree(3)
        lo = partition_nesting(t, "1|2")
        hi = partition_nesting(t, "2|1")
        assert pair_in_image(t, lo, lo)
        assert pair_in_image(t, lo, hi)
        assert not pair_in_image(t, hi, lo)


class TestDiagonalImage:
    def test_corolla(self):
        assert diagonal_count(corolla(2)) == 1

    def test_dimension_1_table(self):
        assert image_as_partitions(two_leveled_tree(3)) == set(DIMENSION_1)

    def test_dimension_2_table(self):
        assert image_as_partitions(two_leveled_tree(4)) == set(DIMENSION_2)

    def test_pentagon(self):
        assert diagonal_count(linear_tree(4)) == 6

    def test_deterministic_order(self):
        pairs = diagonal_image(two_leveled_tree(4))
        keys = [p.key() for p in pairs]
        assert keys == sorted(keys)

    def test_complementary_dimensions(self):
        for p in diagonal_image(two_leveled_tree(5)):
            assert p.left.dim + p.right.dim == 3


class TestConeOracle:
    def test_examples(self):
        t = two_leveled_tree(3)
        assert pair_in_image_cone(
            t, partition_nesting(t, "1|2"), partition_nesting(t, "12"), (2, 1)
        )
        assert not pair_in_image_cone(
            t, partition_nesting(t, "12"), partition_nesting(t, "1|2"), (2, 1)
        )

    def test_corolla_pair(self):
        c = corolla(3)
        triv = Nesting.trivial(c)
        assert pair_in_image_cone(c, triv, triv)

    @pytest.mark.parametrize("n", range(2, 5))
    def test_matches_formula(self, n):
        for t in all_trees(n):
            nestings = enumerate_nestings(t)
            for left in nestings:
                for right in nestings:
                    if len(left.nests) + len(right.nests) != t.n:
                        continue
                    assert pair_in_image(t, left, right) == pair_in_image_cone(
                        t, left, right
                    )


class TestBotTopPoint:
    def test_hexagon_barycenter(self):
        two4 = two_leveled_tree(4)
        bm, tp, cb, ct = bot_top_point(two4, (1,) * 4, (2, 2, 2), (4, 2, 1))
        assert bm == (1, 2, 3) and tp == (3, 2, 1)
        assert cb.is_maximal and ct.is_maximal

    def test_interval_at_a_vertex(self):
        lin3 = linear_tree(3)
        bm, tp, _, _ = bot_top_point(lin3, (1, 1, 1), (1, 2), (2, 1))
        assert bm == (1, 2) and tp == (1, 2)

    def test_interval_generic_point(self):
        lin3 = linear_tree(3)
        z = (Fraction(5, 4), Fraction(7, 4))
        bm, tp, cb, ct = bot_top_point(lin3, (1, 1, 1), z, (2, 1))
        assert bm == (1, 2)
        assert tp == (Fraction(3, 2), Fraction(3, 2))
        assert cb == nst(lin3, {1}, {1, 2})
        assert ct == Nesting.trivial(lin3)

    def test_rejects_outside_point(self):
        with pytest.raises(PointOutsidePolytopeError):
            bot_top_point(linear_tree(3), (1, 1, 1), (0, 3), (2, 1))

    def test_wall_vector_detected(self):
        with pytest.raises(WallVectorError):
            bot_top_point(two_leveled_tree(4), (1,) * 4, (2, 2, 2), (1, 1, 1))

    @pytest.mark.parametrize("n", range(2, 5))
    def test_carriers_recover_the_pair(self, n):
        for t in all_trees(n):
            for p in diagonal_image(t):
                z = pair_midpoint(t, p.left, p.right)
                _, _, cb, ct = bot_top_point(t, (1,) * t.n, z)
                assert cb == p.left and ct == p.right


class TestCoarsening:
    def test_disconnected_nest_splits(self):
        lin4 = linear_tree(4)
        assert coarsen_nest(lin4, {1, 3}) == (frozenset({1}), frozenset({3}))

    def test_connected_nest_is_kept(self):
        lin4 = linear_tree(4)
        assert coarsen_nest(lin4, {1, 2}) == (frozenset({1, 2}),)

    def test_projection_equals_direct_image_on_pentagon(self):
        lin4 = linear_tree(4)
        assert [p.key() for p in diagonal_via_projection(lin4)] == [
            p.key() for p in diagonal_image(lin4)
        ]

    @pytest.mark.parametrize("n", range(2, 6))
    def test_projection_commutes(self, n):
        for t in all_trees(n):
            if t.is_two_leveled:
                continue
            assert [p.key() for p in diagonal_via_projection(t)] == [
                p.key() for p in diagonal_image(t)
            ]


class TestTpBmFilter:
    def test_bottom_vertex_against_top_cell(self):
        two4 = two_leveled_tree(4)
        lo = partition_nesting(two4, "1|2|3")
        assert tp_bm_filter(two4, lo, Nesting.trivial(two4))

    def test_edge_against_reversed_vertex(self):
        two3 = two_leveled_tree(3)
        assert not tp_bm_filter(
            two3,
            partition_nesting(two3, "12"),
            partition_nesting(two3, "1|2"),
        )

    @pytest.mark.parametrize("n", range(2, 5))
    def test_necessity_on_image_pairs(self, n):
        for t in all_trees(n):
            for p in diagonal_image(t):
                assert tp_bm_filter(t, p.left, p.right)

    def test_not_sufficient_on_the_permutahedron(self):
        # dimension 3 carries pairs passing the filter but not the formula
        t5 = two_leveled_tree(5)
        nestings = enumerate_nestings(t5)
        extra = 0
        for left in nestings:
            for right in nestings:
                if len(left.nests) + len(right.nests) != t5.n:
                    continue
                if tp_bm_filter(t5, left, right) and not pair_in_image(
                    t5, left, right
                ):
                    extra += 1
        assert extra == 8
