from fractions import Fraction

import pytest

from conftest import nst, tree
from operahedra.exact import dot, frac_vec, vertices_of
from operahedra.realization import (
    face_vertices,
    loday_point,
    loday_polytope,
    normal_cone,
    theta_embed,
)
from operahedra.trees import (
    Nesting,
    NestingError,
    all_trees,
    covering_relations,
    enumerate_nestings,
    linear_tree,
    substitute,
    two_leveled_tree,
)


def fv(*xs):
    return frac_vec(xs)


class TestLodayPoint:
    def test_interval_vertices(self):
        lin3 = linear_tree(3)
        assert loday_point(lin3, nst(lin3, {1}, {1, 2})) == fv(1, 2)
        assert loday_point(lin3, nst(lin3, {2}, {1, 2})) == fv(2, 1)

    def test_hexagon_vertices_are_permutations(self):
        two4 = two_leveled_tree(4)
        chain = nst(two4, {1}, {1, 2}, {1, 2, 3})
        assert loday_point(two4, chain) == fv(1, 2, 3)
        points = {
            loday_point(two4, nesting)
            for nesting in enumerate_nestings(two4, max_only=True)
        }
        import itertools

        assert points == {
            frac_vec(p) for p in itertools.permutations((1, 2, 3))
        }

    def test_weighted_segment(self):
        lin2 = linear_tree(2)
        assert loday_point(lin2, Nesting.trivial(lin2), (2, 3)) == fv(6)

    def test_rejects_non_maximal(self):
        lin3 = linear_tree(3)
        with pytest.raises(NestingError):
            loday_point(lin3, Nesting.trivial(lin3))


class TestLodayPolytope:
    def test_interval(self):
        P = loday_polytope(linear_tree(3))
        assert P.hrep.equalities == ((fv(1, 1), Fraction(3)),)
        assert sorted(P.hrep.inequalities) == [
            (fv(0, 1), Fraction(1)),
            (fv(1, 0), Fraction(1)),
        ]
        assert sorted(P.vertices) == [fv(1, 2), fv(2, 1)]

    def test_hexagon_bounds_are_pair_counts(self):
        P = loday_polytope(two_leveled_tree(4))
        assert P.hrep.equalities == ((fv(1, 1, 1), Fraction(6)),)
        # a nest of size s bounds its coordinates below by C(s+1, 2)
        for a, b in P.hrep.inequalities:
            size = sum(a)
            assert b == size * (size + 1) / 2

    def test_corolla_is_a_point(self):
        P = loday_polytope(tree([0, 0]))
        assert P.dim == 0
        assert P.vertices == ((),)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_vh_agreement_standard_weight(self, n):
        for t in all_trees(n):
            P = loday_polytope(t)
            assert sorted(set(P.vertices)) == sorted(vertices_of(P.hrep))

    @pytest.mark.parametrize(
        "weight", [(2, 1, 1), (1, 3, 1), (1, 1, 1, 2), (2, 2, 1, 1)]
    )
    def test_vh_agreement_other_weights(self, weight):
        for t in all_trees(len(weight)):
            P = loday_polytope(t, weight)
            assert sorted(set(P.vertices)) == sorted(vertices_of(P.hrep))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_tightness_characterizes_membership(self, n):
        # a vertex meets a nest inequality with equality iff the nest is in
        # its maximal nesting, in both directions
        for t in all_trees(n):
            P = loday_polytope(t)
            for nesting, point in zip(P.nestings, P.vertices):
                tight = {
                    P.nest_of_inequality(i)
                    for i in P.hrep.tight_inequalities(point)
                }
                assert tight == nesting.nests - {t.trivial_nest}

    @pytest.mark.parametrize("n", range(2, 6))
    def test_face_lattice_antitone(self, n):
        for t in all_trees(n):
            nestings = enumerate_nestings(t)
            for a in nestings:
                for b in nestings:
                    if a.nests <= b.nests:
                        va = {nst.key() for nst, _ in face_vertices(t, a)}
                        vb = {nst.key() for nst, _ in face_vertices(t, b)}
                        assert vb <= va


class TestNormalCone:
    def test_interval_vertex(self):
        lin3 = linear_tree(3)
        cone = normal_cone(lin3, nst(lin3, {1}, {1, 2}))
        assert set(cone.generators) == {fv(-1, 0), fv(-1, -1), fv(1, 1)}

    def test_hexagon_vertex(self):
        two4 = two_leveled_tree(4)
        cone = normal_cone(two4, nst(two4, {1}, {1, 2}, {1, 2, 3}))
        assert set(cone.generators) == {
            fv(-1, 0, 0),
            fv(-1, -1, 0),
            fv(-1, -1, -1),
            fv(1, 1, 1),
        }

    def test_trivial_nesting_is_a_line(self):
        two4 = two_leveled_tree(4)
        cone = normal_cone(two4, Nesting.trivial(two4))
        assert set(cone.generators) == {fv(-1, -1, -1), fv(1, 1, 1)}
        from operahedra.exact import cone_codim

        assert cone_codim(cone) == 2


class TestFaceVertices:
    def test_hexagon_facet(self):
        two4 = two_leveled_tree(4)
        points = {
            p for _, p in face_vertices(two4, nst(two4, {1}, {1, 2, 3}))
        }
        assert points == {fv(1, 2, 3), fv(1, 3, 2)}

    def test_trivial_nesting_gives_all_vertices(self):
        two4 = two_leveled_tree(4)
        assert len(face_vertices(two4, Nesting.trivial(two4))) == 6

    def test_maximal_nesting_gives_its_vertex(self):
        two4 = two_leveled_tree(4)
        chain = nst(two4, {1}, {1, 2}, {1, 2, 3})
        assert face_vertices(two4, chain) == (
            (chain, loday_point(two4, chain)),
        )


class TestSkeletonOrientation:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_covers_increase_along_decreasing_vectors(self, n):
        # each covering edge moves mass from an earlier to a later edge
        for t in all_trees(n):
            v = frac_vec(range(t.n - 1, 0, -1))
            for lo, hi in covering_relations(t):
                diff = [
                    b - a
                    for a, b in zip(loday_point(t, lo), loday_point(t, hi))
                ]
                nonzero = [(i, x) for i, x in enumerate(diff) if x != 0]
                assert len(nonzero) == 2
                (i, x), (j, y) = nonzero
                assert x == -y and x > 0 and i < j
                assert dot(diff, v) > 0


class TestThetaEmbed:
    def test_identity_shuffle(self):
        lin2 = linear_tree(2)
        assert theta_embed(lin2, 2, lin2, (2,), (1,)) == fv(2, 1)

    def test_transposed_shuffle(self):
        lin2 = linear_tree(2)
        assert theta_embed(lin2, 1, lin2, (2,), (1,)) == fv(1, 2)

    def test_image_is_the_facet(self):
        # the embedded vertices are exactly the vertices of the facet
        # labeled by the image of the guest edge set
        lin2 = linear_tree(2)
        lin3 = linear_tree(3)
        sub = substitute(
            lin2, 2, lin2, Nesting.trivial(lin2), Nesting.trivial(lin2)
        )
        facet_nest = frozenset(sub.edge_map_guest.values())
        facet = Nesting.of(lin3, [facet_nest, lin3.trivial_nest])
        embedded = {theta_embed(lin2, 2, lin2, (2,), (1,))}
        assert embedded == {p for _, p in face_vertices(lin3, facet)}

    def test_affine_and_injective_on_a_square_facet(self):
        # substituting a 2-vertex tree into the middle of a 3-vertex tree
        # embeds an interval x point into the pentagon facet
        lin2, lin3 = linear_tree(2), linear_tree(3)
        lin4 = linear_tree(4)
        sub = substitute(
            lin3, 2, lin2, Nesting.trivial(lin3), Nesting.trivial(lin2)
        )
        assert sub.tree == lin4
        facet_nest = frozenset(sub.edge_map_guest.values())
        weight = (1, 2, 1)
        P = loday_polytope(lin3, weight)
        images = []
        for x in P.vertices:
            images.append(theta_embed(lin3, 2, lin2, x, (1,)))
        assert len(set(images)) == len(set(P.vertices))
        facet = Nesting.of(lin4, [facet_nest, lin4.trivial_nest])
        assert set(images) == {p for _, p in face_vertices(lin4, facet)}
        # affine: the midpoint maps to the midpoint
        mid_source = tuple(
            (a + b) / 2 for a, b in zip(P.vertices[0], P.vertices[1])
        )
        mid_target = tuple(
            (a + b) / 2 for a, b in zip(images[0], images[1])
        )
        assert theta_embed(lin3, 2, lin2, mid_source, (1,)) == mid_target

    def test_weight_mismatch_rejected(self):
        lin2 = linear_tree(2)
        with pytest.raises(Exception):
            theta_embed(lin2, 2, lin2, (2, 2), (1,))
