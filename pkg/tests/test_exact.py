import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operahedra.exact import (
    ConeGenerators,
    EmptyRegionError,
    HRep,
    UnboundedRegionError,
    cone_codim,
    cone_contains,
    dot,
    extremal_vertex,
    facets_from_vertices,
    frac_vec,
    primitive,
    rank,
    vertices_of,
)

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def vec(*xs):
    return frac_vec(xs)


class TestConeContains:
    def test_positive_orthant(self):
        cone = ConeGenerators.of(2, [(1, 0), (0, 1)])
        result = cone_contains(cone, (2, 3))
        assert result.contains
        assert result.coefficients == (Fraction(2), Fraction(3))

    def test_off_the_line(self):
        cone = ConeGenerators.of(2, [(1, 1), (-1, -1)])
        result = cone_contains(cone, (1, 0))
        assert not result.contains
        w = result.certificate
        assert all(dot(w, g) <= 0 for g in cone.generators)
        assert dot(w, vec(1, 0)) > 0

    def test_permutahedron_pair(self):
        # -N(1|2) u N(12) for the one-dimensional permutahedron
        gens = [(1, 0), (1, 1), (-1, -1)]
        cone = ConeGenerators.of(2, gens)
        assert cone_contains(cone, (2, 1)).contains

    def test_zero_vector_always_inside(self):
        cone = ConeGenerators.of(3, [(0, 0, 0), (1, 2, 3)])
        assert cone_contains(cone, (0, 0, 0)).contains

    def test_empty_generators(self):
        cone = ConeGenerators.of(2, [])
        assert not cone_contains(cone, (1, 0)).contains

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.tuples(rationals, rationals, rationals), min_size=0, max_size=5
        ),
        st.tuples(rationals, rationals, rationals),
    )
    def test_certificates_verify_exactly(self, gens, v):
        cone = ConeGenerators.of(3, gens)
        result = cone_contains(cone, v)
        v = frac_vec(v)
        if result.contains:
            combo = [Fraction(0)] * 3
            for lam, g in zip(result.coefficients, cone.generators):
                assert lam >= 0
                combo = [c + lam * x for c, x in zip(combo, g)]
            assert tuple(combo) == v
        else:
            w = result.certificate
            assert all(dot(w, g) <= 0 for g in cone.generators)
            assert dot(w, v) > 0


class TestConeCodim:
    def test_single_ray_in_dim3(self):
        assert cone_codim(ConeGenerators.of(3, [(1, 0, 0)])) == 2

    def test_empty_in_dim2(self):
        assert cone_codim(ConeGenerators.of(2, [])) == 2

    def test_vertex_cone_of_hexagon(self):
        gens = [(-1, 0, 0), (-1, -1, 0), (-1, -1, -1), (1, 1, 1)]
        assert cone_codim(ConeGenerators.of(3, gens)) == 0

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            st.tuples(rationals, rationals, rationals), min_size=0, max_size=6
        )
    )
    def test_matches_gaussian_rank(self, gens):
        cone = ConeGenerators.of(3, gens)
        assert cone_codim(cone) == 3 - rank([list(g) for g in gens])


class TestVerticesOf:
    def test_unit_square(self):
        h = HRep.of(
            2,
            [],
            [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)],
        )
        assert vertices_of(h) == (
            vec(0, 0),
            vec(0, 1),
            vec(1, 0),
            vec(1, 1),
        )

    def test_interval_realization(self):
        h = HRep.of(2, [((1, 1), 3)], [((1, 0), 1), ((0, 1), 1)])
        assert sorted(vertices_of(h)) == [vec(1, 2), vec(2, 1)]

    def test_hexagon_centrally_symmetric_intersection(self):
        hexv = [
            (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1),
        ]
        h = facets_from_vertices(hexv)
        reflected = HRep.of(
            3,
            [(tuple(-a for a in row), b - 2 * dot(row, vec(2, 2, 2))) for row, b in h.equalities],
            [(tuple(-a for a in row), b - 2 * dot(row, vec(2, 2, 2))) for row, b in h.inequalities],
        )
        both = HRep.of(
            3,
            h.equalities + reflected.equalities,
            h.inequalities + reflected.inequalities,
        )
        assert sorted(vertices_of(both)) == sorted(frac_vec(v) for v in hexv)

    def test_empty_region(self):
        with pytest.raises(EmptyRegionError):
            vertices_of(HRep.of(2, [], [((1, 0), 1), ((-1, 0), 1)]))

    def test_unbounded_region(self):
        with pytest.raises(UnboundedRegionError):
            vertices_of(HRep.of(2, [], [((1, 0), 0)]))


class TestFacetsFromVertices:
    def test_segment(self):
        h = facets_from_vertices([(0,), (1,)])
        assert h.equalities == ()
        assert sorted(h.inequalities) == [
            ((Fraction(-1),), Fraction(-1)),
            ((Fraction(1),), Fraction(0)),
        ]

    def test_standard_triangle(self):
        h = facets_from_vertices([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert h.equalities == (((Fraction(1),) * 3, Fraction(1)),)
        # on the hull each inequality reduces to x_i >= 0: tight at two
        # vertices and positive at the opposite one, each i occurring once
        tight_patterns = set()
        for a, b in h.inequalities:
            values = [
                dot(a, frac_vec(p)) - b
                for p in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
            ]
            assert sorted(values)[:2] == [0, 0] and max(values) > 0
            tight_patterns.add(values.index(max(values)))
        assert tight_patterns == {0, 1, 2}

    def test_pyramid_normals(self):
        pts = [
            (0, 0, 1),
            (-1, 0, 0),
            (0, Fraction(3, 2), Fraction(-1, 2)),
            (0, Fraction(-3, 2), Fraction(-1, 2)),
            (3, 0, -2),
        ]
        h = facets_from_vertices(pts)
        outward = sorted(primitive([-x for x in a]) for a, _ in h.inequalities)
        assert outward == sorted(
            [(1, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1), (-1, 0, -2)]
        )

    def test_rejects_no_points(self):
        with pytest.raises(EmptyRegionError):
            facets_from_vertices([])

    def test_single_point(self):
        h = facets_from_vertices([(2, 3)])
        assert vertices_of(h) == (vec(2, 3),)

    @pytest.mark.parametrize(
        "points",
        [
            [(0, 0), (1, 0), (0, 1)],
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)],
            [(1, 2), (2, 1)],
            [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)],
        ],
    )
    def test_roundtrip_with_vertices_of(self, points):
        h = facets_from_vertices(points)
        assert sorted(vertices_of(h)) == sorted(frac_vec(p) for p in points)

    def test_interior_points_are_dropped(self):
        h = facets_from_vertices([(0,), (1,), (Fraction(1, 2),)])
        assert sorted(vertices_of(h)) == [vec(0), vec(1)]


class TestExtremalVertex:
    HEX = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]

    def test_min(self):
        point, unique = extremal_vertex(self.HEX, (4, 2, 1), "min")
        assert point == vec(1, 2, 3) and unique

    def test_max(self):
        point, unique = extremal_vertex(self.HEX, (4, 2, 1), "max")
        assert point == vec(3, 2, 1) and unique

    def test_ties_reported(self):
        _, unique = extremal_vertex(self.HEX, (1, 1, 1), "min")
        assert not unique
