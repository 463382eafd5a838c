"""Loday realizations of the operahedra.

The realization of weight w places one vertex per maximal nesting at the
integer point whose i-th coordinate is alpha_i * beta_i, the product of
the weight sums above and below edge i inside the smallest nest
containing it.  The polytope is cut out of the hyperplane
sum(x) = sum_{k<l} w_k w_l by one inequality per non-trivial nest, and
its normal fan is generated by the characteristic vectors of nests.
Faces decompose as products of smaller realizations through a coordinate
shuffle ("theta embedding").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import ConeGenerators, HRep, dot, frac_vec
from .trees import (
    Nesting,
    NestingError,
    PlanarTree,
    TreeError,
    closure_vertices,
    enumerate_nestings,
    substitute,
)


def standard_weight(n: int) -> tuple[int, ...]:
    return (1,) * n


def check_weight(t: PlanarTree, weight) -> tuple[int, ...]:
    weight = tuple(int(w) for w in weight)
    if len(weight) != t.n:
        raise TreeError(
            "weight of length %d for a tree with %d vertices" % (len(weight), t.n)
        )
    if any(w < 1 for w in weight):
        raise TreeError("weights are positive integers")
    return weight


def characteristic_vector(t: PlanarTree, nest) -> tuple[Fraction, ...]:
    "The 0/1 indicator of a nest in edge coordinates."
    return tuple(
        Fraction(1 if e in nest else 0) for e in t.edges
    )


def _subtree_vertices_above(t: PlanarTree, nest, e: int) -> frozenset[int]:
    "Vertices of the induced subtree of a nest lying above edge e."
    verts = closure_vertices(t, nest)
    upper = t.descendants(e + 1)
    return verts & upper


def loday_point(t: PlanarTree, nesting: Nesting, weight=None) -> tuple[Fraction, ...]:
    """Vertex coordinates of a maximal nesting.

    For each edge i, cut the induced subtree of the smallest nest
    containing i at that edge; the coordinate is the product of the
    weight sums of the two halves.
    """
    if not nesting.is_maximal:
        raise NestingError("Loday points are attached to maximal nestings only")
    weight = check_weight(t, weight or standard_weight(t.n))
    coords = []
    for e in t.edges:
        nest = nesting.min_nest_of_edge(e)
        verts = closure_vertices(t, nest)
        above = _subtree_vertices_above(t, nest, e)
        below = verts - above
        alpha = sum(weight[v - 1] for v in above)
        beta = sum(weight[v - 1] for v in below)
        coords.append(Fraction(alpha * beta))
    return tuple(coords)


def _weight_pair_sum(weight, vertices) -> int:
    vals = [weight[v - 1] for v in sorted(vertices)]
    total = sum(vals)
    return (total * total - sum(w * w for w in vals)) // 2


def nest_inequality(t: PlanarTree, nest, weight) -> tuple[tuple[Fraction, ...], Fraction]:
    "The halfspace sum_{i in N} x_i >= sum of weight pair products over V(t(N))."
    bound = _weight_pair_sum(weight, closure_vertices(t, nest))
    return characteristic_vector(t, nest), Fraction(bound)


@dataclass(frozen=True)
class LodayPolytope:
    """Exact V- and H-representation of a Loday realization.

    ``vertices`` is parallel to ``nestings`` (the maximal nestings in
    canonical order); the ambient space is R^{n-1} indexed by edges and
    the all-ones equation is carried explicitly.
    """

    tree: PlanarTree
    weight: tuple[int, ...]
    nestings: tuple[Nesting, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    hrep: HRep

    @property
    def dim(self) -> int:
        return self.tree.n - 2 if self.tree.n >= 2 else 0

    def vertex_of(self, nesting: Nesting) -> tuple[Fraction, ...]:
        return self.vertices[self.nestings.index(nesting)]

    def nest_of_inequality(self, index: int) -> frozenset[int]:
        return self._inequality_nests[index]

    @property
    def _inequality_nests(self):
        nests = sorted(
            (nest for nest in _proper_nests(self.tree)),
            key=lambda nest: tuple(sorted(nest)),
        )
        return nests

    def carrier(self, point) -> Nesting:
        "The nesting of the smallest face containing a point of the polytope."
        point = frac_vec(point)
        if not self.hrep.contains(point):
            raise ValueError("point is not in the polytope")
        tight = [
            self._inequality_nests[i] for i in self.hrep.tight_inequalities(point)
        ]
        if self.tree.n == 1:
            return Nesting.trivial(self.tree)
        return Nesting.of(self.tree, tight + [self.tree.trivial_nest])


@lru_cache(maxsize=None)
def _proper_nests(t: PlanarTree) -> tuple[frozenset[int], ...]:
    from .trees import all_nests

    return tuple(
        sorted(
            (nest for nest in all_nests(t) if nest != t.trivial_nest),
            key=lambda nest: tuple(sorted(nest)),
        )
    )


def loday_polytope(t: PlanarTree, weight=None) -> LodayPolytope:
    "The Loday realization: vertex map over maximal nestings plus its H-representation."
    weight = check_weight(t, weight or standard_weight(t.n))
    maxima = enumerate_nestings(t, max_only=True)
    vertices = tuple(loday_point(t, nst, weight) for nst in maxima)
    equalities = []
    if t.n >= 2:
        total = _weight_pair_sum(weight, range(1, t.n + 1))
        equalities.append(
            (tuple(Fraction(1) for _ in t.edges), Fraction(total))
        )
    inequalities = [nest_inequality(t, nest, weight) for nest in _proper_nests(t)]
    hrep = HRep.of(t.n - 1, equalities, inequalities)
    return LodayPolytope(t, weight, maxima, vertices, hrep)


def normal_cone(t: PlanarTree, nesting: Nesting) -> ConeGenerators:
    """Generators of the normal cone of the face labeled by a nesting.

    These are the negated characteristic vectors of the nests together
    with plus and minus the all-ones vector spanning the orthogonal
    complement of the affine hull.
    """
    dim = t.n - 1
    gens = []
    for nest in sorted(nesting.nests, key=lambda nest: tuple(sorted(nest))):
        gens.append(tuple(-x for x in characteristic_vector(t, nest)))
    if t.n >= 2:
        ones = tuple(Fraction(1) for _ in t.edges)
        if tuple(-x for x in ones) not in gens:
            gens.append(tuple(-x for x in ones))
        gens.append(ones)
    return ConeGenerators.of(dim, gens)


def face_vertices(
    t: PlanarTree, nesting: Nesting, weight=None
) -> tuple[tuple[Nesting, tuple[Fraction, ...]], ...]:
    "The vertices of a face: the maximal nestings refining the given one."
    weight = check_weight(t, weight or standard_weight(t.n))
    out = []
    for nst in enumerate_nestings(t, max_only=True):
        if nesting.nests <= nst.nests:
            out.append((nst, loday_point(t, nst, weight)))
    return tuple(out)


def theta_embed(t1: PlanarTree, i: int, t2: PlanarTree, x, y) -> tuple[Fraction, ...]:
    """Embed a product of realizations onto a facet through the edge shuffle.

    The point x lives in the realization of t1 with weight
    (1,...,1,l,1,...,1), l = |V(t2)| in slot i, and y in the standard
    realization of t2; the image lies on the facet of the composite tree
    labeled by the image of E(t2).
    """
    x, y = frac_vec(x), frac_vec(y)
    if len(x) != t1.n - 1 or len(y) != t2.n - 1:
        raise TreeError("point dimensions do not match the trees")
    weight1 = tuple(t2.n if v == i else 1 for v in range(1, t1.n + 1))
    if not loday_polytope(t1, weight1).hrep.contains(x):
        raise ValueError("x is not in the weighted realization of the host tree")
    if not loday_polytope(t2).hrep.contains(y):
        raise ValueError("y is not in the standard realization of the guest tree")
    sub = substitute(t1, i, t2, Nesting.trivial(t1), Nesting.trivial(t2))
    z = [Fraction(0)] * (sub.tree.n - 1)
    for e in t1.edges:
        z[sub.edge_map_host[e] - 1] = x[e - 1]
    for e in t2.edges:
        z[sub.edge_map_guest[e] - 1] = y[e - 1]
    return tuple(z)
