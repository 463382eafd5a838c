"""Cellular image of the bot-top diagonal of operahedra and permutahedra.

A pair of faces (F, G) is in the image exactly when for every pair
(I, J) of the fundamental arrangement some nest of F meets I more than J
or some nest of G meets J more than I.  Alongside this combinatorial
formula the module carries three independent oracles: the exact cone
criterion v in cone(-N(F) u N(G)), the pointwise bot-top computation on
P intersected with its reflection, and the tp <= bm vertex-poset filter.
The coarsening projection transports the permutahedron image to any
operahedron with the same edge count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arrangement import WallVectorError, generate_D, is_principal, principal_vector
from .exact import (
    EmptyRegionError,
    HRep,
    cone_contains,
    dot,
    frac_vec,
    vertices_of,
)
from .realization import (
    characteristic_vector,
    face_vertices,
    loday_polytope,
    normal_cone,
)
from .trees import (
    Nesting,
    PlanarTree,
    TreeError,
    enumerate_nestings,
    is_nest,
    nesting_partition,
    two_leveled_tree,
    vertex_leq,
)


class PointOutsidePolytopeError(ValueError):
    "Raised when a base point does not lie in the polytope."


@dataclass(frozen=True)
class DiagonalPair:
    "An ordered pair of nestings in the image of the diagonal."

    tree: PlanarTree
    left: Nesting
    right: Nesting

    def key(self):
        return (self.left.key(), self.right.key())

    @property
    def dims(self) -> tuple[int, int]:
        return (self.left.dim, self.right.dim)

    def __repr__(self):
        return "DiagonalPair(%r, %r)" % (
            list(map(list, self.left.key())),
            list(map(list, self.right.key())),
        )


def _edge_bit(e: int) -> int:
    return 1 << (e - 1)


def _mask(nest) -> int:
    m = 0
    for e in nest:
        m |= _edge_bit(e)
    return m


@lru_cache(maxsize=None)
def _dpair_masks(m: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (_mask(pair.I), _mask(pair.J)) for pair in generate_D(m)
    )


def _formula_masks(nest_masks, dpairs) -> tuple[int, int]:
    """Bitmask over D of the hyperplanes won on the left and on the right.

    Bit h of the first mask is set when some nest meets I_h strictly
    more than J_h, of the second when some nest meets J_h strictly more.
    """
    left = right = 0
    for h, (mi, mj) in enumerate(dpairs):
        for nm in nest_masks:
            ci = (nm & mi).bit_count()
            cj = (nm & mj).bit_count()
            if ci > cj:
                left |= 1 << h
                break
        for nm in nest_masks:
            ci = (nm & mi).bit_count()
            cj = (nm & mj).bit_count()
            if ci < cj:
                right |= 1 << h
                break
    return left, right


def pair_in_image(t: PlanarTree, left: Nesting, right: Nesting) -> bool:
    """The universal formula in the principal chamber.

    True iff for every (I, J) in D(n-1) some nest N of ``left`` has
    |N & I| > |N & J| or some nest N' of ``right`` has |N' & I| < |N' & J|.
    """
    m = t.n - 1
    dpairs = _dpair_masks(m)
    lmasks = [_mask(nest) for nest in left.nests]
    rmasks = [_mask(nest) for nest in right.nests]
    lmask, _ = _formula_masks(lmasks, dpairs)
    _, rmask = _formula_masks(rmasks, dpairs)
    full = (1 << len(dpairs)) - 1
    return (lmask | rmask) == full


def _nesting_tables(t: PlanarTree):
    """Per-nesting win masks and sizes, for the fast pair scans."""
    m = t.n - 1
    dpairs = _dpair_masks(m)
    nestings = enumerate_nestings(t)
    lmasks, rmasks, sizes = [], [], []
    for nst in nestings:
        nm = [_mask(nest) for nest in nst.nests]
        lm, rm = _formula_masks(nm, dpairs)
        lmasks.append(lm)
        rmasks.append(rm)
        sizes.append(len(nst.nests))
    full = (1 << len(dpairs)) - 1
    return nestings, lmasks, rmasks, sizes, full


def _scan_pairs(t: PlanarTree):
    "Indices (a, b) of complementary-dimension pairs passing the formula."
    if t.n == 1:
        return enumerate_nestings(t), [(0, 0)]
    nestings, lmasks, rmasks, sizes, full = _nesting_tables(t)
    by_size = {}
    for idx, size in enumerate(sizes):
        by_size.setdefault(size, []).append(idx)
    out = []
    for size, lefts in sorted(by_size.items()):
        rights = by_size.get(t.n - size)
        if not rights:
            continue
        for a in lefts:
            need = full & ~lmasks[a]
            for b in rights:
                if need & ~rmasks[b] == 0:
                    out.append((a, b))
    return nestings, out


def diagonal_image(t: PlanarTree) -> tuple[DiagonalPair, ...]:
    """All complementary-dimension pairs in the image, deterministically ordered.

    Complementary means dim(left) + dim(right) = dim of the operahedron;
    lower-dimensional cells of the image arise by taking faces and are
    not listed separately.
    """
    nestings, hits = _scan_pairs(t)
    pairs = [DiagonalPair(t, nestings[a], nestings[b]) for a, b in hits]
    pairs.sort(key=DiagonalPair.key)
    return tuple(pairs)


def diagonal_count(t: PlanarTree) -> int:
    "Number of complementary pairs in the image, without materializing them."
    _, hits = _scan_pairs(t)
    return len(hits)


def pair_in_image_cone(
    t: PlanarTree, left: Nesting, right: Nesting, v=None
) -> bool:
    """Independent geometric oracle: v in cone(-N(F) u N(G)), exactly.

    The default vector is the principal powers-of-two vector; any
    wall-avoiding vector of the same chamber gives the same answer.
    """
    m = t.n - 1
    if v is None:
        v = principal_vector(m)
    v = frac_vec(v)
    gens = []
    for g in normal_cone(t, left).generators:
        gens.append(tuple(-x for x in g))
    gens.extend(normal_cone(t, right).generators)
    from .exact import ConeGenerators

    return bool(cone_contains(ConeGenerators.of(m, gens), v))


def _reflect_hrep(h: HRep, z) -> HRep:
    "H-representation of the reflection x -> 2z - x."
    z = frac_vec(z)
    eqs = [
        (tuple(-a for a in row), b - 2 * dot(row, z)) for row, b in h.equalities
    ]
    ineqs = [
        (tuple(-a for a in row), b - 2 * dot(row, z)) for row, b in h.inequalities
    ]
    return HRep.of(h.dim, eqs, ineqs)


def bot_top_point(t: PlanarTree, weight, z, v=None):
    """Pointwise bot-top diagonal over a base point z of the polytope.

    Intersects the realization with its reflection through z, picks the
    unique minimal and maximal vertices along v, and returns
    ``(bm, tp, bm carrier, tp carrier)`` where the carriers are the
    nestings of the smallest faces of P containing the two points.
    """
    P = loday_polytope(t, weight)
    z = frac_vec(z)
    if not P.hrep.contains(z):
        raise PointOutsidePolytopeError("z is not in the polytope")
    if v is None:
        v = principal_vector(t.n - 1)
    v = frac_vec(v)
    reflected = _reflect_hrep(P.hrep, z)
    blended = HRep.of(
        P.hrep.dim,
        P.hrep.equalities + reflected.equalities,
        P.hrep.inequalities + reflected.inequalities,
    )
    try:
        verts = vertices_of(blended)
    except EmptyRegionError:
        raise PointOutsidePolytopeError("the reflection misses the polytope")
    values = [dot(p, v) for p in verts]
    bm = min(zip(values, verts))[1]
    tp = max(zip(values, verts))[1]
    if sum(1 for val in values if val == dot(bm, v)) > 1:
        raise WallVectorError("minimum is not unique; v crosses a wall")
    if sum(1 for val in values if val == dot(tp, v)) > 1:
        raise WallVectorError("maximum is not unique; v crosses a wall")
    if tuple(2 * zi - xi for zi, xi in zip(z, bm)) != tp:
        raise ArithmeticError("bot and top are not reflections of each other")
    return bm, tp, P.carrier(bm), P.carrier(tp)


def barycenter(points):
    points = [frac_vec(p) for p in points]
    k = Fraction(len(points))
    return tuple(sum(col, Fraction(0)) / k for col in zip(*points))


def face_barycenter(t: PlanarTree, nesting: Nesting, weight=None):
    return barycenter([p for _, p in face_vertices(t, nesting, weight)])


def pair_midpoint(t: PlanarTree, left: Nesting, right: Nesting, weight=None):
    "The canonical base point (barycenter(F) + barycenter(G)) / 2 of a pair."
    bf = face_barycenter(t, left, weight)
    bg = face_barycenter(t, right, weight)
    return tuple((a + b) / 2 for a, b in zip(bf, bg))


def coarsen_nest(t_target: PlanarTree, nest) -> tuple[frozenset[int], ...]:
    """Decompose an edge set into the minimal disjoint family of target nests.

    The pieces are the connected components of the edge set in the
    target tree; their number exceeds one exactly when the face
    dimension drops under the coarsening projection.
    """
    remaining = set(nest)
    parts = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        grown = True
        while grown:
            grown = False
            for e in list(remaining - comp):
                pe = set(t_target.edge_endpoints(e))
                if any(pe & set(t_target.edge_endpoints(f)) for f in comp):
                    comp.add(e)
                    grown = True
        parts.append(frozenset(comp))
        remaining -= comp
    for part in parts:
        if not is_nest(t_target, part):
            raise ArithmeticError("component is not a nest")
    return tuple(sorted(parts, key=sorted))


def coarsen(t_target: PlanarTree, nesting: Nesting) -> Nesting:
    "Coarsening projection on nestings: decompose every nest, take the union."
    if t_target.n - 1 != nesting.tree.n - 1:
        raise TreeError("the source and target trees must have the same edge count")
    nests = set()
    for nest in nesting.nests:
        nests.update(coarsen_nest(t_target, nest))
    return Nesting(t_target, frozenset(nests))


def diagonal_via_projection(t: PlanarTree) -> tuple[DiagonalPair, ...]:
    """Image of the diagonal computed by projecting the permutahedron image.

    Applies the coarsening projection to every complementary pair of the
    2-leveled tree with the same edge count and keeps the pairs whose
    dimensions are preserved on both sides.
    """
    source = two_leveled_tree(t.n)
    out = {}
    for pair in diagonal_image(source):
        left = coarsen(t, pair.left)
        right = coarsen(t, pair.right)
        if len(left.nests) == len(pair.left.nests) and len(right.nests) == len(
            pair.right.nests
        ):
            out[(left.key(), right.key())] = DiagonalPair(t, left, right)
    pairs = sorted(out.values(), key=DiagonalPair.key)
    return tuple(pairs)


def _extreme_vertex_nesting(t, nesting, v, weight, sense):
    pts = face_vertices(t, nesting, weight)
    values = [(dot(p, v), nst) for nst, p in pts]
    pick = min if sense == "min" else max
    best = pick(values, key=lambda pair: pair[0])
    ties = [nst for val, nst in values if val == best[0]]
    if len(ties) > 1:
        raise WallVectorError("extreme vertex of the face is not unique")
    return best[1]


def tp_bm_filter(
    t: PlanarTree, left: Nesting, right: Nesting, v=None, weight=None
) -> bool:
    """The necessary condition tp(F) <= bm(G) in the vertex poset.

    Geometric path on any tree: compare the v-maximal vertex of the left
    face with the v-minimal vertex of the right face in the poset of
    maximal nestings.  On 2-leveled trees the combinatorial inversion-set
    path is computed as well and the two must agree.
    """
    m = t.n - 1
    if v is None:
        v = principal_vector(m)
    v = frac_vec(v)
    if not is_principal(v, m):
        raise WallVectorError("the filter needs a principal orientation vector")
    tp_left = _extreme_vertex_nesting(t, left, v, weight, "max")
    bm_right = _extreme_vertex_nesting(t, right, v, weight, "min")
    geometric = vertex_leq(t, tp_left, bm_right)
    if t.is_two_leveled:
        combinatorial = _tp_bm_two_leveled(t, left, right)
        if combinatorial != geometric:
            raise ArithmeticError(
                "inversion-set and vertex-poset answers disagree"
            )
    return geometric


def _inversions(word) -> frozenset:
    "Inversion pairs (i, j), i < j with i appearing after j, of a permutation word."
    pos = {x: k for k, x in enumerate(word)}
    out = set()
    for i in pos:
        for j in pos:
            if i < j and pos[i] > pos[j]:
                out.add((i, j))
    return frozenset(out)


def _tp_bm_two_leveled(t, left, right) -> bool:
    """Inversion-set comparison through the ordered-partition labels.

    tp(F) refines every block of F into strictly decreasing singletons,
    bm(G) into increasing ones; weak order is inclusion of inversions.
    """
    tp_word = []
    for block in nesting_partition(t, left):
        tp_word.extend(sorted(block, reverse=True))
    bm_word = []
    for block in nesting_partition(t, right):
        bm_word.extend(sorted(block))
    return _inversions(tp_word) <= _inversions(bm_word)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("OPERAHEDRA_JOBS", "1")))
    except ValueError:
        return 1
