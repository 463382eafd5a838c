"""Exact rational linear algebra, cone queries and small polytope conversions.

Everything here is computed over the rationals with arbitrary precision:
vectors are tuples of ``fractions.Fraction`` and the hot loops clear
denominators and work on plain integers.  Cone membership is an exact
phase-1 simplex returning either nonnegative coefficients or a Farkas
certificate; vertex and facet enumeration are intended for dimension at
most 4 after restriction to the affine hull.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class DimensionMismatchError(ValueError):
    "Raised when vector dimensions disagree."


class EmptyRegionError(ValueError):
    "Raised when an H-representation has no feasible point."


class UnboundedRegionError(ValueError):
    "Raised when an H-representation is feasible but unbounded."


def frac_vec(seq) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in seq)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatchError("%d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def smul(c, u):
    c = Fraction(c)
    return tuple(c * a for a in u)


def integerize(vec) -> tuple[int, ...]:
    "Smallest positive multiple of a rational vector with integer entries."
    vec = frac_vec(vec)
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in vec)


def primitive(vec) -> tuple[int, ...]:
    "Integerize and divide by the gcd; zero vectors stay zero."
    ints = integerize(vec)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g <= 1:
        return ints
    return tuple(x // g for x in ints)


def sign_normalized(vec) -> tuple[int, ...]:
    "Primitive vector flipped so its first nonzero entry is positive."
    v = primitive(vec)
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _echelon(rows):
    "Row echelon form over the rationals; returns (rows, pivot columns)."
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return [], []
    cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows) -> int:
    return len(_echelon(rows)[1])


def nullspace(rows, dim: int) -> list[tuple[Fraction, ...]]:
    "A basis of {x : Rx = 0} inside the given ambient dimension."
    if not rows:
        return [
            tuple(Fraction(1 if i == j else 0) for j in range(dim))
            for i in range(dim)
        ]
    ech, pivots = _echelon(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for c in free:
        vec = [Fraction(0)] * dim
        vec[c] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -ech[r][c]
        basis.append(tuple(vec))
    return basis


def solve_affine(rows, rhs, dim: int):
    """Solve Rx = b; returns (particular solution, nullspace basis) or None.

    ``rows`` may be empty, in which case every point of the ambient
    space is a solution.
    """
    if not rows:
        origin = tuple(Fraction(0) for _ in range(dim))
        return origin, nullspace([], dim)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = _echelon(aug)
    if dim in pivots:
        return None  # a row reduced to 0 = 1
    x = [Fraction(0)] * dim
    for r, p in enumerate(pivots):
        x[p] = ech[r][dim]
    return tuple(x), nullspace(rows, dim)


# ---------------------------------------------------------------------------
# exact simplex


def _phase1(A, b):
    """Feasibility of {x >= 0 : Ax = b} by an exact phase-1 simplex.

    Returns ``(x, None)`` on success or ``(None, y)`` with the Farkas
    certificate y.A <= 0 (componentwise) and y.b > 0.  Bland's rule
    guarantees termination.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    signs = [1 if bi >= 0 else -1 for bi in b]
    rows = [
        [Fraction(signs[i]) * Fraction(x) for x in A[i]]
        + [Fraction(1 if j == i else 0) for j in range(m)]
        + [Fraction(signs[i]) * Fraction(b[i])]
        for i in range(m)
    ]
    total = n + m
    basis = [n + i for i in range(m)]
    # reduced-cost row for min(sum of artificials): z_j = c_j - sum of rows
    z = [Fraction(0)] * (total + 1)
    for j in range(total + 1):
        col = sum(rows[i][j] for i in range(m))
        z[j] = (Fraction(1) if n <= j < total else Fraction(0)) - col

    while True:
        enter = next((j for j in range(total) if z[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (rows[i][total] / rows[i][enter], basis[i], i)
            for i in range(m)
            if rows[i][enter] > 0
        ]
        if not ratios:  # cannot happen for a phase-1 problem
            raise ArithmeticError("phase-1 simplex became unbounded")
        _, _, leave = min(ratios)
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, rows[leave])]
        basis[leave] = enter

    value = -z[total]
    if value == 0:
        x = [Fraction(0)] * n
        for i, bi in enumerate(basis):
            if bi < n:
                x[bi] = rows[i][total]
        return tuple(x), None
    # dual multipliers off the artificial columns, undoing the row signs
    y = tuple(signs[i] * (Fraction(1) - z[n + i]) for i in range(m))
    return None, y


@dataclass(frozen=True)
class ConeGenerators:
    "A finitely generated cone: all nonnegative combinations of the generators."

    dim: int
    generators: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, dim, generators) -> "ConeGenerators":
        gens = tuple(frac_vec(g) for g in generators)
        for g in gens:
            if len(g) != dim:
                raise DimensionMismatchError(
                    "generator of length %d in dimension %d" % (len(g), dim)
                )
        return cls(dim, gens)


@dataclass(frozen=True)
class ConeMembership:
    """Outcome of a cone membership test, with its exact certificate.

    On success ``coefficients`` are nonnegative with G.lambda = v; on
    failure ``certificate`` is a separating functional w with <w, g> <= 0
    for every generator and <w, v> > 0.
    """

    contains: bool
    coefficients: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.contains


def cone_contains(cone: ConeGenerators, v) -> ConeMembership:
    "Exact membership of v in the cone, with a Farkas certificate on failure."
    v = frac_vec(v)
    if len(v) != cone.dim:
        raise DimensionMismatchError(
            "vector of length %d in dimension %d" % (len(v), cone.dim)
        )
    if all(x == 0 for x in v):
        return ConeMembership(True, tuple(Fraction(0) for _ in cone.generators))
    if not cone.generators:
        return ConeMembership(False, certificate=v)
    A = [[g[i] for g in cone.generators] for i in range(cone.dim)]
    x, y = _phase1(A, list(v))
    if x is not None:
        return ConeMembership(True, x)
    return ConeMembership(False, certificate=y)


def cone_codim(cone: ConeGenerators) -> int:
    "Ambient dimension minus the rank of the generator span."
    return cone.dim - rank(list(cone.generators))


# ---------------------------------------------------------------------------
# H- and V-representations


@dataclass(frozen=True)
class HRep:
    """A rational H-representation: equations <a,x> = b and inequalities <a,x> >= b."""

    dim: int
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    @classmethod
    def of(cls, dim, equalities, inequalities) -> "HRep":
        eqs = tuple((frac_vec(a), Fraction(b)) for a, b in equalities)
        ineqs = tuple((frac_vec(a), Fraction(b)) for a, b in inequalities)
        for a, _ in eqs + ineqs:
            if len(a) != dim:
                raise DimensionMismatchError("constraint of wrong dimension")
        return cls(dim, eqs, ineqs)

    def contains(self, x) -> bool:
        x = frac_vec(x)
        return all(dot(a, x) == b for a, b in self.equalities) and all(
            dot(a, x) >= b for a, b in self.inequalities
        )

    def tight_inequalities(self, x) -> tuple[int, ...]:
        x = frac_vec(x)
        return tuple(
            i for i, (a, b) in enumerate(self.inequalities) if dot(a, x) == b
        )


def _det_int(rows):
    "Determinant of a small integer matrix (Bareiss elimination)."
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _cramer_int(rows, rhs):
    "Solve an integer system by Cramer's rule; returns (numerators, denominator) or None."
    d = _det_int(rows)
    if d == 0:
        return None
    n = len(rows)
    nums = []
    for j in range(n):
        m = [rows[i][:j] + [rhs[i]] + rows[i][j + 1 :] for i in range(n)]
        nums.append(_det_int(m))
    if d < 0:
        d = -d
        nums = [-x for x in nums]
    return nums, d


def _restrict(h: HRep):
    """Parametrize the affine hull of the equalities and push the inequalities through.

    Returns ``(x0, basis, rows, rhs)`` with x = x0 + basis.u and integer
    inequality data rows.u >= rhs, or raises EmptyRegionError.
    """
    eq_rows = [list(a) for a, _ in h.equalities]
    eq_rhs = [b for _, b in h.equalities]
    sol = solve_affine(eq_rows, eq_rhs, h.dim)
    if sol is None:
        raise EmptyRegionError("inconsistent equality constraints")
    x0, basis = sol
    rows, rhs = [], []
    for a, b in h.inequalities:
        coeffs = [dot(a, bvec) for bvec in basis]
        const = b - dot(a, x0)
        if all(c == 0 for c in coeffs):
            if const > 0:
                raise EmptyRegionError("inequality violated on the affine hull")
            continue
        ints = integerize(list(coeffs) + [const])
        rows.append(list(ints[:-1]))
        rhs.append(ints[-1])
    return x0, basis, rows, rhs


def _recession_nontrivial(rows, d) -> bool:
    "Whether {u : rows.u >= 0} contains a nonzero vector."
    for i in range(d):
        for s in (1, -1):
            # feasibility of rows.u - slack = 0, u_i = s, with split signs
            A, b = [], []
            for r in rows:
                A.append(
                    [Fraction(x) for x in r]
                    + [Fraction(-x) for x in r]
                    + [Fraction(0)] * len(rows)
                )
            for k, r in enumerate(rows):
                A[k][2 * d + k] = Fraction(-1)
            row = [Fraction(0)] * (2 * d + len(rows))
            row[i] = Fraction(1)
            row[d + i] = Fraction(-1)
            A.append(row)
            b = [Fraction(0)] * len(rows) + [Fraction(s)]
            x, _ = _phase1(A, b)
            if x is not None:
                return True
    return False


def vertices_of(h: HRep) -> tuple[tuple[Fraction, ...], ...]:
    """Exact vertex enumeration of a bounded H-representation.

    Restricts to the affine hull, enumerates the basic solutions of all
    d-subsets of inequalities by integer Cramer elimination, and keeps
    the feasible ones.  Empty and unbounded regions raise
    EmptyRegionError and UnboundedRegionError respectively.
    """
    x0, basis, rows, rhs = _restrict(h)
    d = len(basis)
    if d == 0:
        if h.contains(x0):
            return (x0,)
        raise EmptyRegionError("the affine hull misses the inequalities")
    if _recession_nontrivial(rows, d):
        # distinguish empty from unbounded: look for any feasible point
        A = [
            [Fraction(x) for x in r]
            + [Fraction(-x) for x in r]
            + [Fraction(0)] * len(rows)
            for r in rows
        ]
        for k in range(len(rows)):
            A[k][2 * d + k] = Fraction(-1)
        feas, _ = _phase1(A, [Fraction(x) for x in rhs])
        if feas is None:
            raise EmptyRegionError("no feasible point")
        raise UnboundedRegionError("the region has a nonzero recession direction")

    m = len(rows)
    found = {}
    for subset in itertools.combinations(range(m), d):
        sol = _cramer_int([rows[i] for i in subset], [rhs[i] for i in subset])
        if sol is None:
            continue
        nums, den = sol
        feasible = True
        for i in range(m):
            if sum(rows[i][j] * nums[j] for j in range(d)) < rhs[i] * den:
                feasible = False
                break
        if feasible:
            found[(tuple(nums), den)] = None
    if not found:
        raise EmptyRegionError("no feasible basic solution")
    vertices = set()
    for nums, den in found:
        u = [Fraction(x, den) for x in nums]
        x = list(x0)
        for coord, bvec in zip(u, basis):
            x = [xi + coord * bi for xi, bi in zip(x, bvec)]
        vertices.add(tuple(x))
    return tuple(sorted(vertices))


def _coordinates_in(basis, vec):
    "Coordinates of vec in the span of an independent basis (exact least squares)."
    k = len(basis)
    gram = [[dot(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    rhs = [dot(basis[i], vec) for i in range(k)]
    aug = [gram[i] + [rhs[i]] for i in range(k)]
    ech, pivots = _echelon(aug)
    coords = [Fraction(0)] * k
    for r, p in enumerate(pivots):
        coords[p] = ech[r][k]
    return coords


def facets_from_vertices(points) -> HRep:
    """Irredundant facet description of the convex hull of finitely many points.

    Returns affine-hull equations together with one inequality per
    facet, oriented so every input point satisfies <a,x> >= b.  This is
    the polar counterpart of :func:`vertices_of`.
    """
    pts = sorted({frac_vec(p) for p in points})
    if not pts:
        raise EmptyRegionError("at least one point is required")
    dim = len(pts[0])
    p0 = pts[0]
    diffs = [vsub(p, p0) for p in pts[1:]]
    ech, pivots = _echelon(diffs) if diffs else ([], [])
    basis = []
    for r, _ in enumerate(pivots):
        basis.append(tuple(ech[r]))
    normals = nullspace(diffs, dim) if diffs else nullspace([], dim)
    equalities = [(frac_vec(a), dot(a, p0)) for a in normals]
    d = len(basis)
    if d == 0:
        return HRep.of(dim, equalities, [])

    coords = [_coordinates_in(basis, vsub(p, p0)) for p in pts]
    facets = {}
    for subset in itertools.combinations(range(len(pts)), d):
        q0 = coords[subset[0]]
        rows = [vsub(coords[i], q0) for i in subset[1:]]
        kernel = nullspace(rows, d)
        if len(kernel) != 1:
            continue
        normal = kernel[0]
        offset = dot(normal, q0)
        sides = [dot(normal, c) - offset for c in coords]
        if all(s >= 0 for s in sides):
            pass
        elif all(s <= 0 for s in sides):
            normal = smul(-1, normal)
            offset = -offset
        else:
            continue
        key = primitive(list(normal) + [offset])
        facets[key] = None

    gram = [[dot(basis[i], basis[j]) for j in range(d)] for i in range(d)]
    inequalities = []
    for key in facets:
        g, offset = [Fraction(x) for x in key[:-1]], Fraction(key[-1])
        # <g, u(x)> = <a, x - p0> for a = sum_j y_j basis[j] with Gram.y = g
        aug = [gram[i] + [g[i]] for i in range(d)]
        ech, pivots = _echelon(aug)
        y = [Fraction(0)] * d
        for r, p in enumerate(pivots):
            y[p] = ech[r][d]
        a_x = tuple(
            sum(y[j] * basis[j][i] for j in range(d)) for i in range(dim)
        )
        b_x = offset + dot(a_x, p0)
        inequalities.append((a_x, b_x))
    inequalities.sort(key=lambda ab: primitive(list(ab[0]) + [ab[1]]))
    return HRep.of(dim, equalities, inequalities)


def extremal_vertex(points, w, sense: str = "min"):
    """An optimizer of <., w> over finitely many points and whether it is unique."""
    pts = [frac_vec(p) for p in points]
    if not pts:
        raise EmptyRegionError("at least one point is required")
    w = frac_vec(w)
    values = [dot(p, w) for p in pts]
    best = min(values) if sense == "min" else max(values)
    argbest = [p for p, v in zip(pts, values) if v == best]
    return argbest[0], len(argbest) == 1
