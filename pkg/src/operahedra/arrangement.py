"""The fundamental hyperplane arrangement of permutahedra and operahedra.

For the (m)-edge permutahedron the arrangement consists of the
hyperplanes sum_{i in I} x_i = sum_{j in J} x_j over all pairs of
disjoint equal-size subsets with min(I u J) in I; the arrangement of any
other operahedron with the same edge count is a subset of it.  A
principal orientation vector lies on the positive side of every
hyperplane and fixes the chamber used by the diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import nullspace, rank, sign_normalized
from .realization import characteristic_vector
from .trees import Nesting, PlanarTree, enumerate_nestings


class WallVectorError(ValueError):
    "Raised when an orientation vector lies on an arrangement hyperplane."

    def __init__(self, pair):
        self.pair = pair
        super().__init__(
            "vector lies on the wall of %r" % (pair,)
        )


@dataclass(frozen=True)
class DPair:
    "Index pair (I, J) of an equal-sum hyperplane, normalized so min(I u J) is in I."

    I: frozenset[int]
    J: frozenset[int]

    def __post_init__(self):
        if not self.I or len(self.I) != len(self.J) or self.I & self.J:
            raise ValueError("I and J must be disjoint, nonempty and of equal size")
        if min(self.I | self.J) not in self.I:
            raise ValueError("the minimum of I u J lies in I")

    @classmethod
    def of(cls, I, J) -> "DPair":
        I, J = frozenset(I), frozenset(J)
        if I and J and min(I | J) in J:
            I, J = J, I
        return cls(I, J)

    def key(self):
        return (len(self.I), tuple(sorted(self.I)), tuple(sorted(self.J)))

    def normal(self, m: int) -> tuple[Fraction, ...]:
        "The normal with +1 on I and -1 on J; positive on principal vectors."
        return tuple(
            Fraction(1 if i in self.I else -1 if i in self.J else 0)
            for i in range(1, m + 1)
        )

    def __repr__(self):
        return "DPair(%r, %r)" % (sorted(self.I), sorted(self.J))


@lru_cache(maxsize=None)
def generate_D(m: int) -> tuple[DPair, ...]:
    "All hyperplane index pairs of D(m), deterministically ordered."
    out = []
    universe = range(1, m + 1)
    for size in range(1, m // 2 + 1):
        for I in itertools.combinations(universe, size):
            rest = [x for x in universe if x not in I]
            for J in itertools.combinations(rest, size):
                if min(min(I), min(J)) == min(I):
                    out.append(DPair.of(I, J))
    out.sort(key=DPair.key)
    return tuple(out)


def principal_vector(m: int) -> tuple[Fraction, ...]:
    """The default chamber representative: descending powers of two.

    With v_j = 2^(m-j) the sum over I strictly dominates the sum over J
    for every pair of D(m), since the top power in I u J beats the sum
    of all smaller ones.
    """
    return tuple(Fraction(2 ** (m - j)) for j in range(1, m + 1))


def is_principal(v, m: int) -> bool:
    v = tuple(Fraction(x) for x in v)
    if len(v) != m:
        return False
    return all(
        sum(v[i - 1] for i in pair.I) > sum(v[j - 1] for j in pair.J)
        for pair in generate_D(m)
    )


def chamber_signature(v, m: int) -> tuple[int, ...]:
    """Signs of sum_I v - sum_J v over D(m); errors on a wall.

    Two wall-avoiding vectors with the same signature define the same
    bot-top diagonal.
    """
    v = tuple(Fraction(x) for x in v)
    signs = []
    for pair in generate_D(m):
        diff = sum(v[i - 1] for i in pair.I) - sum(v[j - 1] for j in pair.J)
        if diff == 0:
            raise WallVectorError(pair)
        signs.append(1 if diff > 0 else -1)
    return tuple(signs)


def arrangement_bruteforce(t: PlanarTree) -> tuple[tuple[int, ...], ...]:
    """Normal directions of the fundamental arrangement of an operahedron.

    Scans all pairs of faces: when the cone spanned by the two normal
    cones has codimension one, its orthogonal line is an arrangement
    normal.  Directions are normalized to trinary vectors with leading
    +1 (their guaranteed shape) and returned sorted.
    """
    m = t.n - 1
    if m < 1:
        return ()
    nestings = enumerate_nestings(t)
    rows_of = [
        sorted({tuple(characteristic_vector(t, nest)) for nest in nst.nests})
        for nst in nestings
    ]
    directions = set()
    seen_spans = set()
    for a in range(len(nestings)):
        for b in range(a, len(nestings)):
            rows = sorted(set(rows_of[a]) | set(rows_of[b]))
            span_key = tuple(rows)
            if span_key in seen_spans:
                continue
            seen_spans.add(span_key)
            if rank(rows) != m - 1:
                continue
            kernel = nullspace(rows, m)
            direction = sign_normalized(kernel[0])
            if any(x not in (-1, 0, 1) for x in direction):
                raise ArithmeticError(
                    "edge direction is not trinary: %r" % (direction,)
                )
            if sum(direction) != 0:
                raise ArithmeticError(
                    "edge direction has unbalanced signs: %r" % (direction,)
                )
            directions.add(direction)
    return tuple(sorted(directions))


def d_normals(m: int) -> tuple[tuple[int, ...], ...]:
    "The normals of D(m), sign-normalized like the brute-force directions."
    return tuple(
        sorted(sign_normalized(pair.normal(m)) for pair in generate_D(m))
    )
