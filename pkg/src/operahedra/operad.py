"""The signed differential graded colored operad on nested planar trees.

Basis elements are nested operadic trees: a tree, a vertex labeling and
a nesting; the degree of a cell is |E(t)| - |nesting|.  Composition
substitutes nested trees and carries the Koszul sign of re-sorting the
pieces into the increasing order on nests, where each piece weighs its
cell dimension.  The differential adds one nest at a time with the sign
-(-1)^{|E(t) - N|} sgn(sigma_N) on trivially nested trees and extends as
a derivation; the diagonal sends a top cell to the signed sum of its
image pairs and extends multiplicatively.

Signs have a geometric source of truth: every cell carries the
orientation induced by operadic composition from the bases
e_j = (1, 0, ..., -1, ..., 0) of top cells, and boundary and diagonal
signs are determinants comparing those orientations.  The combinatorial
admissible-edge rule is provided as a secondary cross-check only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagonal import diagonal_image
from .exact import frac_vec
from .realization import characteristic_vector
from .trees import (
    Nesting,
    NestingError,
    PlanarTree,
    TreeError,
    all_nests,
    contract_nest,
    increasing_order,
    nesting_pieces,
    substitute,
)


@dataclass(frozen=True)
class OperadicTree:
    """A nested planar tree with a vertex labeling.

    ``labels[v-1]`` is the name of vertex v under the bijection
    {1..n} -> V(t); the tree is left-recursive when the labeling is the
    canonical one.
    """

    tree: PlanarTree
    labels: tuple[int, ...]
    nesting: Nesting

    def __post_init__(self):
        if sorted(self.labels) != list(range(1, self.tree.n + 1)):
            raise TreeError("labels are a bijection onto 1..n")
        if self.nesting.tree != self.tree:
            raise NestingError("nesting belongs to a different tree")

    @classmethod
    def left_recursive(cls, tree: PlanarTree, nesting: Nesting | None = None):
        return cls(
            tree,
            tuple(range(1, tree.n + 1)),
            nesting if nesting is not None else Nesting.trivial(tree),
        )

    @property
    def is_left_recursive(self) -> bool:
        return self.labels == tuple(range(1, self.tree.n + 1))

    @property
    def degree(self) -> int:
        return (self.tree.n - 1) - len(self.nesting.nests)

    def vertex_named(self, name: int) -> int:
        return self.labels.index(name) + 1

    def with_nesting(self, nesting: Nesting) -> "OperadicTree":
        return OperadicTree(self.tree, self.labels, nesting)

    def key(self):
        return (self.tree.inputs, self.labels, self.nesting.key())

    def __repr__(self):
        return "OperadicTree(%r, labels=%r, nesting=%r)" % (
            self.tree.to_nested(),
            list(self.labels),
            list(map(list, self.nesting.key())),
        )


def labeling_sign(x: OperadicTree) -> int:
    "Parity of the labeling relative to the canonical one."
    perm = list(x.labels)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i + 1:
            j = perm[i] - 1
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


class SignedSum(dict):
    """A formal integer combination of basis elements, keyed canonically.

    Keys are basis elements (or tuples of them for the tensor square);
    zero coefficients are dropped eagerly.
    """

    def add(self, key, coeff: int):
        if coeff == 0:
            return
        new = self.get(key, 0) + coeff
        if new == 0:
            self.pop(key, None)
        else:
            self[key] = new

    def extend(self, other: "SignedSum", factor: int = 1):
        for key, coeff in other.items():
            self.add(key, factor * coeff)

    def is_zero(self) -> bool:
        return not self

    def __repr__(self):
        return "SignedSum(%r)" % (dict(self),)


# ---------------------------------------------------------------------------
# structural composition of cells with the increasing-order Koszul sign


def _piece_dims(nesting: Nesting) -> dict:
    "Cell dimension contributed by each nest: piece edge count minus one."
    return {
        nest: len(piece) - 1 for nest, piece in nesting_pieces(nesting).items()
    }


def _block_sort_sign(blocks) -> int:
    """Koszul parity of sorting labeled blocks.

    ``blocks`` is a list of (sort key, dimension); moving a block past
    another one costs the product of their dimensions.
    """
    sign = 1
    items = list(blocks)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i][0] > items[j][0]:
                if items[i][1] % 2 and items[j][1] % 2:
                    sign = -sign
    return sign


def _nest_order_key(nest):
    return (-len(nest), min(nest))


def compose_cells(
    t1: PlanarTree, n1: Nesting, i: int, t2: PlanarTree, n2: Nesting
):
    """Substitute nested trees and compute the re-sorting sign.

    Returns ``(tree, nesting, sign, substitution)`` where the naive word
    (pieces of the host in increasing order, then pieces of the guest)
    is compared against the increasing order of the composite nesting,
    each piece weighing its dimension.
    """
    sub = substitute(t1, i, t2, n1, n2)
    nesting = sub.nesting
    dims = _piece_dims(nesting)

    naive = []
    guest_all = frozenset(sub.edge_map_guest.values())
    from .trees import closure_vertices

    for nest in increasing_order(n1):
        img = frozenset(sub.edge_map_host[e] for e in nest)
        if i in closure_vertices(t1, nest):
            img |= guest_all
        naive.append(img)
    for nest in increasing_order(n2):
        naive.append(frozenset(sub.edge_map_guest[e] for e in nest))

    blocks = [(_nest_order_key(nest), dims[nest]) for nest in naive]
    sign = _block_sort_sign(blocks)
    return sub.tree, nesting, sign, sub


def compose(a: OperadicTree, i: int, b: OperadicTree) -> tuple[OperadicTree, int]:
    """Operadic partial composition at the vertex named i, with its sign.

    The composite labeling splices the guest names into position i; the
    sign is induced by the choice of increasing order on nestings.
    """
    v = a.vertex_named(i)
    if a.tree.arity(v) != b.tree.leaf_count:
        raise TreeError(
            "arity mismatch: vertex named %d has %d inputs, the guest has %d leaves"
            % (i, a.tree.arity(v), b.tree.leaf_count)
        )
    tree, nesting, sign, sub = compose_cells(a.tree, a.nesting, v, b.tree, b.nesting)
    k, l = a.tree.n, b.tree.n
    labels = [0] * tree.n
    for old, new in sub.vertex_map_host.items():
        j = a.labels[old - 1]
        labels[new - 1] = j if j < i else j + l - 1
    for old, new in sub.vertex_map_guest.items():
        labels[new - 1] = i + b.labels[old - 1] - 1
    return OperadicTree(tree, tuple(labels), nesting), sign


# ---------------------------------------------------------------------------
# the differential


def _split_last_piece(t: PlanarTree, nesting: Nesting):
    """Peel off the final piece of the increasing-order factorization.

    Returns ``(t_bar, nesting_bar, i0, t_tilde)``: the last nest is
    minimal, so its piece is the trivially nested subtree t(N); the rest
    of the nesting contracts onto t_bar and i0 is the collapsed vertex.
    """
    order = increasing_order(nesting)
    last = order[-1]
    t_bar, t_tilde, shuffle = contract_nest(t, last)
    back = {}
    for pos in range(1, t_bar.n):
        back[shuffle(pos)] = pos  # t-edge label -> t_bar edge label
    nests_bar = set()
    for nest in nesting.nests:
        if nest == last:
            continue
        img = frozenset(back[e] for e in nest if e in back)
        nests_bar.add(img)
    # contraction preserves the preorder of the surviving vertices, so the
    # collapsed vertex sits at the rank of the closure root among survivors
    from .trees import closure_vertices

    croot = min(closure_vertices(t, last))
    survivors = sorted(
        set(range(1, t.n + 1)) - (closure_vertices(t, last) - {croot})
    )
    i0 = survivors.index(croot) + 1
    return t_bar, Nesting(t_bar, frozenset(nests_bar)), i0, t_tilde


def _trivial_cell_diff(t: PlanarTree) -> dict:
    """Boundary of a top cell: one facet per proper nest.

    The coefficient of adding the nest N is -(-1)^{|E(t)-N|} sgn(sigma_N)
    with sigma_N the contraction shuffle.
    """
    out = {}
    trivial = t.trivial_nest
    for nest in all_nests(t):
        if nest == trivial:
            continue
        _, _, shuffle = contract_nest(t, nest)
        coeff = -((-1) ** (t.n - 1 - len(nest))) * shuffle.sign
        key = Nesting(t, frozenset({trivial, nest})).key()
        out[key] = coeff
    return out


@lru_cache(maxsize=None)
def _cell_diff(t: PlanarTree, nesting_key) -> tuple:
    """Coefficients of the boundary of an arbitrary cell.

    Extends the top-cell formula as a derivation along the canonical
    factorization x = s0 (A o_i B), so that
    d(x) = s0 (dA o B + (-1)^{|A|} A o dB).
    """
    nesting = Nesting.of(t, nesting_key)
    if len(nesting.nests) <= 1:
        return tuple(sorted(_trivial_cell_diff(t).items()))
    t_bar, n_bar, i0, t_tilde = _split_last_piece(t, nesting)
    triv_tilde = Nesting.trivial(t_tilde)
    _, back_nesting, s0, _ = compose_cells(t_bar, n_bar, i0, t_tilde, triv_tilde)
    if back_nesting != nesting:
        raise ArithmeticError("factorization failed to reconstruct the cell")
    out = SignedSum()
    for key, coeff in _cell_diff(t_bar, n_bar.key()):
        _, new_nesting, s, _ = compose_cells(
            t_bar, Nesting.of(t_bar, key), i0, t_tilde, triv_tilde
        )
        out.add(new_nesting.key(), s0 * coeff * s)
    deg_a = (t_bar.n - 1) - len(n_bar.nests)
    for key, coeff in _cell_diff(t_tilde, triv_tilde.key()):
        _, new_nesting, s, _ = compose_cells(
            t_bar, n_bar, i0, t_tilde, Nesting.of(t_tilde, key)
        )
        out.add(new_nesting.key(), s0 * coeff * s * ((-1) ** deg_a))
    return tuple(sorted(out.items()))


def differential(x: OperadicTree) -> SignedSum:
    """Boundary of a basis element in the dg operad.

    On a trivially nested tree this realizes the facet sum with signs
    -(-1)^{|E(t) - N|} sgn(sigma_N); in general it is the unique
    derivation extending it.  Labels ride along unchanged.
    """
    out = SignedSum()
    if x.degree == 0:
        return out
    for key, coeff in _cell_diff(x.tree, x.nesting.key()):
        out.add(x.with_nesting(Nesting.of(x.tree, key)), coeff)
    return out


# ---------------------------------------------------------------------------
# geometric orientations


def orientation_basis(t: PlanarTree, nesting: Nesting) -> list:
    """The composition-induced oriented basis of a cell.

    Each piece contributes, in the increasing order of nests, the
    vectors e(f1) - e(fj) over its edges f1 < ... < fp in the labels of
    t; for the top cell of a left-recursive tree this is the standard
    basis e_j = (1, 0, ..., -1_{j+1}, ..., 0).
    """
    dim = t.n - 1
    pieces = nesting_pieces(nesting)
    vecs = []
    for nest in increasing_order(nesting):
        edges = sorted(pieces[nest])
        first = edges[0]
        for other in edges[1:]:
            vec = [Fraction(0)] * dim
            vec[first - 1] = Fraction(1)
            vec[other - 1] = Fraction(-1)
            vecs.append(tuple(vec))
    return vecs


def _e_coordinates(vec) -> tuple[Fraction, ...]:
    "Coordinates of a zero-sum vector in the basis e_j: drop and negate the tail."
    vec = frac_vec(vec)
    if sum(vec) != 0:
        raise ArithmeticError("vector is not in the zero-sum hyperplane")
    return tuple(-x for x in vec[1:])


def _det_sign(rows) -> int:
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    sign = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        if rows[c][c] < 0:
            sign = -sign
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[c][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign


def _project_zero_sum(vec):
    "Orthogonal projection onto the zero-sum hyperplane."
    vec = frac_vec(vec)
    shift = sum(vec) / len(vec)
    return tuple(x - shift for x in vec)


def boundary_sign_geometric(t: PlanarTree, facet: Nesting) -> int:
    """Orientation sign of a facet of the top cell, from first principles.

    Computes the determinant of the outward normal followed by the
    composition-induced basis of the facet, expressed in the top-cell
    basis; this must reproduce the coefficient of the facet in the
    differential of the top cell.
    """
    nontrivial = [nest for nest in facet.nests if nest != t.trivial_nest]
    if len(nontrivial) != 1:
        raise NestingError("a facet nesting has exactly one non-trivial nest")
    nest = nontrivial[0]
    outward = _project_zero_sum(
        tuple(-x for x in characteristic_vector(t, nest))
    )
    rows = [_e_coordinates(outward)]
    for vec in orientation_basis(t, facet):
        rows.append(_e_coordinates(vec))
    return _det_sign(rows)


def diagonal_pair_sign(t: PlanarTree, left: Nesting, right: Nesting) -> int:
    """Orientation sign of an image pair of the top-cell diagonal.

    The determinant compares the product orientation of the pair of
    faces with the ambient top-cell basis.
    """
    rows = [_e_coordinates(v) for v in orientation_basis(t, left)]
    rows += [_e_coordinates(v) for v in orientation_basis(t, right)]
    if len(rows) != max(0, t.n - 2):
        raise NestingError("the pair does not have complementary dimensions")
    sign = _det_sign(rows)
    if sign == 0:
        raise ArithmeticError("degenerate orientation determinant")
    return sign


# ---------------------------------------------------------------------------
# the diagonal on cells and the chain-map check


@lru_cache(maxsize=None)
def _cell_diagonal(t: PlanarTree, nesting_key) -> tuple:
    """Signed pairs of the diagonal of an arbitrary cell.

    Top cells take the geometric determinant sign on every image pair;
    other cells factor as x = s0 (A o B) and use
    diag(x) = s0 diag(A) o diag(B) with the Koszul interchange sign.
    """
    nesting = Nesting.of(t, nesting_key)
    out = SignedSum()
    if len(nesting.nests) <= 1:
        for pair in diagonal_image(t):
            out.add(
                (pair.left.key(), pair.right.key()),
                diagonal_pair_sign(t, pair.left, pair.right),
            )
        return tuple(sorted(out.items()))
    t_bar, n_bar, i0, t_tilde = _split_last_piece(t, nesting)
    triv_tilde = Nesting.trivial(t_tilde)
    _, back_nesting, s0, _ = compose_cells(t_bar, n_bar, i0, t_tilde, triv_tilde)
    if back_nesting != nesting:
        raise ArithmeticError("factorization failed to reconstruct the cell")
    for (al_key, ar_key), ca in _cell_diagonal(t_bar, n_bar.key()):
        al, ar = Nesting.of(t_bar, al_key), Nesting.of(t_bar, ar_key)
        dim_ar = (t_bar.n - 2) - (len(ar.nests) - 1)
        for (bl_key, br_key), cb in _cell_diagonal(t_tilde, triv_tilde.key()):
            bl, br = Nesting.of(t_tilde, bl_key), Nesting.of(t_tilde, br_key)
            dim_bl = (t_tilde.n - 2) - (len(bl.nests) - 1)
            _, left_nesting, sl, _ = compose_cells(t_bar, al, i0, t_tilde, bl)
            _, right_nesting, sr, _ = compose_cells(t_bar, ar, i0, t_tilde, br)
            koszul = -1 if (dim_ar % 2 and dim_bl % 2) else 1
            out.add(
                (left_nesting.key(), right_nesting.key()),
                s0 * ca * cb * sl * sr * koszul,
            )
    return tuple(sorted(out.items()))


def tensor_diagonal(x: OperadicTree) -> SignedSum:
    """The signed diagonal of a cell, as a sum over pairs of cells.

    On a top cell the unsigned support is exactly the image of the
    diagonal and every sign is the geometric orientation determinant.
    """
    out = SignedSum()
    for (lk, rk), coeff in _cell_diagonal(x.tree, x.nesting.key()):
        out.add(
            (x.with_nesting(Nesting.of(x.tree, lk)),
             x.with_nesting(Nesting.of(x.tree, rk))),
            coeff,
        )
    return out


def tensor_differential(pairs: SignedSum) -> SignedSum:
    "The differential of the tensor square: d(x) @ y + (-1)^{|x|} x @ d(y)."
    out = SignedSum()
    for (left, right), coeff in pairs.items():
        for dx, c in differential(left).items():
            out.add((dx, right), coeff * c)
        sign = (-1) ** left.degree
        for dy, c in differential(right).items():
            out.add((left, dy), coeff * c * sign)
    return out


def chain_map_check(t: PlanarTree) -> SignedSum:
    """Residual of the chain-map identity on the top cell.

    Computes diag(d(top)) - d_tensor(diag(top)); a zero residual is the
    statement that the diagonal is a morphism of chain complexes.
    """
    top = OperadicTree.left_recursive(t)
    lhs = SignedSum()
    for cell, coeff in differential(top).items():
        lhs.extend(tensor_diagonal(cell), coeff)
    rhs = tensor_differential(tensor_diagonal(top))
    residual = SignedSum()
    residual.extend(lhs)
    residual.extend(rhs, -1)
    return residual


# ---------------------------------------------------------------------------
# the combinatorial sign rule, as a secondary cross-check


def admissible_edges(nesting: Nesting) -> frozenset[int]:
    "Edges i with i != min(min N(i)): the admissible edges of a nesting."
    out = set()
    for e in nesting.tree.edges:
        nest = nesting.min_nest_of_edge(e)
        if e != min(nest):
            out.add(e)
    return frozenset(out)


def tensor_sign_combinatorial(
    t: PlanarTree, left: Nesting, right: Nesting
) -> int | None:
    """The admissible-edge sign rule; None when it fails to be a permutation.

    As printed, the rule can send two admissible edges to the same value
    on small examples, so collisions are reported rather than patched.
    """
    ad_left = admissible_edges(left)
    ad_right = admissible_edges(right)

    def ordered(nesting, admissible):
        out = []
        for nest in increasing_order(nesting):
            for e in sorted(nest):
                if e in admissible and nesting.min_nest_of_edge(e) == nest:
                    out.append(e)
        return out

    domain = [("L", e) for e in ordered(left, ad_left)] + [
        ("R", e) for e in ordered(right, ad_right)
    ]

    def inf(nesting, e):
        return min(nesting.min_nest_of_edge(e))

    values = []
    for side, e in domain:
        mine, other = (left, right) if side == "L" else (right, left)
        if e in ad_left and e in ad_right:
            a, b = inf(mine, e), inf(other, e)
            if a != 1 and a < b:
                values.append(a - 1)
                continue
        values.append(e - 1)
    if sorted(values) != list(range(1, len(values) + 1)):
        return None
    sign = 1
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] > values[j]:
                sign = -sign
    return sign * ((-1) ** len(ad_left & ad_right))
