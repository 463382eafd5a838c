"""Planar rooted trees, nests and nestings.

A reduced planar rooted tree is a rooted tree in which every internal
vertex has at least one input, with a fixed planar (left-to-right)
ordering of the inputs of each vertex.  Vertices are labeled 1..n and
internal edges 1..n-1 in clockwise preorder from the root, so that edge
i is the parent edge of vertex i+1.

A nest is a nonempty set of internal edges whose closure (the edges
together with their endpoints) is a connected subgraph.  A nesting is a
family of pairwise compatible nests containing the trivial nest E(t);
nestings index the faces of the operahedron of the tree.  This module
also provides edge contraction, tree substitution, the increasing order
on nestings, the poset of maximal nestings and the ordered-partition
bijection for 2-leveled trees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, cached_property


class TreeError(ValueError):
    "Raised on malformed trees or invalid tree operations."


class NestingError(ValueError):
    "Raised on sets of edges that do not form a nest or a nesting."


@dataclass(frozen=True)
class PlanarTree:
    """A reduced planar rooted tree with canonical clockwise labels.

    ``inputs[v-1]`` is the tuple of input slots of vertex ``v``; a slot
    is either 0 (a leaf) or the label of the child vertex.  Labels are
    forced to be the clockwise preorder numbering: vertex 1 is the root
    and the parent edge of vertex v is edge v-1.
    """

    inputs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.inputs)
        if n < 1:
            raise TreeError("a tree has at least one vertex")
        seen = []

        def visit(v):
            seen.append(v)
            slots = self.inputs[v - 1]
            if len(slots) == 0:
                raise TreeError("vertex %d has no inputs (tree not reduced)" % v)
            for s in slots:
                if s == 0:
                    continue
                if not (1 <= s <= n):
                    raise TreeError("slot %r of vertex %d out of range" % (s, v))
                visit(s)

        visit(1)
        if seen != list(range(1, n + 1)):
            raise TreeError("vertex labels are not in clockwise preorder")

    @classmethod
    def from_nested(cls, obj) -> "PlanarTree":
        """Build a tree from the recursive-array encoding.

        An internal vertex is the list of its inputs left to right and a
        leaf is the number 0; the outer list is the root.  For example
        ``[[0], [0], [0]]`` is the 2-leveled tree with four vertices.
        """
        if not isinstance(obj, (list, tuple)):
            raise TreeError("tree encoding must be a list, got %r" % (obj,))
        inputs = []

        def visit(node):
            if len(node) == 0:
                raise TreeError("vertex with no inputs (tree not reduced)")
            inputs.append(None)
            mine = len(inputs)
            slots = []
            for item in node:
                if item == 0:
                    slots.append(0)
                elif isinstance(item, (list, tuple)):
                    slots.append(visit(item))
                else:
                    raise TreeError("invalid slot %r" % (item,))
            inputs[mine - 1] = tuple(slots)
            return mine

        visit(obj)
        return cls(tuple(inputs))

    def to_nested(self):
        "Inverse of :meth:`from_nested`."

        def build(v):
            return [0 if s == 0 else build(s) for s in self.inputs[v - 1]]

        return build(1)

    @property
    def n(self) -> int:
        return len(self.inputs)

    @cached_property
    def parent(self) -> tuple[int, ...]:
        "``parent[v-1]`` is the parent vertex of v (0 for the root)."
        par = [0] * self.n
        for v in range(1, self.n + 1):
            for s in self.inputs[v - 1]:
                if s != 0:
                    par[s - 1] = v
        return tuple(par)

    @property
    def edges(self) -> range:
        return range(1, self.n)

    @property
    def trivial_nest(self) -> frozenset[int]:
        return frozenset(self.edges)

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        "Endpoints (parent, child) of edge e; edge e is the parent edge of vertex e+1."
        if not 1 <= e <= self.n - 1:
            raise TreeError("edge %d out of range" % e)
        return (self.parent[e], e + 1)

    @cached_property
    def leaf_count(self) -> int:
        return sum(1 for slots in self.inputs for s in slots if s == 0)

    def arity(self, v: int) -> int:
        return len(self.inputs[v - 1])

    @cached_property
    def is_linear(self) -> bool:
        "Every vertex is adjacent to at most two internal edges."
        deg = [0] * self.n
        for e in self.edges:
            p, c = self.edge_endpoints(e)
            deg[p - 1] += 1
            deg[c - 1] += 1
        return all(d <= 2 for d in deg)

    @cached_property
    def is_two_leveled(self) -> bool:
        "All internal edges share a common vertex."
        if self.n <= 2:
            return True
        for v in range(1, self.n + 1):
            if all(v in self.edge_endpoints(e) for e in self.edges):
                return True
        return False

    def descendants(self, v: int) -> frozenset[int]:
        "v together with all vertices below it."
        out = [v]
        for s in self.inputs[v - 1]:
            if s != 0:
                out.extend(self.descendants(s))
        return frozenset(out)

    def __repr__(self):
        return "PlanarTree(%r)" % (self.to_nested(),)


def canonical_labels(t: PlanarTree) -> PlanarTree:
    """Validate the canonical clockwise labeling of ``t`` and return it.

    The labels of a :class:`PlanarTree` are canonical by construction;
    this re-derives the preorder and the edge endpoints so callers can
    rely on edge i joining vertex i+1 to its parent.
    """
    # reconstruction through the structural encoding re-runs the preorder
    relabeled = PlanarTree.from_nested(t.to_nested())
    if relabeled != t:
        raise TreeError("stored labels disagree with clockwise preorder")
    return relabeled


def closure_vertices(t: PlanarTree, edges) -> frozenset[int]:
    "Vertices adjacent to at least one edge of ``edges``."
    out = set()
    for e in edges:
        p, c = t.edge_endpoints(e)
        out.add(p)
        out.add(c)
    return frozenset(out)


def is_nest(t: PlanarTree, edges) -> bool:
    "A nest is a nonempty edge set whose closure is connected."
    edges = set(edges)
    if not edges:
        return False
    if not all(1 <= e <= t.n - 1 for e in edges):
        raise NestingError("edge labels out of range: %r" % (sorted(edges),))
    # two edges are adjacent iff they share an endpoint; walk the closure
    start = next(iter(edges))
    todo = [start]
    seen = {start}
    while todo:
        e = todo.pop()
        pe, ce = t.edge_endpoints(e)
        for f in edges - seen:
            pf, cf = t.edge_endpoints(f)
            if {pe, ce} & {pf, cf}:
                seen.add(f)
                todo.append(f)
    return seen == edges


def compatible(t: PlanarTree, n1, n2) -> bool:
    """Whether two nests can live in a common nesting.

    They must be nested, or disjoint with no vertex shared between
    their closures.
    """
    n1, n2 = frozenset(n1), frozenset(n2)
    if n1 <= n2 or n2 <= n1:
        return True
    if n1 & n2:
        return False
    return not (closure_vertices(t, n1) & closure_vertices(t, n2))


def nest_key(nest) -> tuple[int, ...]:
    return tuple(sorted(nest))


@dataclass(frozen=True)
class Nesting:
    """A set of pairwise compatible nests of a tree, containing E(t).

    Indexes a face of the operahedron: the face has codimension equal to
    the number of non-trivial nests.  For the corolla the only nesting
    is the empty one.
    """

    tree: PlanarTree
    nests: frozenset[frozenset[int]]

    def __post_init__(self):
        t = self.tree
        if t.n == 1:
            if self.nests:
                raise NestingError("the corolla only carries the empty nesting")
            return
        if t.trivial_nest not in self.nests:
            raise NestingError("a nesting contains the trivial nest E(t)")
        for nest in self.nests:
            if not is_nest(t, nest):
                raise NestingError("%r is not a nest" % (sorted(nest),))
        for a, b in itertools.combinations(self.nests, 2):
            if not compatible(t, a, b):
                raise NestingError(
                    "incompatible nests %r and %r" % (sorted(a), sorted(b))
                )

    @classmethod
    def of(cls, t: PlanarTree, nests) -> "Nesting":
        return cls(t, frozenset(frozenset(nest) for nest in nests))

    @classmethod
    def trivial(cls, t: PlanarTree) -> "Nesting":
        return cls(t, frozenset() if t.n == 1 else frozenset({t.trivial_nest}))

    def key(self) -> tuple[tuple[int, ...], ...]:
        "Canonical sort key: the lexicographically sorted tuple of sorted nests."
        return tuple(sorted(nest_key(nest) for nest in self.nests))

    @property
    def codim(self) -> int:
        return len(self.nests) - (1 if self.tree.n >= 2 else 0)

    @property
    def dim(self) -> int:
        "Dimension of the corresponding face of the operahedron."
        return (self.tree.n - 2 if self.tree.n >= 2 else 0) - self.codim

    @property
    def is_maximal(self) -> bool:
        return len(self.nests) == self.tree.n - 1

    def with_nest(self, nest) -> "Nesting":
        return Nesting(self.tree, self.nests | {frozenset(nest)})

    def min_nest_of_edge(self, e: int) -> frozenset[int]:
        "The smallest nest containing edge e (the nests containing e form a chain)."
        chain = [nest for nest in self.nests if e in nest]
        if not chain:
            raise NestingError("edge %d is in no nest" % e)
        return min(chain, key=len)

    def __repr__(self):
        return "Nesting(%r)" % (list(map(list, self.key())),)


@lru_cache(maxsize=None)
def all_nests(t: PlanarTree) -> tuple[frozenset[int], ...]:
    "All nests of t, sorted by the canonical key."
    m = t.n - 1
    out = []
    for size in range(1, m + 1):
        for combo in itertools.combinations(range(1, m + 1), size):
            if is_nest(t, combo):
                out.append(frozenset(combo))
    return tuple(sorted(out, key=nest_key))


@lru_cache(maxsize=None)
def _nest_compat_masks(t: PlanarTree) -> tuple[int, ...]:
    nests = all_nests(t)
    k = len(nests)
    masks = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if compatible(t, nests[i], nests[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return tuple(masks)


@lru_cache(maxsize=None)
def enumerate_nestings(
    t: PlanarTree, max_only: bool = False
) -> tuple[Nesting, ...]:
    """All nestings of t (or only the maximal ones), deterministically ordered.

    Maximal nestings have cardinality n-1; the output is sorted by the
    canonical nesting key so repeated runs agree byte for byte.
    """
    if t.n == 1:
        return (Nesting.trivial(t),)
    nests = all_nests(t)
    trivial = t.trivial_nest
    proper = [nest for nest in nests if nest != trivial]
    index = {nest: i for i, nest in enumerate(nests)}
    masks = _nest_compat_masks(t)
    k = len(nests)
    target = t.n - 2 if max_only else None

    found = []

    def extend(chosen, allowed, start):
        if target is None or len(chosen) == target:
            found.append(tuple(chosen))
            if target is not None:
                return
        for pos in range(start, len(proper)):
            i = index[proper[pos]]
            if allowed >> i & 1:
                chosen.append(proper[pos])
                extend(chosen, allowed & masks[i], pos + 1)
                chosen.pop()

    extend([], (1 << k) - 1, 0)
    out = [Nesting(t, frozenset(ch) | {trivial}) for ch in found]
    out.sort(key=Nesting.key)
    return tuple(out)


@dataclass(frozen=True)
class Shuffle:
    """A (p, q)-shuffle recording how two blocks of edge labels interleave.

    ``mapping[i-1]`` is the image of i; the map is increasing on 1..p and
    on p+1..p+q.  The sign is the parity of the permutation.
    """

    p: int
    q: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        m = self.mapping
        if sorted(m) != list(range(1, self.p + self.q + 1)):
            raise TreeError("shuffle is not a permutation: %r" % (m,))
        if list(m[: self.p]) != sorted(m[: self.p]) or list(m[self.p :]) != sorted(
            m[self.p :]
        ):
            raise TreeError("map is not increasing on the two blocks")

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    @cached_property
    def sign(self) -> int:
        inv = 0
        m = self.mapping
        for i in range(len(m)):
            for j in range(i + 1, len(m)):
                if m[i] > m[j]:
                    inv += 1
        return -1 if inv % 2 else 1


def _relabel_tagged(tagged):
    """Canonically relabel a tagged tree.

    A tagged tree is ``(edge_tag, vertex_tag, slots)`` with slots either 0
    or tagged subtrees.  Returns the relabeled tree plus the maps
    {new edge label: edge tag} and {new vertex label: vertex tag}.
    """
    inputs = []
    edge_tags = {}
    vertex_tags = {}

    def visit(node):
        edge_tag, vertex_tag, slots = node
        inputs.append(None)
        mine = len(inputs)
        vertex_tags[mine] = vertex_tag
        if mine > 1:
            edge_tags[mine - 1] = edge_tag
        out = []
        for s in slots:
            out.append(0 if s == 0 else visit(s))
        inputs[mine - 1] = tuple(out)
        return mine

    visit(tagged)
    return PlanarTree(tuple(inputs)), edge_tags, vertex_tags


def contract_nest(t: PlanarTree, nest) -> tuple[PlanarTree, PlanarTree, Shuffle]:
    """Contract the induced subtree of a nest.

    Returns ``(t_bar, t_tilde, sigma)`` where t_bar is t with t(N)
    collapsed to a single vertex, t_tilde is the subtree t(N) as a
    standalone tree, and sigma is the (p, q)-shuffle sending the
    canonical edge labels of t_bar and of t_tilde (renumbered p+1..p+q)
    to their labels in t.
    """
    nest = frozenset(nest)
    if not is_nest(t, nest):
        raise NestingError("%r is not a nest of the tree" % (sorted(nest),))
    closure = closure_vertices(t, nest)
    croot = min(closure)  # preorder: the subtree root carries the least label

    def build_bar(v, edge_tag):
        if v == croot:
            slots = []

            def flatten(u):
                for s in t.inputs[u - 1]:
                    if s != 0 and s in closure:
                        flatten(s)
                    elif s == 0:
                        slots.append(0)
                    else:
                        slots.append(build_bar(s, s - 1))

            flatten(v)
            return (edge_tag, croot, slots)
        slots = [
            0 if s == 0 else build_bar(s, s - 1) for s in t.inputs[v - 1]
        ]
        return (edge_tag, v, slots)

    def build_tilde(v, edge_tag):
        slots = []
        for s in t.inputs[v - 1]:
            if s != 0 and s in closure:
                slots.append(build_tilde(s, s - 1))
            else:
                slots.append(0)
        return (edge_tag, v, slots)

    t_bar, bar_edges, bar_vertices = _relabel_tagged(build_bar(1, None))
    t_tilde, tilde_edges, tilde_vertices = _relabel_tagged(build_tilde(croot, None))
    p, q = t_bar.n - 1, t_tilde.n - 1
    mapping = tuple(bar_edges[i] for i in range(1, p + 1)) + tuple(
        tilde_edges[j] for j in range(1, q + 1)
    )
    return t_bar, t_tilde, Shuffle(p, q, mapping)


@dataclass(frozen=True)
class Substitution:
    """Result of substituting t2 at a vertex of t1.

    ``edge_map_host``/``edge_map_guest`` send the edges of t1/t2 to their
    labels in the composite; ``vertex_map_host`` is defined away from the
    substituted vertex.
    """

    tree: PlanarTree
    nesting: Nesting | None
    shuffle: Shuffle
    edge_map_host: dict
    edge_map_guest: dict
    vertex_map_host: dict
    vertex_map_guest: dict


def substitute(
    t1: PlanarTree,
    i: int,
    t2: PlanarTree,
    nesting1: Nesting | None = None,
    nesting2: Nesting | None = None,
) -> Substitution:
    """Tree substitution of t2 at vertex i of t1, with the induced nesting.

    The induced subtree of vertex i is replaced by t2: the leaves of t2
    absorb the input slots of i in planar order and the root edge of t2
    takes its output.  A nest of t1 whose closure contains vertex i is
    enlarged by all of E(t2); all other nests map along the edge
    relabeling.
    """
    if not (1 <= i <= t1.n):
        raise TreeError("vertex %d out of range" % i)
    if t1.arity(i) != t2.leaf_count:
        raise TreeError(
            "arity mismatch: vertex %d has %d inputs, the substituted tree has %d leaves"
            % (i, t1.arity(i), t2.leaf_count)
        )

    def build_host(u, edge_tag):
        if u == i:
            pending = list(t1.inputs[u - 1])

            def build_guest(w, edge_tag2):
                slots = []
                for s2 in t2.inputs[w - 1]:
                    if s2 == 0:
                        nxt = pending.pop(0)
                        if nxt == 0:
                            slots.append(0)
                        else:
                            slots.append(build_host(nxt, ("a", nxt - 1)))
                    else:
                        slots.append(build_guest(s2, ("b", s2 - 1)))
                return (edge_tag2, ("b", w), slots)

            return build_guest(1, edge_tag)
        slots = [
            0 if s == 0 else build_host(s, ("a", s - 1)) for s in t1.inputs[u - 1]
        ]
        return (edge_tag, ("a", u), slots)

    tree, edge_tags, vertex_tags = _relabel_tagged(build_host(1, None))
    a_edges, b_edges = {}, {}
    for new, (side, old) in edge_tags.items():
        (a_edges if side == "a" else b_edges)[old] = new
    a_vertices, b_vertices = {}, {}
    for new, (side, old) in vertex_tags.items():
        (a_vertices if side == "a" else b_vertices)[old] = new

    p, q = t1.n - 1, t2.n - 1
    mapping = tuple(a_edges[e] for e in sorted(a_edges)) + tuple(
        b_edges[e] for e in sorted(b_edges)
    )
    shuffle = Shuffle(p, q, mapping)

    nesting = None
    if nesting1 is not None and nesting2 is not None:
        guest_all = frozenset(b_edges.values())
        nests = set()
        for nest in nesting1.nests:
            img = frozenset(a_edges[e] for e in nest)
            if i in closure_vertices(t1, nest):
                img |= guest_all
            nests.add(img)
        for nest in nesting2.nests:
            nests.add(frozenset(b_edges[e] for e in nest))
        nesting = Nesting(tree, frozenset(nests))

    return Substitution(
        tree, nesting, shuffle, a_edges, b_edges, a_vertices, b_vertices
    )


def increasing_order(nesting: Nesting) -> tuple[frozenset[int], ...]:
    """The nests in decreasing cardinality, ties by increasing minimum.

    This total order fixes the unique substitution sequence writing a
    nested tree as an iterated composition of trivially nested trees.
    """
    return tuple(sorted(nesting.nests, key=lambda nest: (-len(nest), min(nest))))


def nesting_pieces(nesting: Nesting) -> dict:
    """For each nest, its piece edges: the nest minus its children nests.

    The piece of a nest N is the induced subtree t(N) with the maximal
    nests of the nesting strictly inside N contracted; its edge set in
    the labels of t is N minus the union of those children.
    """
    nests = sorted(nesting.nests, key=len)
    pieces = {}
    for idx, nest in enumerate(nests):
        children = []
        covered = set()
        # scan smaller nests from largest to smallest; keep the maximal ones
        for other in sorted(nests[:idx], key=len, reverse=True):
            if other < nest and not other <= covered:
                children.append(other)
                covered |= other
        pieces[nest] = frozenset(nest - covered)
    return pieces


@lru_cache(maxsize=None)
def covering_relations(t: PlanarTree) -> tuple[tuple[Nesting, Nesting], ...]:
    """The covering pairs of the poset of maximal nestings.

    Two maximal nestings are adjacent exactly when they differ by a
    single nest; the cover goes from the nesting whose private nest
    corresponds to the smaller edge under e -> min N(e).
    """
    if t.n < 2:
        return ()
    maxima = enumerate_nestings(t, max_only=True)
    by_subset = {}
    for nst in maxima:
        for nest in nst.nests:
            if nest == t.trivial_nest:
                continue
            by_subset.setdefault(frozenset(nst.nests - {nest}), []).append(nst)
    covers = []
    for group in by_subset.values():
        if len(group) != 2:
            continue
        a, b = group
        na = next(iter(a.nests - b.nests))
        nb = next(iter(b.nests - a.nests))
        ja = next(e for e in t.edges if a.min_nest_of_edge(e) == na)
        jb = next(e for e in t.edges if b.min_nest_of_edge(e) == nb)
        covers.append((a, b) if ja < jb else (b, a))
    covers.sort(key=lambda pair: (pair[0].key(), pair[1].key()))
    return tuple(covers)


@lru_cache(maxsize=None)
def _reachability(t: PlanarTree) -> dict:
    "Transitive closure of the covering relations on maximal nestings."
    above = {}
    for a, b in covering_relations(t):
        above.setdefault(a.key(), set()).add(b.key())
    reach = {}

    def walk(key):
        if key in reach:
            return reach[key]
        out = set()
        for nxt in above.get(key, ()):
            out.add(nxt)
            out |= walk(nxt)
        reach[key] = out
        return out

    for nst in enumerate_nestings(t, max_only=True):
        walk(nst.key())
    return reach


def vertex_leq(t: PlanarTree, a: Nesting, b: Nesting) -> bool:
    "Order relation between two maximal nestings in the vertex poset."
    if a.key() == b.key():
        return True
    return b.key() in _reachability(t)[a.key()]


def nesting_partition(t: PlanarTree, nesting: Nesting) -> tuple[frozenset[int], ...]:
    """Ordered partition of the edge set attached to a nesting of a 2-leveled tree.

    The nests of a 2-leveled tree form a chain; the blocks are the
    successive set differences along the chain.  Maximal nestings give
    permutations written in one-line block notation.
    """
    if not t.is_two_leveled:
        raise TreeError("ordered partitions only label nestings of 2-leveled trees")
    chain = sorted(nesting.nests, key=len)
    blocks = []
    prev = frozenset()
    for nest in chain:
        if not prev < nest:
            raise NestingError("nests of a 2-leveled tree must form a chain")
        blocks.append(frozenset(nest - prev))
        prev = nest
    return tuple(blocks)


def partition_to_nesting(t: PlanarTree, blocks) -> Nesting:
    "Inverse of :func:`nesting_partition`."
    if not t.is_two_leveled:
        raise TreeError("ordered partitions only label nestings of 2-leveled trees")
    nests = []
    acc = frozenset()
    for block in blocks:
        acc = acc | frozenset(block)
        nests.append(acc)
    if acc != t.trivial_nest:
        raise NestingError("blocks do not partition the edge set")
    return Nesting.of(t, nests)


def linear_tree(n: int) -> PlanarTree:
    "The linear tree with n vertices (associahedron combinatorics)."
    obj = [0]
    for _ in range(n - 1):
        obj = [obj]
    return PlanarTree.from_nested(obj)


def two_leveled_tree(n: int) -> PlanarTree:
    "The 2-leveled tree with n vertices (permutahedron combinatorics)."
    if n == 1:
        return PlanarTree.from_nested([0])
    return PlanarTree.from_nested([[0]] * (n - 1))


def corolla(leaves: int = 2) -> PlanarTree:
    return PlanarTree.from_nested([0] * leaves)


@lru_cache(maxsize=None)
def all_trees(n: int) -> tuple[PlanarTree, ...]:
    """All reduced planar rooted trees with n vertices, up to leaf decoration.

    Only the internal shape matters for the operahedron, so childless
    vertices carry a single leaf and the other vertices none.  There are
    Catalan(n-1) shapes.
    """

    def shapes(k):
        # plane trees with k nodes, as nested lists of children
        if k == 1:
            yield []
            return
        for first in range(1, k):
            for left in shapes(first):
                for rest in shapes(k - first):
                    yield [left] + rest

    def decorate(children):
        if not children:
            return [0]
        return [decorate(c) for c in children]

    out = []
    if n == 1:
        return (corolla(1),)
    for shape in shapes(n):
        out.append(PlanarTree.from_nested(decorate(shape)))
    return tuple(out)
