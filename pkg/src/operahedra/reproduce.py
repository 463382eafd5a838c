"""Reproduction harness for the published tables and the cross-oracle checks.

Each check prints one line, ``ok`` or ``FAIL`` with the observed value;
the harness exits nonzero on any mismatch.  The default profile runs in
a couple of minutes; ``--full`` adds the long counts (dimension 5 and
the six-vertex realization sweep) and ``--quick`` trims everything to
the smallest instances.
"""

from __future__ import annotations

import time

from . import tables
from .arrangement import arrangement_bruteforce, d_normals, generate_D
from .diagonal import (
    diagonal_count,
    diagonal_image,
    diagonal_via_projection,
    pair_in_image,
    pair_in_image_cone,
    bot_top_point,
    pair_midpoint,
    tp_bm_filter,
)
from .exact import vertices_of
from .operad import OperadicTree, SignedSum, boundary_sign_geometric, chain_map_check, differential
from .realization import loday_polytope
from .trees import (
    all_trees,
    enumerate_nestings,
    linear_tree,
    nesting_partition,
    two_leveled_tree,
)
from .tables import format_partition, partition_nesting


class _Report:
    def __init__(self):
        self.failures = 0

    def check(self, name, value, expected):
        t0 = time.time()
        value = value() if callable(value) else value
        elapsed = time.time() - t0
        if value == expected:
            print("ok   %-58s (%5.1fs)" % (name, elapsed))
        else:
            self.failures += 1
            print("FAIL %-58s expected %r, got %r" % (name, expected, value))

    def info(self, name, value):
        value = value() if callable(value) else value
        print("info %-58s %r" % (name, value))


def _pairs_as_partitions(t, pairs):
    return {
        (
            format_partition(nesting_partition(t, p.left)),
            format_partition(nesting_partition(t, p.right)),
        )
        for p in pairs
    }


def run_reproduction(full: bool = False, quick: bool = False) -> int:
    r = _Report()
    max_count_dim = 3 if quick else (5 if full else 4)

    for dim in range(0, max_count_dim + 1):
        t = two_leveled_tree(dim + 2)
        r.check(
            "permutahedron pairs, dimension %d" % dim,
            lambda t=t: diagonal_count(t),
            tables.PAIR_COUNTS[dim],
        )

    t3 = two_leveled_tree(3)
    r.check(
        "dimension 1 pair list",
        lambda: _pairs_as_partitions(t3, diagonal_image(t3)),
        set(tables.DIMENSION_1),
    )
    t4 = two_leveled_tree(4)
    r.check(
        "dimension 2 pair list",
        lambda: _pairs_as_partitions(t4, diagonal_image(t4)),
        set(tables.DIMENSION_2),
    )
    if not quick:
        t5 = two_leveled_tree(5)
        r.check(
            "dimension 3 pair list",
            lambda: _pairs_as_partitions(t5, diagonal_image(t5)),
            {(l, g) for l, g, _ in tables.DIMENSION_3},
        )

        def blue_by_projection():
            lin5 = linear_tree(5)
            keep = set()
            for p in diagonal_image(t5):
                from .diagonal import coarsen

                left, right = coarsen(lin5, p.left), coarsen(lin5, p.right)
                if len(left.nests) == len(p.left.nests) and len(right.nests) == len(
                    p.right.nests
                ):
                    keep.add(
                        (
                            format_partition(nesting_partition(t5, p.left)),
                            format_partition(nesting_partition(t5, p.right)),
                        )
                    )
            return keep

        r.check(
            "dimension 3 associahedron subset (blue pairs)",
            blue_by_projection,
            {(l, g) for l, g, blue in tables.DIMENSION_3 if blue},
        )

    max_n = 4 if quick else 5

    def cone_agreement():
        bad = 0
        for n in range(1, max_n + 1):
            for t in all_trees(n):
                nestings = enumerate_nestings(t)
                for left in nestings:
                    for right in nestings:
                        if t.n >= 2 and len(left.nests) + len(right.nests) != t.n:
                            continue
                        if pair_in_image(t, left, right) != pair_in_image_cone(
                            t, left, right
                        ):
                            bad += 1
        return bad

    r.check("cone oracle disagreements, n <= %d" % max_n, cone_agreement, 0)

    def pointwise_agreement():
        bad = 0
        for n in range(2, max_n + 1):
            for t in all_trees(n):
                for p in diagonal_image(t):
                    z = pair_midpoint(t, p.left, p.right)
                    _, _, cb, ct = bot_top_point(t, (1,) * t.n, z)
                    if cb.key() != p.left.key() or ct.key() != p.right.key():
                        bad += 1
        return bad

    r.check("pointwise oracle disagreements, n <= %d" % max_n, pointwise_agreement, 0)

    vh_n = 4 if quick else (6 if full else 5)

    def vh_agreement():
        bad = 0
        for n in range(2, vh_n + 1):
            for t in all_trees(n):
                P = loday_polytope(t)
                if sorted(set(P.vertices)) != sorted(vertices_of(P.hrep)):
                    bad += 1
        return bad

    r.check("V/H disagreements, n <= %d" % vh_n, vh_agreement, 0)

    r.check("|D(2)|, |D(3)|, |D(4)|", lambda: tuple(len(generate_D(m)) for m in (2, 3, 4)), (1, 3, 9))

    def arrangement_match():
        bad = 0
        for n in range(2, 6):
            if arrangement_bruteforce(two_leveled_tree(n)) != d_normals(n - 1):
                bad += 1
            for t in all_trees(n):
                if not set(arrangement_bruteforce(t)) <= set(d_normals(n - 1)):
                    bad += 1
        return bad

    r.check("arrangement brute force vs D(n-1), n <= 5", arrangement_match, 0)

    def dg_checks():
        bad = 0
        for n in range(1, max_n + 1):
            for t in all_trees(n):
                top = OperadicTree.left_recursive(t)
                d = differential(top)
                dd = SignedSum()
                for cell, c in d.items():
                    dd.extend(differential(cell), c)
                if not dd.is_zero():
                    bad += 1
                for cell, c in d.items():
                    if boundary_sign_geometric(t, cell.nesting) != c:
                        bad += 1
        for n in range(1, 5):
            for t in all_trees(n):
                if not chain_map_check(t).is_zero():
                    bad += 1
        return bad

    r.check("dg layer (d^2, geometric signs, chain map)", dg_checks, 0)

    magic_n = 5 if quick else 6

    def magical_counts():
        out = []
        for n in range(2, magic_n + 1):
            t = linear_tree(n)
            image = {p.key() for p in diagonal_image(t)}
            nestings = enumerate_nestings(t)
            passing = set()
            for left in nestings:
                for right in nestings:
                    if len(left.nests) + len(right.nests) != t.n:
                        continue
                    if tp_bm_filter(t, left, right):
                        passing.add((left.key(), right.key()))
            if passing != image:
                return None
            out.append(len(image))
        return tuple(out[:4])

    r.check(
        "magical formula on linear trees, n <= %d" % magic_n,
        magical_counts,
        tables.ASSOCIAHEDRON_COUNTS[: min(4, magic_n - 1)],
    )

    if not quick:
        t5 = two_leveled_tree(5)

        def tpbm_dim3():
            nestings = enumerate_nestings(t5)
            count = 0
            for left in nestings:
                for right in nestings:
                    if len(left.nests) + len(right.nests) != t5.n:
                        continue
                    if tp_bm_filter(t5, left, right):
                        count += 1
            return count

        r.info("dimension 3 pairs passing tp <= bm (image has 50)", tpbm_dim3)

    if r.failures:
        print("%d checks FAILED" % r.failures)
        return 1
    print("all checks passed")
    return 0
