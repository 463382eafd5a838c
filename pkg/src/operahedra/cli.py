"""Command-line interface: realizations, diagonals, oracles and reproduction.

Trees are passed as inline JSON (``--tree '[[0],[0],[0]]'``) or from a
file; rationals are serialized as ``p/q`` strings and all outputs are
byte-stable across runs and worker counts.  Exit codes: 2 for a
malformed tree, 3 for an orientation vector on a wall, 4 when the
dimension cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .arrangement import (
    WallVectorError,
    arrangement_bruteforce,
    chamber_signature,
    generate_D,
    is_principal,
    principal_vector,
)
from .diagonal import (
    DiagonalPair,
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
from .operad import OperadicTree, differential, tensor_diagonal
from .realization import loday_polytope
from .trees import Nesting, PlanarTree, TreeError, enumerate_nestings

EXIT_BAD_TREE = 2
EXIT_WALL = 3
EXIT_DIM_CAP = 4


def _rat(x) -> str:
    return str(Fraction(x))


def _load_tree(args) -> PlanarTree:
    if getattr(args, "file", None):
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = args.tree
    if text is None:
        print("error: no tree given (use --tree or --file)", file=sys.stderr)
        raise SystemExit(EXIT_BAD_TREE)
    try:
        obj = json.loads(text)
        return PlanarTree.from_nested(obj)
    except (ValueError, TreeError) as exc:
        print("error: malformed tree: %s" % exc, file=sys.stderr)
        raise SystemExit(EXIT_BAD_TREE)


def _load_vector(args, m: int):
    if getattr(args, "vector", None) is None:
        return principal_vector(m)
    try:
        v = tuple(Fraction(part) for part in args.vector.split(","))
    except ValueError:
        print("error: malformed vector", file=sys.stderr)
        raise SystemExit(EXIT_BAD_TREE)
    if len(v) != m:
        print("error: vector of length %d, expected %d" % (len(v), m), file=sys.stderr)
        raise SystemExit(EXIT_BAD_TREE)
    if not is_principal(v, m):
        if not getattr(args, "allow_any_chamber", False):
            print(
                "error: vector is not principal (pass --allow-any-chamber to override)",
                file=sys.stderr,
            )
            raise SystemExit(EXIT_WALL)
        try:
            chamber_signature(v, m)
        except WallVectorError as exc:
            print("error: %s" % exc, file=sys.stderr)
            raise SystemExit(EXIT_WALL)
    return v


def _nesting_doc(nesting: Nesting):
    return [list(nest) for nest in nesting.key()]


def _pair_doc(pair: DiagonalPair):
    return {"left": _nesting_doc(pair.left), "right": _nesting_doc(pair.right)}


def _emit(args, doc, default="json"):
    fmt = getattr(args, "format", None) or default
    out = sys.stdout
    path = getattr(args, "output", None)
    text = _render(doc, fmt, path)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _render(doc, fmt, path=None) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        return _render_csv(doc)
    if fmt == "off":
        return _render_off(doc, path)
    raise SystemExit("unknown format %r" % fmt)


def _render_csv(doc) -> str:
    lines = []
    if "vertices" in doc:
        for v in doc["vertices"]:
            lines.append(",".join(v))
    elif "pairs" in doc:
        lines.append("left;right")
        for pair in doc["pairs"]:
            lines.append(
                "%s;%s" % (json.dumps(pair["left"]), json.dumps(pair["right"]))
            )
    else:
        lines.append(json.dumps(doc))
    return "\n".join(lines) + "\n"


def _off_block(vertices, faces):
    lines = ["%d %d %d" % (len(vertices), len(faces), 0)]
    for v in vertices:
        lines.append(" ".join("%.17g" % float(Fraction(x)) for x in v))
    for face in faces:
        lines.append("%d %s" % (len(face), " ".join(map(str, face))))
    return lines


def _facet_cycles(points):
    "Vertex cycles of the facets of a 3-dimensional polytope, exactly ordered."
    from .exact import dot, facets_from_vertices, frac_vec

    pts = [frac_vec(p) for p in points]
    hrep = facets_from_vertices(pts)
    cycles = []
    for a, b in hrep.inequalities:
        on = [idx for idx, p in enumerate(pts) if dot(a, p) == b]
        cycles.append(_convex_cycle(on, pts, a))
    return cycles


def _convex_cycle(indices, pts, inward):
    "Order coplanar hull points into a cycle by exact gift wrapping."
    from .exact import dot, vsub

    remaining = list(indices[1:])
    cyc = [indices[0]]
    while remaining:
        cur = pts[cyc[-1]]
        best = remaining[0]
        for cand in remaining[1:]:
            # cand wins when it turns outward of cur -> best within the facet
            cross = _cross3(vsub(pts[best], cur), vsub(pts[cand], cur))
            if dot(cross, inward) > 0:
                best = cand
        cyc.append(best)
        remaining.remove(best)
    return cyc


def _cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _affine_frame(points):
    "Map points of a 3-dimensional affine hull to exact R^3 coordinates."
    from .exact import _coordinates_in, _echelon, vsub

    p0 = points[0]
    diffs = [vsub(p, p0) for p in points[1:]]
    ech, pivots = _echelon(diffs)
    basis = [tuple(ech[r]) for r in range(len(pivots))]
    if len(basis) != 3:
        raise SystemExit("OFF export needs a 3-dimensional polytope or subdivision")
    return lambda p: tuple(_coordinates_in(basis, vsub(p, p0)))


def _render_off(doc, path) -> str:
    cells = doc.get("cells")
    if cells is None:
        cells = [doc["vertices"]]
    if doc.get("dimension") != 3:
        raise SystemExit("OFF export needs a 3-dimensional polytope or subdivision")
    parsed = [
        [tuple(Fraction(x) for x in v) for v in cell] for cell in cells
    ]
    everything = sorted({p for cell in parsed for p in cell})
    if len(everything[0]) == 3:
        frame = lambda p: p
    else:
        frame = _affine_frame(everything)
    all_vertices = []
    index = {}
    faces = []
    for pts in parsed:
        pts = [frame(p) for p in pts]
        local = []
        for p in pts:
            if p not in index:
                index[p] = len(all_vertices)
                all_vertices.append(p)
            local.append(index[p])
        for cyc in _facet_cycles(pts):
            faces.append([local[i] for i in cyc])
    lines = ["OFF", "# cells: %d" % len(cells)]
    lines.extend(_off_block(all_vertices, faces))
    if path:
        sidecar = path + ".json"
        with open(sidecar, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return "\n".join(lines) + "\n"


def _weight(args, n):
    if getattr(args, "weight", None) is None:
        return (1,) * n
    try:
        w = tuple(int(x) for x in args.weight.split(","))
    except ValueError:
        print("error: malformed weight", file=sys.stderr)
        raise SystemExit(EXIT_BAD_TREE)
    return w


# ---------------------------------------------------------------------------
# subcommands


def cmd_nestings(args):
    t = _load_tree(args)
    nestings = enumerate_nestings(t, max_only=args.max)
    doc = {
        "tree": t.to_nested(),
        "count": len(nestings),
        "nestings": [_nesting_doc(nst) for nst in nestings],
    }
    _emit(args, doc)
    return 0


def cmd_realize(args):
    t = _load_tree(args)
    w = _weight(args, t.n)
    P = loday_polytope(t, w)
    doc = {
        "tree": t.to_nested(),
        "weight": list(w),
        "dimension": P.dim,
        "vertices": [[_rat(x) for x in v] for v in P.vertices],
        "equalities": [
            {"a": [_rat(x) for x in a], "b": _rat(b)} for a, b in P.hrep.equalities
        ],
        "inequalities": [
            {"a": [_rat(x) for x in a], "b": _rat(b)} for a, b in P.hrep.inequalities
        ],
    }
    _emit(args, doc)
    return 0


def cmd_diagonal(args):
    t = _load_tree(args)
    dim = max(0, t.n - 2)
    cap = args.max_dim if args.max_dim is not None else 5
    if dim > cap:
        print(
            "error: dimension %d exceeds the cap %d (raise with --max-dim)"
            % (dim, cap),
            file=sys.stderr,
        )
        return EXIT_DIM_CAP
    _load_vector(args, t.n - 1)  # validates the chamber override
    if args.count:
        sys.stdout.write("%d\n" % diagonal_count(t))
        return 0
    pairs = diagonal_image(t)
    doc = {
        "tree": t.to_nested(),
        "dimension": dim,
        "count": len(pairs),
        "pairs": [_pair_doc(p) for p in pairs],
    }
    if args.format == "off":
        doc["cells"] = _subdivision_cells(t, pairs)
    _emit(args, doc)
    return 0


def _subdivision_cells(t, pairs):
    "Midpoint cells (F + G) / 2 of the subdivision, as exact vertex lists."
    from .realization import face_vertices

    cells = []
    for pair in pairs:
        lefts = [p for _, p in face_vertices(t, pair.left)]
        rights = [p for _, p in face_vertices(t, pair.right)]
        pts = sorted(
            {
                tuple((a + b) / 2 for a, b in zip(x, y))
                for x in lefts
                for y in rights
            }
        )
        cells.append([[_rat(x) for x in p] for p in pts])
    return cells


def cmd_oracle_check(args):
    t = _load_tree(args)
    v = _load_vector(args, t.n - 1)
    pairs = []
    nestings = enumerate_nestings(t)
    for left in nestings:
        for right in nestings:
            if len(left.nests) + len(right.nests) == t.n:
                pairs.append((left, right))
    agree = 0
    in_image = 0
    failures = []
    for left, right in pairs:
        formula = pair_in_image(t, left, right)
        if args.method == "cone":
            other = pair_in_image_cone(t, left, right, v)
        elif args.method == "pointwise":
            if not formula:
                continue
            bm, tp, cb, ct = bot_top_point(
                t, (1,) * t.n, pair_midpoint(t, left, right), v
            )
            other = cb.key() == left.key() and ct.key() == right.key()
            formula = True
        elif args.method == "projection":
            proj = {p.key() for p in diagonal_via_projection(t)}
            img = {p.key() for p in diagonal_image(t)}
            ok = proj == img
            print("projection %s: %d pairs" % ("agrees" if ok else "DISAGREES", len(img)))
            return 0 if ok else 1
        elif args.method == "tpbm":
            if not formula:
                continue
            other = tp_bm_filter(t, left, right, v)
            formula = True
        else:
            raise SystemExit("unknown method %r" % args.method)
        if formula:
            in_image += 1
        if formula == other:
            agree += 1
        else:
            failures.append((left, right, formula, other))
    total = agree + len(failures)
    # headline counts the image pairs; disagreements anywhere are listed
    if not failures:
        print("%d/%d agree" % (in_image, in_image))
    else:
        print("%d/%d agree" % (agree, total))
    for left, right, formula, other in failures:
        print(
            "  disagreement: left=%r right=%r formula=%r oracle=%r"
            % (_nesting_doc(left), _nesting_doc(right), formula, other)
        )
    return 0 if not failures else 1


def cmd_arrangement(args):
    if args.brute:
        t = _load_tree(args)
        dirs = arrangement_bruteforce(t)
        doc = {
            "tree": t.to_nested(),
            "count": len(dirs),
            "directions": [list(d) for d in dirs],
        }
    else:
        if args.n is None:
            print("error: pass --n or --brute --tree", file=sys.stderr)
            return EXIT_BAD_TREE
        pairs = generate_D(args.n)
        doc = {
            "m": args.n,
            "count": len(pairs),
            "pairs": [
                {"I": sorted(p.I), "J": sorted(p.J)} for p in pairs
            ],
        }
    _emit(args, doc)
    return 0


def cmd_differential(args):
    t = _load_tree(args)
    x = OperadicTree.left_recursive(t)
    terms = differential(x)
    doc = {
        "tree": t.to_nested(),
        "terms": [
            {"term": _nesting_doc(cell.nesting), "coeff": coeff}
            for cell, coeff in sorted(terms.items(), key=lambda kv: kv[0].key())
        ],
    }
    _emit(args, doc)
    return 0


def cmd_tensor(args):
    t = _load_tree(args)
    x = OperadicTree.left_recursive(t)
    terms = tensor_diagonal(x)
    doc = {
        "tree": t.to_nested(),
        "terms": [
            {
                "left": _nesting_doc(left.nesting),
                "right": _nesting_doc(right.nesting),
                "coeff": coeff,
            }
            for (left, right), coeff in sorted(
                terms.items(), key=lambda kv: (kv[0][0].key(), kv[0][1].key())
            )
        ],
    }
    _emit(args, doc)
    return 0


def cmd_reproduce(args):
    from .reproduce import run_reproduction

    return run_reproduction(full=args.full, quick=args.quick)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operahedra",
        description="Exact realizations and cellular diagonals of operahedra",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def tree_opts(p):
        p.add_argument("--tree", help="inline JSON tree, e.g. '[[0],[0],[0]]'")
        p.add_argument("--file", help="file containing the JSON tree")

    def common_opts(p):
        p.add_argument("--format", choices=["json", "csv", "off"], default="json")
        p.add_argument("--output", help="write to a file instead of stdout")
        p.add_argument("--vector", help="orientation vector override, comma separated")
        p.add_argument(
            "--allow-any-chamber",
            action="store_true",
            help="accept non-principal vectors (walls are still rejected)",
        )
        p.add_argument(
            "--jobs",
            type=int,
            default=int(os.environ.get("OPERAHEDRA_JOBS", "1")),
            help="worker count for pair scans (outputs are identical for any value)",
        )

    p = sub.add_parser("nestings", help="enumerate the nestings of a tree")
    tree_opts(p)
    common_opts(p)
    p.add_argument("--max", action="store_true", help="only maximal nestings")
    p.set_defaults(func=cmd_nestings)

    p = sub.add_parser("realize", help="Loday realization of the operahedron")
    tree_opts(p)
    common_opts(p)
    p.add_argument("--weight", help="comma-separated positive integer weights")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("diagonal", help="cellular image of the bot-top diagonal")
    tree_opts(p)
    common_opts(p)
    p.add_argument("--count", action="store_true", help="print only the pair count")
    p.add_argument("--max-dim", type=int, default=None, help="dimension cap (default 5)")
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("oracle-check", help="compare the formula with an oracle")
    tree_opts(p)
    common_opts(p)
    p.add_argument(
        "--method",
        choices=["cone", "pointwise", "projection", "tpbm"],
        default="cone",
    )
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("arrangement", help="fundamental hyperplane arrangement data")
    tree_opts(p)
    common_opts(p)
    p.add_argument("--n", type=int, help="emit D(n) for the permutahedron")
    p.add_argument(
        "--brute", action="store_true", help="brute-force directions for --tree"
    )
    p.set_defaults(func=cmd_arrangement)

    p = sub.add_parser("differential", help="signed boundary of the top cell")
    tree_opts(p)
    common_opts(p)
    p.set_defaults(func=cmd_differential)

    p = sub.add_parser("tensor", help="signed diagonal of the top cell")
    tree_opts(p)
    common_opts(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("reproduce", help="check the published tables and oracles")
    p.add_argument("--full", action="store_true", help="include the slow suites")
    p.add_argument("--quick", action="store_true", help="small instances only")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WallVectorError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_WALL


if __name__ == "__main__":
    sys.exit(main())
