"""Command line interface.

Exit codes: 0 success, 1 input or parse error, 2 validation or precondition
failure.  ``reach`` exits 0 whenever the search ran; its JSON status field
carries the verdict.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .canonical import canonical_hex
from .errors import (
    CurveError,
    InputError,
    InvalidTreeError,
    MoveNotApplicable,
    PreconditionError,
    ResourceLimitError,
)
from .explore import enumerate_trees, reachable
from .invariant import InvariantVector, invariant_of
from .moves import apply_move, enumerate_moves
from .realize import realize
from .revolution import tree_of_revolution
from .tree import connected_sum, negate, validate

TREE_FORMATS = ("json", "dot", "pretty")


def _emit_tree(tree, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(io.tree_to_dict(tree)))
    elif fmt == "dot":
        print(io.tree_to_dot(tree))
    else:
        print(io.tree_pretty(tree))


def _load_tree(path: str):
    return io.tree_from_dict(io.load_json(path))


def cmd_validate(args) -> int:
    report = validate(_load_tree(args.tree))
    if args.format == "pretty":
        if report.ok:
            print("ok")
        else:
            for v in report.violations:
                print(f"violation: {v.rule} at {', '.join(v.witness) or '-'}")
    else:
        print(json.dumps(io.report_to_dict(report)))
    return 0 if report.ok else 2


def cmd_invariant(args) -> int:
    vec = invariant_of(_load_tree(args.tree))
    if args.format == "pretty":
        print(vec.render())
    else:
        print(json.dumps(io.vector_to_dict(vec)))
    return 0


def cmd_negate(args) -> int:
    _emit_tree(negate(_load_tree(args.tree)), args.format)
    return 0


def cmd_sum(args) -> int:
    t1 = _load_tree(args.tree1)
    t2 = _load_tree(args.tree2)
    merged, relabel = connected_sum(t1, args.vertex1, t2, args.vertex2)
    print(
        json.dumps({"vertices": relabel.vertices, "edges": relabel.edges}),
        file=sys.stderr,
    )
    _emit_tree(merged, args.format)
    return 0


def cmd_moves(args) -> int:
    tree = _load_tree(args.tree)
    moves = enumerate_moves(tree, args.max_reattach_degree)
    print(json.dumps(io.moves_to_list(moves)))
    return 0


def cmd_apply(args) -> int:
    tree = _load_tree(args.tree)
    for move in io.moves_from_payload(io.load_json(args.moves)):
        tree = apply_move(tree, move)
    _emit_tree(tree, args.format)
    return 0


def cmd_reach(args) -> int:
    result = reachable(
        _load_tree(args.source),
        _load_tree(args.target),
        max_steps=args.max_steps,
        max_vertices=args.max_vertices,
        max_reattach_degree=args.max_reattach_degree,
    )
    print(json.dumps(io.reach_result_to_dict(result)))
    return 0


def cmd_enum(args) -> int:
    trees = enumerate_trees(args.max_vertices, args.delta_bound)
    for code in sorted(trees):
        print(f"{code.hex()}\t{json.dumps(io.tree_to_dict(trees[code]))}")
    return 0


def cmd_realize(args) -> int:
    pairs = []
    for token in args.coeff:
        try:
            k, c = token.rsplit(":", 1)
            pairs.append((int(k), int(c)))
        except ValueError:
            raise InputError(f"bad --coeff {token!r}, expected K:C") from None
    vec = InvariantVector(pairs)
    tree = realize(vec)
    print(invariant_of(tree).render(), file=sys.stderr)
    _emit_tree(tree, args.format)
    return 0


def cmd_from_curve(args) -> int:
    curve = io.curve_from_dict(io.load_json(args.curve), tolerance=args.tol)
    tree = tree_of_revolution(curve, flip_orientation=args.flip_orientation)
    _emit_tree(tree, args.format)
    return 0


def cmd_dot(args) -> int:
    print(io.tree_to_dot(_load_tree(args.tree)))
    return 0


def cmd_code(args) -> int:
    print(canonical_hex(_load_tree(args.tree)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dptree",
        description="Double point trees: validation, degree-count vector, "
        "moves, search, realization, and curve extraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def tree_fmt(p):
        p.add_argument("--format", choices=TREE_FORMATS, default="json")

    p = sub.add_parser("validate", help="check a tree against all invariants")
    p.add_argument("tree")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariant", help="degree-count vector of a tree")
    p.add_argument("tree")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("negate", help="flip all vertex degrees")
    p.add_argument("tree")
    tree_fmt(p)
    p.set_defaults(func=cmd_negate)

    p = sub.add_parser("sum", help="connected sum at two degree-1 vertices")
    p.add_argument("tree1")
    p.add_argument("vertex1")
    p.add_argument("tree2")
    p.add_argument("vertex2")
    tree_fmt(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("moves", help="enumerate applicable moves")
    p.add_argument("tree")
    p.add_argument("--max-reattach-degree", type=int, default=8)
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("apply", help="apply a move file (object or array)")
    p.add_argument("tree")
    p.add_argument("moves")
    tree_fmt(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("reach", help="breadth-first search in the move graph")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--max-steps", type=int, default=6)
    p.add_argument("--max-vertices", type=int, default=11)
    p.add_argument("--max-reattach-degree", type=int, default=6)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("enum", help="enumerate valid trees within bounds")
    p.add_argument("max_vertices", type=int)
    p.add_argument("delta_bound", type=int)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("realize", help="build a tree with the given vector")
    p.add_argument("--coeff", action="append", required=True, metavar="K:C")
    tree_fmt(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("from-curve", help="tree of a generating curve")
    p.add_argument("curve")
    p.add_argument("--flip-orientation", action="store_true")
    p.add_argument("--tol", type=float, default=None)
    tree_fmt(p)
    p.set_defaults(func=cmd_from_curve)

    p = sub.add_parser("dot", help="DOT export (conjugate edges share colors)")
    p.add_argument("tree")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("code", help="canonical hex code of a tree")
    p.add_argument("tree")
    p.set_defaults(func=cmd_code)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        InvalidTreeError,
        MoveNotApplicable,
        PreconditionError,
        CurveError,
        ResourceLimitError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
