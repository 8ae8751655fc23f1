"""Interchange formats: JSON payloads, DOT export, and pretty renderings."""

from __future__ import annotations

import colorsys
import json
from typing import Any

from .errors import InputError
from .explore import ReachResult
from .invariant import InvariantVector
from .moves import EBirth, EDeath, HMerge, HMove, MergeSide, Move, SplitSpec
from .revolution import GeneratingCurve
from .tree import DoublePointTree, ValidationReport

__all__ = [
    "tree_to_dict",
    "tree_from_dict",
    "vector_to_dict",
    "vector_from_dict",
    "curve_from_dict",
    "curve_to_dict",
    "move_to_dict",
    "move_from_dict",
    "moves_to_list",
    "moves_from_payload",
    "reach_result_to_dict",
    "report_to_dict",
    "tree_to_dot",
    "tree_pretty",
    "load_json",
]


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


# -- trees ---------------------------------------------------------------------


def tree_to_dict(tree: DoublePointTree) -> dict:
    pairs = []
    for i, p in enumerate(tree.pairing):
        if p is not None and i < p:
            pairs.append([tree.edge_ids[i], tree.edge_ids[p]])
    return {
        "vertices": [
            {"id": v, "delta": d} for v, d in zip(tree.vertex_ids, tree.deltas)
        ],
        "edges": [
            {"id": e, "tail": tree.vertex_ids[t], "head": tree.vertex_ids[h]}
            for e, t, h in zip(tree.edge_ids, tree.tails, tree.heads)
        ],
        "pairing": pairs,
    }


def tree_from_dict(data: Any) -> DoublePointTree:
    if not isinstance(data, dict):
        raise InputError("tree payload must be an object")
    try:
        vertices = [(v["id"], v["delta"]) for v in data["vertices"]]
        edges = [(e["id"], e["tail"], e["head"]) for e in data["edges"]]
        pairing = [tuple(p) for p in data.get("pairing", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed tree payload: {exc}") from exc
    return DoublePointTree.build(vertices, edges, pairing)


def tree_pretty(tree: DoublePointTree) -> str:
    lines = [f"vertices ({tree.vertex_count}):"]
    for v, d in zip(tree.vertex_ids, tree.deltas):
        lines.append(f"  {v}: delta {d}")
    lines.append(f"edges ({tree.edge_count}):")
    for e, t, h in zip(tree.edge_ids, tree.tails, tree.heads):
        p = tree.partner_of(e)
        lines.append(
            f"  {e}: {tree.vertex_ids[t]} -> {tree.vertex_ids[h]}"
            + (f"  (pair {p})" if p else "")
        )
    return "\n".join(lines)


def _pair_colors(count: int) -> list[str]:
    colors = []
    for i in range(count):
        h = (i * 0.61803398875) % 1.0
        r, g, b = colorsys.hsv_to_rgb(h, 0.75, 0.85)
        colors.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    return colors


def tree_to_dot(tree: DoublePointTree) -> str:
    pairs = []
    for i, p in enumerate(tree.pairing):
        if p is not None and i < p:
            pairs.append((i, p))
    colors = _pair_colors(len(pairs))
    color_of: dict[int, str] = {}
    for (i, p), col in zip(pairs, colors):
        color_of[i] = col
        color_of[p] = col
    lines = ["digraph dptree {"]
    for v, d in zip(tree.vertex_ids, tree.deltas):
        lines.append(f'  "{v}" [label="{d}"];')
    for i, (e, t, h) in enumerate(zip(tree.edge_ids, tree.tails, tree.heads)):
        col = color_of.get(i)
        attr = f' [color="{col}"]' if col else ""
        lines.append(
            f'  "{tree.vertex_ids[t]}" -> "{tree.vertex_ids[h]}"{attr};'
        )
    lines.append("}")
    return "\n".join(lines)


def report_to_dict(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"rule": v.rule, "witness": list(v.witness)} for v in report.violations
        ],
    }


# -- vectors -------------------------------------------------------------------


def vector_to_dict(vec: InvariantVector) -> dict:
    return {"coefficients": {str(k): c for k, c in vec.items()}}


def vector_from_dict(data: Any) -> InvariantVector:
    if not isinstance(data, dict) or "coefficients" not in data:
        raise InputError("vector payload must be {'coefficients': {...}}")
    try:
        return InvariantVector(
            {int(k): int(c) for k, c in data["coefficients"].items()}
        )
    except (TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed vector payload: {exc}") from exc


# -- curves --------------------------------------------------------------------


def curve_to_dict(curve: GeneratingCurve) -> dict:
    return {
        "points": [[r, z] for r, z in curve.points],
        "tolerance": curve.tolerance,
    }


def curve_from_dict(data: Any, tolerance: float | None = None) -> GeneratingCurve:
    if not isinstance(data, dict) or "points" not in data:
        raise InputError("curve payload must be {'points': [[r, z], ...]}")
    try:
        points = tuple((float(r), float(z)) for r, z in data["points"])
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed curve payload: {exc}") from exc
    tol = tolerance if tolerance is not None else data.get("tolerance", 1e-9)
    return GeneratingCurve(points, float(tol))


# -- moves ---------------------------------------------------------------------


def _split_to_dict(spec: SplitSpec) -> dict:
    return {"kind": spec.kind, "reattach": sorted(spec.reattach)}


def _split_from_dict(data: Any) -> SplitSpec:
    try:
        return SplitSpec(data["kind"], frozenset(data.get("reattach", [])))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed split spec: {exc}") from exc


def move_to_dict(move: Move) -> dict:
    if isinstance(move, EBirth):
        return {
            "type": "e_birth",
            "v1": move.v1,
            "v2": move.v2,
            "d1": move.d1,
            "d2": move.d2,
        }
    if isinstance(move, EDeath):
        return {"type": "e_death", "edges": list(move.edges)}
    if isinstance(move, HMove):
        return {
            "type": "h_move",
            "pair": list(move.pair),
            "side1": _split_to_dict(move.side1),
            "side2": _split_to_dict(move.side2),
        }
    if isinstance(move, HMerge):
        return {
            "type": "h_merge",
            "sides": [
                {
                    "kind": s.kind,
                    "edge": s.edge,
                    "drop": s.drop,
                    "into": s.into,
                    "flipped": s.flipped,
                }
                for s in move.sides
            ],
        }
    raise InputError(f"unknown move {move!r}")


def move_from_dict(data: Any) -> Move:
    if not isinstance(data, dict) or "type" not in data:
        raise InputError("move payload must be an object with a 'type'")
    kind = data["type"]
    try:
        if kind == "e_birth":
            return EBirth(data["v1"], data["v2"], int(data["d1"]), int(data["d2"]))
        if kind == "e_death":
            e1, e2 = data["edges"]
            return EDeath((e1, e2))
        if kind == "h_move":
            a1, a2 = data["pair"]
            return HMove(
                (a1, a2),
                _split_from_dict(data["side1"]),
                _split_from_dict(data["side2"]),
            )
        if kind == "h_merge":
            sides = tuple(
                MergeSide(
                    s["kind"], s["edge"], s["drop"], s["into"], bool(s["flipped"])
                )
                for s in data["sides"]
            )
            if len(sides) != 2:
                raise InputError("h_merge needs exactly two sides")
            return HMerge(sides)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed move payload: {exc}") from exc
    raise InputError(f"unknown move type {kind!r}")


def moves_to_list(moves: list[Move]) -> list[dict]:
    return [move_to_dict(m) for m in moves]


def moves_from_payload(data: Any) -> list[Move]:
    if isinstance(data, dict):
        return [move_from_dict(data)]
    if isinstance(data, list):
        return [move_from_dict(d) for d in data]
    raise InputError("moves payload must be a move object or an array of moves")


# -- search results --------------------------------------------------------------


def reach_result_to_dict(result: ReachResult) -> dict:
    out: dict[str, Any] = {"status": result.status}
    if result.path is not None:
        out["path"] = moves_to_list(list(result.path))
    if result.source_invariant is not None:
        out["source_invariant"] = vector_to_dict(result.source_invariant)
    if result.target_invariant is not None:
        out["target_invariant"] = vector_to_dict(result.target_invariant)
    return out
