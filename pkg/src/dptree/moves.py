"""Elementary moves on double point trees.

Two families: births/deaths of a conjugate pair of leaf edges, and the
two-sided split move (with its merge inverse) that reconnects an existing
conjugate pair.  Every application fully revalidates the result; a move whose
outcome fails validation is rejected as not applicable, which is what lets
``enumerate_moves`` silently filter candidate reattachments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, MoveNotApplicable
from .tree import DoublePointTree, require_valid, validate

__all__ = [
    "SplitSpec",
    "EBirth",
    "EDeath",
    "HMove",
    "MergeSide",
    "HMerge",
    "Move",
    "apply_move",
    "enumerate_moves",
    "enumerate_applicable",
    "invert_move",
    "PARALLEL",
    "SEQUENTIAL",
]

PARALLEL = "parallel"
SEQUENTIAL = "sequential"


@dataclass(frozen=True)
class SplitSpec:
    kind: str
    reattach: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.kind not in (PARALLEL, SEQUENTIAL):
            raise InputError(f"unknown split kind {self.kind!r}")
        object.__setattr__(self, "reattach", frozenset(self.reattach))


@dataclass(frozen=True)
class EBirth:
    v1: str
    v2: str
    d1: int
    d2: int


@dataclass(frozen=True)
class EDeath:
    edges: tuple[str, str]


@dataclass(frozen=True)
class HMove:
    pair: tuple[str, str]
    side1: SplitSpec
    side2: SplitSpec


@dataclass(frozen=True)
class MergeSide:
    kind: str
    edge: str  # the split edge to collapse
    drop: str  # the vertex the split added
    into: str  # the vertex that absorbs the dropped vertex's edges
    flipped: bool = False


@dataclass(frozen=True)
class HMerge:
    sides: tuple[MergeSide, MergeSide]  # applied in this order


Move = EBirth | EDeath | HMove | HMerge


# -- mutable scratch representation ------------------------------------------


class _Scratch:
    def __init__(self, tree: DoublePointTree):
        self.delta = dict(zip(tree.vertex_ids, tree.deltas))
        self.vorder = list(tree.vertex_ids)
        self.eorder = list(tree.edge_ids)
        self.tail = {
            e: tree.vertex_ids[t] for e, t in zip(tree.edge_ids, tree.tails)
        }
        self.head = {
            e: tree.vertex_ids[h] for e, h in zip(tree.edge_ids, tree.heads)
        }
        self.partner = {}
        for i, p in enumerate(tree.pairing):
            if p is not None:
                self.partner[tree.edge_ids[i]] = tree.edge_ids[p]

    def edges_at(self, v: str) -> list[str]:
        return [e for e in self.eorder if self.tail[e] == v or self.head[e] == v]

    def add_vertex(self, v: str, d: int) -> None:
        self.delta[v] = d
        self.vorder.append(v)

    def add_edge(self, e: str, t: str, h: str) -> None:
        self.tail[e] = t
        self.head[e] = h
        self.eorder.append(e)

    def remove_edge(self, e: str) -> None:
        self.eorder.remove(e)
        del self.tail[e]
        del self.head[e]
        p = self.partner.pop(e, None)
        if p is not None and self.partner.get(p) == e:
            del self.partner[p]

    def remove_vertex(self, v: str) -> None:
        self.vorder.remove(v)
        del self.delta[v]

    def move_endpoint(self, e: str, old: str, new: str) -> None:
        if self.tail[e] == old:
            self.tail[e] = new
        elif self.head[e] == old:
            self.head[e] = new
        else:
            raise MoveNotApplicable(f"edge {e!r} is not incident to {old!r}")

    def first_edge_toward(self, v: str, target_edge: str, avoid: str) -> str:
        """First edge of the unique path from ``v`` to ``target_edge``, not
        crossing ``avoid``.  When the target edge touches ``v`` it is its own
        first edge."""
        if v in (self.tail[target_edge], self.head[target_edge]):
            return target_edge
        first: dict[str, str] = {}
        queue = [v]
        seen = {v}
        while queue:
            x = queue.pop(0)
            for e in self.edges_at(x):
                if e == avoid:
                    continue
                y = self.head[e] if self.tail[e] == x else self.tail[e]
                if y in seen:
                    continue
                seen.add(y)
                first[y] = first.get(x, e)
                queue.append(y)
        t = self.tail[target_edge]
        if t in first:
            return first[t]
        h = self.head[target_edge]
        if h in first:
            return first[h]
        raise MoveNotApplicable(
            f"conjugate edge {target_edge!r} unreachable from {v!r}"
        )

    def freeze(self) -> DoublePointTree:
        pairs = []
        done = set()
        for e in self.eorder:
            p = self.partner.get(e)
            if p is not None and e not in done and p not in done:
                pairs.append((e, p))
                done.add(e)
                done.add(p)
        return DoublePointTree.build(
            [(v, self.delta[v]) for v in self.vorder],
            [(e, self.tail[e], self.head[e]) for e in self.eorder],
            pairs,
        )


def _fresh_ids(taken: set[str], prefix: str, count: int) -> list[str]:
    pat = re.compile(re.escape(prefix) + r"(\d+)$")
    top = 0
    for t in taken:
        m = pat.match(t)
        if m:
            top = max(top, int(m.group(1)))
    return [f"{prefix}{top + i}" for i in range(1, count + 1)]


def _fresh_vertices(s: _Scratch, count: int) -> list[str]:
    return _fresh_ids(set(s.vorder), "w", count)


def _fresh_edges(s: _Scratch, count: int) -> list[str]:
    return _fresh_ids(set(s.eorder), "n", count)


# -- application --------------------------------------------------------------


def _check_result(s: _Scratch) -> DoublePointTree:
    result = s.freeze()
    report = validate(result)
    if not report.ok:
        rules = ", ".join(sorted(report.rules()))
        raise MoveNotApplicable(f"result fails validation ({rules})", report)
    return result


def _apply_e_birth(tree: DoublePointTree, m: EBirth) -> DoublePointTree:
    d1v = tree.delta_of(m.v1)
    d2v = tree.delta_of(m.v2)
    if abs(d1v - d2v) not in (0, 2):
        raise MoveNotApplicable("anchor degrees must differ by 0 or 2")
    if m.d1 not in (d1v - 2, d1v + 2) or m.d2 not in (d2v - 2, d2v + 2):
        raise MoveNotApplicable("new leaf degree must step by 2 from its anchor")
    if len({d1v, d2v, m.d1, m.d2}) != 2:
        raise MoveNotApplicable("the four degrees must take exactly 2 values")
    s = _Scratch(tree)
    wa, wb = _fresh_vertices(s, 2)
    ea, eb = _fresh_edges(s, 2)
    s.add_vertex(wa, m.d1)
    s.add_vertex(wb, m.d2)
    s.add_edge(ea, m.v1, wa)
    s.add_edge(eb, m.v2, wb)
    s.partner[ea] = eb
    s.partner[eb] = ea
    return _check_result(s)


def _apply_e_death(tree: DoublePointTree, m: EDeath) -> DoublePointTree:
    e1, e2 = m.edges
    if tree.partner_of(e1) != e2:
        raise MoveNotApplicable("edges are not conjugate")
    s = _Scratch(tree)
    heads = []
    for e in (e1, e2):
        h = s.head[e]
        if len(s.edges_at(h)) != 1:
            raise MoveNotApplicable(f"head of {e!r} is not a free leaf")
        heads.append(h)
    if heads[0] == heads[1]:
        raise MoveNotApplicable("edges share their head")
    s.remove_edge(e1)
    s.remove_edge(e2)
    s.remove_vertex(heads[0])
    s.remove_vertex(heads[1])
    return _check_result(s)


def _split(s: _Scratch, edge: str, spec: SplitSpec) -> tuple[str, MergeSide]:
    v, w = s.tail[edge], s.head[edge]
    if spec.kind == PARALLEL:
        (x,) = _fresh_vertices(s, 1)
        (g,) = _fresh_edges(s, 1)
        s.add_vertex(x, s.delta[w])
        allowed = set(s.edges_at(w)) - {edge}
        for r in sorted(spec.reattach):
            if r not in allowed:
                raise MoveNotApplicable(
                    f"reattach edge {r!r} is not available at {w!r}"
                )
            s.move_endpoint(r, w, x)
        s.add_edge(g, v, x)
        return g, MergeSide(PARALLEL, g, drop=x, into=w, flipped=False)
    # sequential
    (z,) = _fresh_vertices(s, 1)
    (g,) = _fresh_edges(s, 1)
    s.add_vertex(z, s.delta[v])
    conj = s.partner.get(edge)
    if conj is None:
        raise MoveNotApplicable(f"edge {edge!r} has no conjugate")
    toward = s.first_edge_toward(v, conj, avoid=edge)
    allowed = set(s.edges_at(v)) - {edge}
    for r in sorted(spec.reattach):
        if r not in allowed:
            raise MoveNotApplicable(f"reattach edge {r!r} is not available at {v!r}")
        s.move_endpoint(r, v, z)
    flip = toward in spec.reattach
    if flip:
        s.tail[edge], s.head[edge] = s.head[edge], s.tail[edge]
        s.add_edge(g, z, w)
    else:
        s.add_edge(g, w, z)
    return g, MergeSide(SEQUENTIAL, g, drop=z, into=v, flipped=flip)


def _apply_h_move(
    tree: DoublePointTree, m: HMove
) -> tuple[DoublePointTree, MergeSide, MergeSide]:
    a1, a2 = m.pair
    if tree.partner_of(a1) != a2:
        raise MoveNotApplicable("edges are not a conjugate pair")
    t1, h1 = tree.endpoints(a1)
    t2, h2 = tree.endpoints(a2)
    degs = {tree.delta_of(x) for x in (t1, h1, t2, h2)}
    if len(degs) != 2:
        raise MoveNotApplicable("endpoint degrees must take exactly 2 values")
    s = _Scratch(tree)
    g1, side1 = _split(s, a1, m.side1)
    g2, side2 = _split(s, a2, m.side2)
    s.partner[g1] = g2
    s.partner[g2] = g1
    result = _check_result(s)
    return result, side1, side2


def _apply_h_merge(tree: DoublePointTree, m: HMerge) -> DoublePointTree:
    sa, sb = m.sides
    if tree.partner_of(sa.edge) != sb.edge:
        raise MoveNotApplicable("merge edges are not conjugate")
    s = _Scratch(tree)
    for side in m.sides:
        e = side.edge
        if e not in s.tail:
            raise MoveNotApplicable(f"unknown merge edge {e!r}")
        ends = {s.tail[e], s.head[e]}
        if side.drop not in ends:
            raise MoveNotApplicable(f"vertex {side.drop!r} is not on edge {e!r}")
        other = (ends - {side.drop}).pop() if len(ends) == 2 else side.drop
        for r in list(s.edges_at(side.drop)):
            if r != e:
                s.move_endpoint(r, side.drop, side.into)
        if side.kind == SEQUENTIAL and side.flipped:
            between = [
                r
                for r in s.edges_at(side.into)
                if r != e and other in (s.tail[r], s.head[r])
            ]
            if len(between) != 1:
                raise MoveNotApplicable("cannot locate the flipped split edge")
            (a,) = between
            if s.tail[a] != other:
                raise MoveNotApplicable("split edge is not in flipped position")
            s.tail[a], s.head[a] = s.head[a], s.tail[a]
        s.remove_edge(e)
        s.remove_vertex(side.drop)
    return _check_result(s)


def apply_move(tree: DoublePointTree, move: Move) -> DoublePointTree:
    """Apply one move to a valid tree; raises :class:`MoveNotApplicable` when
    preconditions fail or the result does not validate."""
    require_valid(tree)
    if isinstance(move, EBirth):
        return _apply_e_birth(tree, move)
    if isinstance(move, EDeath):
        return _apply_e_death(tree, move)
    if isinstance(move, HMove):
        return _apply_h_move(tree, move)[0]
    if isinstance(move, HMerge):
        return _apply_h_merge(tree, move)
    raise InputError(f"unknown move {move!r}")


# -- enumeration --------------------------------------------------------------


def _subsets(items: list[str]):
    for k in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, k))


def enumerate_applicable(
    tree: DoublePointTree, max_reattach_degree: int = 8
) -> list[tuple[Move, DoublePointTree]]:
    """All applicable births, deaths, and split moves with their results, in
    a deterministic order.  Split-move reattachments are only enumerated at
    vertices whose incidence degree is at most ``max_reattach_degree``;
    direct application via :func:`apply_move` has no such cap."""
    require_valid(tree)
    moves: list[tuple[Move, DoublePointTree]] = []
    vids = sorted(tree.vertex_ids)
    eids = sorted(tree.edge_ids)

    for v1 in vids:
        d1v = tree.delta_of(v1)
        for v2 in vids:
            d2v = tree.delta_of(v2)
            if abs(d1v - d2v) not in (0, 2):
                continue
            for d1 in (d1v - 2, d1v + 2):
                for d2 in (d2v - 2, d2v + 2):
                    if len({d1v, d2v, d1, d2}) == 2:
                        move = EBirth(v1, v2, d1, d2)
                        moves.append((move, _apply_e_birth(tree, move)))

    leaves = {
        tree.vertex_ids[v]
        for v in range(tree.vertex_count)
        if len(tree.incidence(v)) == 1
    }
    for e in eids:
        p = tree.partner_of(e)
        if p is None or e >= p:
            continue
        if tree.endpoints(e)[1] in leaves and tree.endpoints(p)[1] in leaves:
            move = EDeath((e, p))
            moves.append((move, _apply_e_death(tree, move)))

    for a1 in eids:
        a2 = tree.partner_of(a1)
        if a2 is None or a1 >= a2:
            continue
        t1, h1 = tree.endpoints(a1)
        t2, h2 = tree.endpoints(a2)
        if len({tree.delta_of(x) for x in (t1, h1, t2, h2)}) != 2:
            continue
        for kind1 in (PARALLEL, SEQUENTIAL):
            anchor1 = h1 if kind1 == PARALLEL else t1
            avail1 = sorted(set(tree.edges_at(anchor1)) - {a1})
            if len(tree.edges_at(anchor1)) > max_reattach_degree:
                continue
            for re1 in _subsets(avail1):
                scratch = _Scratch(tree)
                _split(scratch, a1, SplitSpec(kind1, re1))
                for kind2 in (PARALLEL, SEQUENTIAL):
                    anchor2 = (
                        scratch.head[a2] if kind2 == PARALLEL else scratch.tail[a2]
                    )
                    avail2 = sorted(set(scratch.edges_at(anchor2)) - {a2})
                    if len(scratch.edges_at(anchor2)) > max_reattach_degree:
                        continue
                    for re2 in _subsets(avail2):
                        move = HMove(
                            (a1, a2), SplitSpec(kind1, re1), SplitSpec(kind2, re2)
                        )
                        try:
                            result = _apply_h_move(tree, move)[0]
                        except MoveNotApplicable:
                            continue
                        moves.append((move, result))
    return moves


def enumerate_moves(
    tree: DoublePointTree, max_reattach_degree: int = 8
) -> list[Move]:
    """All applicable moves in a deterministic order; every returned move
    passes :func:`apply_move` without error."""
    return [m for m, _ in enumerate_applicable(tree, max_reattach_degree)]


# -- inversion ----------------------------------------------------------------


def invert_move(tree_before: DoublePointTree, move: Move) -> Move:
    """Move that undoes ``move`` on ``apply_move(tree_before, move)``."""
    require_valid(tree_before)
    if isinstance(move, EBirth):
        s = _Scratch(tree_before)
        ea, eb = _fresh_edges(s, 2)
        _apply_e_birth(tree_before, move)  # precondition check
        return EDeath((ea, eb))
    if isinstance(move, EDeath):
        e1, e2 = move.edges
        _apply_e_death(tree_before, move)  # precondition check
        t1, h1 = tree_before.endpoints(e1)
        t2, h2 = tree_before.endpoints(e2)
        return EBirth(t1, t2, tree_before.delta_of(h1), tree_before.delta_of(h2))
    if isinstance(move, HMove):
        _, side1, side2 = _apply_h_move(tree_before, move)
        return HMerge((side2, side1))
    if isinstance(move, HMerge):
        after = _apply_h_merge(tree_before, move)
        del after
        sb, sa = move.sides[1], move.sides[0]
        # reconstruct the split that produced each side
        sides = {}
        for side in (sb, sa):
            ends = {tree_before.endpoints(side.edge)[0], tree_before.endpoints(side.edge)[1]}
            other = (ends - {side.drop}).pop() if len(ends) == 2 else side.drop
            reattach = frozenset(
                e for e in tree_before.edges_at(side.drop) if e != side.edge
            )
            a_candidates = [
                e
                for e in tree_before.edges_at(side.into)
                if e != side.edge
                and other in tree_before.endpoints(e)
            ]
            if len(a_candidates) != 1:
                raise MoveNotApplicable("cannot reconstruct the split move")
            sides[side] = (a_candidates[0], SplitSpec(side.kind, reattach))
        a1, spec1 = sides[sb]
        a2, spec2 = sides[sa]
        return HMove((a1, a2), spec1, spec2)
    raise InputError(f"unknown move {move!r}")
