"""Bounded exhaustive enumeration of valid trees and reachability search.

Enumeration grows unlabelled tree shapes by leaf attachment, then dresses
each shape with every perfect matching of its edges and every degree
assignment within the bound.  Edge directions are forced by the pairing (each
edge points away from the side holding its conjugate), and the validator is
run on every emitted tree.  Deduplication is by canonical code.

The reachability search is a deterministic breadth-first walk of the move
graph keyed by canonical codes.  A degree-vector mismatch certifies
unreachability outright; a found path replays move by move; exhausting the
bounds yields "unknown" - a positive search answer is evidence at the
combinatorial level only, while the mismatch certificate is a sound
obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .canonical import canonical_code
from .errors import PreconditionError, ResourceLimitError
from .invariant import InvariantVector, invariant_of
from .moves import Move, enumerate_applicable
from .tree import DoublePointTree, require_valid, validate

__all__ = ["ReachResult", "enumerate_trees", "reachable"]

MAX_ENUM_VERTICES = 9
MAX_ENUM_DELTA = 19

REACHED = "reached"
CERTIFIED_UNREACHABLE = "certified_unreachable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ReachResult:
    status: str
    path: Optional[tuple[Move, ...]] = None
    source_invariant: Optional[InvariantVector] = None
    target_invariant: Optional[InvariantVector] = None


# -- shape generation ---------------------------------------------------------


def _shape_key(n: int, edges: tuple[tuple[int, int], ...]) -> str:
    """Canonical string for an unlabelled free tree on n vertices."""
    if n == 1:
        return "()"
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    removed = [False] * n
    while remaining > 2:
        nxt = []
        for v in layer:
            removed[v] = True
            remaining -= 1
            for w in adj[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    centers = [v for v in range(n) if not removed[v]]

    def enc(v: int, parent: int) -> str:
        subs = sorted(enc(w, v) for w in adj[v] if w != parent)
        return "(" + "".join(subs) + ")"

    return min(enc(c, -1) for c in centers)


def _tree_shapes(max_vertices: int) -> dict[int, list[tuple[tuple[int, int], ...]]]:
    shapes: dict[int, list[tuple[tuple[int, int], ...]]] = {1: [()]}
    seen: dict[int, set[str]] = {1: {_shape_key(1, ())}}
    for n in range(2, max_vertices + 1):
        shapes[n] = []
        seen[n] = set()
        for base in shapes[n - 1]:
            for v in range(n - 1):
                cand = base + ((v, n - 1),)
                key = _shape_key(n, cand)
                if key not in seen[n]:
                    seen[n].add(key)
                    shapes[n].append(cand)
    return shapes


def _matchings(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for sub in _matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + sub


def _orient(
    n: int, edges: tuple[tuple[int, int], ...], matching: list[tuple[int, int]]
) -> list[tuple[int, int]]:
    """Direct each edge away from the side containing its conjugate."""
    partner = {}
    for a, b in matching:
        partner[a] = b
        partner[b] = a
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (a, b) in enumerate(edges):
        adj[a].append((i, b))
        adj[b].append((i, a))

    def side(e: int, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for f, w in adj[v]:
                if f != e and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    oriented = []
    for i, (a, b) in enumerate(edges):
        pa, _ = edges[partner[i]]
        # tail must be on the conjugate's side
        if pa in side(i, a):
            oriented.append((a, b))
        else:
            oriented.append((b, a))
    return oriented


def _delta_assignments(
    n: int, edges: tuple[tuple[int, int], ...], bound: int
):
    """All degree maps with odd values in [-bound, bound] stepping by 2
    across every edge."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    order = [0]
    parent = {0: None}
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)

    def assign(idx: int, deltas: list[int]):
        if idx == n:
            yield tuple(deltas)
            return
        v = order[idx]
        for d in (deltas[parent[v]] - 2, deltas[parent[v]] + 2):
            if abs(d) <= bound:
                deltas[v] = d
                yield from assign(idx + 1, deltas)

    for d0 in range(-bound, bound + 1, 2):
        if d0 % 2 == 0:
            continue
        deltas = [0] * n
        deltas[order[0]] = d0
        yield from assign(1, deltas)


def enumerate_trees(
    max_vertices: int, delta_bound: int
) -> dict[bytes, DoublePointTree]:
    """Every valid tree with at most ``max_vertices`` vertices and degrees
    bounded by ``delta_bound``, exactly once per isomorphism class, keyed by
    canonical code."""
    if max_vertices < 1 or delta_bound < 1:
        raise PreconditionError("bounds must be at least 1")
    if max_vertices > MAX_ENUM_VERTICES or delta_bound > MAX_ENUM_DELTA:
        raise ResourceLimitError(
            f"enumeration bounded to {MAX_ENUM_VERTICES} vertices and "
            f"|delta| <= {MAX_ENUM_DELTA}"
        )
    shapes = _tree_shapes(max_vertices)
    out: dict[bytes, DoublePointTree] = {}
    for n in range(1, max_vertices + 1, 2):
        for edges in shapes[n]:
            for matching in _matchings(list(range(len(edges)))):
                oriented = _orient(n, edges, matching)
                for deltas in _delta_assignments(n, edges, delta_bound):
                    tree = DoublePointTree.build(
                        [(f"v{i}", deltas[i]) for i in range(n)],
                        [
                            (f"e{i}", f"v{t}", f"v{h}")
                            for i, (t, h) in enumerate(oriented)
                        ],
                        [(f"e{a}", f"e{b}") for a, b in matching],
                    )
                    if not validate(tree).ok:  # construction should be valid
                        continue
                    code = canonical_code(tree)
                    if code not in out:
                        out[code] = tree
    return out


# -- reachability -------------------------------------------------------------


def reachable(
    source: DoublePointTree,
    target: DoublePointTree,
    max_steps: int = 6,
    max_vertices: int = 11,
    max_reattach_degree: int = 6,
) -> ReachResult:
    """Search the move graph from ``source`` for a tree isomorphic to
    ``target``.

    A degree-vector mismatch is certified as unreachable immediately; a found
    path is replayable move by move; otherwise the verdict within the given
    bounds is unknown.
    """
    require_valid(source)
    require_valid(target)
    inv_s = invariant_of(source, check=False)
    inv_t = invariant_of(target, check=False)
    if inv_s != inv_t:
        return ReachResult(
            CERTIFIED_UNREACHABLE,
            source_invariant=inv_s,
            target_invariant=inv_t,
        )
    start = canonical_code(source)
    goal = canonical_code(target)
    if start == goal:
        return ReachResult(REACHED, path=(), source_invariant=inv_s,
                           target_invariant=inv_t)

    visited: dict[bytes, tuple[DoublePointTree, Optional[bytes], Optional[Move]]]
    visited = {start: (source, None, None)}
    frontier = [start]

    def path_to(code: bytes) -> tuple[Move, ...]:
        steps = []
        while True:
            _, parent, move = visited[code]
            if parent is None:
                break
            steps.append(move)
            code = parent
        return tuple(reversed(steps))

    for _ in range(max_steps):
        next_frontier: list[bytes] = []
        for code in sorted(frontier):
            tree = visited[code][0]
            for move, after in enumerate_applicable(tree, max_reattach_degree):
                if after.vertex_count > max_vertices:
                    continue
                c2 = canonical_code(after)
                if c2 in visited:
                    continue
                visited[c2] = (after, code, move)
                if c2 == goal:
                    return ReachResult(
                        REACHED,
                        path=path_to(c2),
                        source_invariant=inv_s,
                        target_invariant=inv_t,
                    )
                next_frontier.append(c2)
        if not next_frontier:
            break
        frontier = next_frontier
    return ReachResult(UNKNOWN, source_invariant=inv_s, target_invariant=inv_t)
