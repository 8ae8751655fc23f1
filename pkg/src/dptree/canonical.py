"""Isomorphism-invariant canonical codes for double point trees.

Isomorphism means a bijection of vertices and edges preserving incidence,
edge direction, vertex degree, and the pairing.  The code is the minimum,
over rootings at the tree's one or two centers and over orderings of
structurally identical siblings, of a pre-order stream that spells out
degrees, directions, and pairing back-references by emission position.
Relabelling therefore cannot change the code, and two trees share a code
exactly when the streams describe the same structure.
"""

from __future__ import annotations

from .tree import DoublePointTree, require_valid

__all__ = ["canonical_code", "canonical_hex", "isomorphic"]


def _centers(tree: DoublePointTree) -> list[int]:
    n = tree.vertex_count
    if n == 1:
        return [0]
    adj: list[set[int]] = [set() for _ in range(n)]
    for t, h in zip(tree.tails, tree.heads):
        adj[t].add(h)
        adj[h].add(t)
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        nxt = []
        for v in layer:
            remaining -= 1
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
            degree[v] = 0
        layer = nxt
    return sorted(layer)


def _rooted_children(tree: DoublePointTree, root: int) -> list[list[tuple[int, int]]]:
    """children[v] = [(edge, child)] pairs discovered rooting at ``root``."""
    children: list[list[tuple[int, int]]] = [[] for _ in range(tree.vertex_count)]
    seen = {root}
    queue = [root]
    while queue:
        v = queue.pop()
        for e in tree.incidence(v):
            w = tree.heads[e] if tree.tails[e] == v else tree.tails[e]
            if w not in seen:
                seen.add(w)
                children[v].append((e, w))
                queue.append(w)
    return children


def _subtree_labels(
    tree: DoublePointTree, root: int, children: list[list[tuple[int, int]]]
) -> dict[tuple[int, int], str]:
    """Structural label per (edge, child): degree/direction shape of the
    rooted subtree, ignoring the pairing.  Only used to group and order
    siblings; the pairing is resolved by the stream search itself."""
    labels: dict[tuple[int, int], str] = {}

    def lab(v: int) -> str:
        parts = sorted(edge_lab(e, c) for e, c in children[v])
        return f"({tree.deltas[v]}|{','.join(parts)})"

    def edge_lab(e: int, c: int) -> str:
        down = 1 if tree.tails[e] != c else 0  # 1: edge points toward the child
        s = f"{down}{lab(c)}"
        labels[(e, c)] = s
        return s

    lab(root)
    return labels


def _min_stream(tree: DoublePointTree, root: int) -> tuple[int, ...]:
    """Lexicographically minimal emission stream over sibling orderings.

    Backtracking search with prefix pruning against the best stream found so
    far.  Siblings are grouped by structural label; groups are emitted in
    sorted label order and only permutations within a group are explored, so
    the candidate set is itself an isomorphism invariant.
    """
    children = _rooted_children(tree, root)
    glabels = _subtree_labels(tree, root, children)
    total_len = tree.vertex_count * 2 + tree.edge_count * 2

    best: list[int] | None = None
    best_version = 0
    cur: list[int] = []
    elog: list[int] = []
    epos: dict[int, int] = {}
    mode = "eq"  # comparison state vs best: still equal, or already smaller

    def out(x: int) -> bool:
        nonlocal mode
        if best is not None and mode == "eq":
            b = best[len(cur)]
            if x > b:
                return False
            if x < b:
                mode = "lt"
        cur.append(x)
        return True

    def snapshot():
        return len(cur), len(elog), mode, best_version

    def restore(snap) -> None:
        nonlocal mode
        clen, eloglen, smode, sversion = snap
        del cur[clen:]
        while len(elog) > eloglen:
            del epos[elog.pop()]
        # a new best always extends every active prefix, so prefixes are
        # exactly equal to it again
        mode = smode if sversion == best_version else "eq"

    def complete() -> None:
        nonlocal best, best_version, mode
        if best is None or mode == "lt":
            best = cur.copy()
            best_version += 1
            mode = "eq"

    def visit(v: int, cont) -> None:
        kids = children[v]
        if not out(tree.deltas[v]):
            return
        if not out(len(kids)):
            return
        if not kids:
            cont()
            return
        groups: dict[str, list[tuple[int, int]]] = {}
        for ec in kids:
            groups.setdefault(glabels[ec], []).append(ec)
        glist = [groups[k] for k in sorted(groups)]
        place(v, glist, 0, None, cont)

    def place(v: int, glist, gi: int, remaining, cont) -> None:
        if remaining is None:
            if gi == len(glist):
                cont()
                return
            remaining = glist[gi]
        if not remaining:
            place(v, glist, gi + 1, None, cont)
            return
        for idx in range(len(remaining)):
            snap = snapshot()
            e, c = remaining[idx]
            down = 1 if tree.tails[e] == v else 0
            partner = tree.pairing[e]
            ref = epos[partner] + 1 if partner in epos else 0
            if out(down) and out(ref):
                epos[e] = len(elog)
                elog.append(e)
                rest = remaining[:idx] + remaining[idx + 1 :]
                visit(c, lambda rest=rest: place(v, glist, gi, rest, cont))
            restore(snap)

    visit(root, complete)
    if best is None or len(best) != total_len:  # pragma: no cover - safety net
        raise RuntimeError("canonical stream search failed")
    return tuple(best)


def canonical_code(tree: DoublePointTree) -> bytes:
    """Total, id-independent fingerprint; equal codes iff isomorphic trees."""
    require_valid(tree)
    chosen = min(_min_stream(tree, r) for r in _centers(tree))
    return ",".join(str(x) for x in chosen).encode("ascii")


def canonical_hex(tree: DoublePointTree) -> str:
    """Lowercase hex rendering of the code, for display and CLI keys."""
    return canonical_code(tree).hex()


def isomorphic(t1: DoublePointTree, t2: DoublePointTree) -> bool:
    return canonical_code(t1) == canonical_code(t2)
