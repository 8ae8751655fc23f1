"""Constructive realization of every attainable degree vector.

Two families of path-shaped building blocks carry the elementary vectors:
an ``f`` block whose degrees walk from 1 out to k and back with all edges
leaving the extremal vertex, and a ``g`` block whose degrees walk k,...,1,
...,k,...,1,...,k with all edges leaving the two interior degree-1 vertices.
Gluing blocks at degree-1 vertices adds their vectors and subtracts one unit
at index 1, so an alternating chain of blocks realizes any vector with odd
support and coefficient sum 1.
"""

from __future__ import annotations

from .errors import PreconditionError
from .invariant import InvariantVector, basis, in_image, invariant_of
from .tree import DoublePointTree, connected_sum

__all__ = [
    "building_block_f",
    "building_block_g",
    "f_merge_ids",
    "g_merge_ids",
    "decompose",
    "realize",
]


def _require_odd(k: int) -> None:
    if k % 2 == 0:
        raise PreconditionError(f"index must be odd, got {k}")


def _path_tree(
    walk: list[int],
    orientation: list[bool],
    pairs: list[tuple[int, int]],
) -> DoublePointTree:
    """Path on len(walk) vertices; orientation[i] True means edge i points
    from position i to position i+1."""
    n = len(walk)
    vertices = [(f"p{i}", walk[i]) for i in range(n)]
    edges = []
    for i in range(n - 1):
        a, b = f"p{i}", f"p{i + 1}"
        edges.append((f"q{i}", a, b) if orientation[i] else (f"q{i}", b, a))
    pairing = [(f"q{a}", f"q{b}") for a, b in pairs]
    return DoublePointTree.build(vertices, edges, pairing)


def _f_walk(k: int) -> list[int]:
    step = 2 if k >= 1 else -2
    up = list(range(1, k + step, step)) if k != 1 else [1]
    return up + up[-2::-1]


def building_block_f(k: int) -> DoublePointTree:
    """Path block with degree walk 1,...,k,...,1 and vector e_k.

    All edges leave the central extremal vertex; chords nest symmetrically
    about it.  Both endpoints have degree 1 and are the designated merge
    vertices (a single shared vertex when k is +-1).
    """
    _require_odd(k)
    walk = _f_walk(k)
    n = len(walk)
    center = n // 2
    orientation = [i >= center for i in range(n - 1)]
    m = n - 1
    pairs = [(i, m - 1 - i) for i in range(m // 2)]
    return _path_tree(walk, orientation, pairs)


def f_merge_ids(k: int) -> tuple[str, str]:
    _require_odd(k)
    n = len(_f_walk(k))
    return "p0", f"p{n - 1}"


def _g_walk(k: int) -> list[int]:
    m = (k - 1) // 2 if k >= 1 else (1 - k) // 2
    sgn = 1 if k >= 1 else -1
    return [1 + sgn * 2 * min(abs(i - m), abs(i - 3 * m)) for i in range(4 * m + 1)]


def building_block_g(k: int) -> DoublePointTree:
    """Path block with degree walk k,...,1,...,k,...,1,...,k and vector
    2*e_1 - e_k.

    Edges leave the two interior degree-1 vertices; chords nest symmetrically
    about each of them.  Those two vertices are the designated merge points.
    For k = 1 the block degenerates to the single degree-1 vertex.
    """
    _require_odd(k)
    walk = _g_walk(k)
    if len(walk) == 1:
        return _path_tree([1], [], [])
    m = (len(walk) - 1) // 4
    orientation = []
    for i in range(len(walk) - 1):
        if i < m:
            orientation.append(False)  # toward position 0
        elif i < 2 * m:
            orientation.append(True)
        elif i < 3 * m:
            orientation.append(False)
        else:
            orientation.append(True)
    pairs = [(m - 1 - d, m + d) for d in range(m)]
    pairs += [(3 * m - 1 - d, 3 * m + d) for d in range(m)]
    return _path_tree(walk, orientation, pairs)


def g_merge_ids(k: int) -> tuple[str, str]:
    _require_odd(k)
    walk = _g_walk(k)
    if len(walk) == 1:
        return "p0", "p0"
    m = (len(walk) - 1) // 4
    return f"p{m}", f"p{3 * m}"


def decompose(h: InvariantVector) -> tuple[list[int], list[int]]:
    """Split an attainable vector into positive and negative index multisets.

    Returns (a, b) sorted ascending with |a| = |b| + 1; the realized chain
    alternates f blocks over a with g blocks over b.
    """
    if not in_image(h):
        raise PreconditionError("vector is not attainable (needs odd support, sum 1)")
    a: list[int] = []
    b: list[int] = []
    for k, c in h.items():
        if c > 0:
            a.extend([k] * c)
        else:
            b.extend([k] * (-c))
    return sorted(a), sorted(b)


def realize(h: InvariantVector) -> DoublePointTree:
    """Explicit valid tree whose degree vector is ``h``.

    Alternates f blocks and g blocks from :func:`decompose`, gluing the
    running tree's right merge vertex to the next block's left merge vertex.
    """
    a, b = decompose(h)
    f_blocks = [(building_block_f(k),) + f_merge_ids(k) for k in a]
    g_blocks = [(building_block_g(k),) + g_merge_ids(k) for k in b]
    ordered: list[tuple[DoublePointTree, str, str]] = []
    for i, fb in enumerate(f_blocks):
        ordered.append(fb)
        if i < len(g_blocks):
            ordered.append(g_blocks[i])

    tree, _, right = ordered[0]
    for nxt, left2, right2 in ordered[1:]:
        tree, relabel = connected_sum(tree, right, nxt, left2)
        if right2 == left2:
            pass  # single-vertex block: the merge vertex keeps serving
        else:
            right = relabel.vertices[right2]
    got = invariant_of(tree)
    if got != h:
        raise RuntimeError(
            f"internal: realized vector {got.render()} differs from {h.render()}"
        )
    return tree
