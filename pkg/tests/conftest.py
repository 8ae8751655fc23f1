"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's own code paths: the degree
vector is recomputed from raw incidence counts, and isomorphism is decided by
trying every vertex bijection.
"""

from __future__ import annotations

from itertools import permutations

import pytest

from dptree import DoublePointTree, InvariantVector


def build(vertices, edges, pairing):
    return DoublePointTree.build(vertices, edges, pairing)


@pytest.fixture
def e_tree():
    return build([("v", 1)], [], [])


@pytest.fixture
def neg_e_tree():
    return build([("v", -1)], [], [])


def make_j():
    return build(
        [("v", 3), ("w1", 1), ("w2", 1)],
        [("a", "v", "w1"), ("b", "v", "w2")],
        [("a", "b")],
    )


@pytest.fixture
def j_tree():
    return make_j()


@pytest.fixture
def neg_j_tree():
    from dptree import negate

    return negate(make_j())


def make_two_roots(root_delta, leaf_delta):
    """Path w1 - v1 - w2 - v2 - w3 drawn as two roots sharing a middle leaf."""
    return build(
        [
            ("v1", root_delta),
            ("v2", root_delta),
            ("w1", leaf_delta),
            ("w2", leaf_delta),
            ("w3", leaf_delta),
        ],
        [
            ("a", "v1", "w1"),
            ("b", "v1", "w2"),
            ("c", "v2", "w2"),
            ("d", "v2", "w3"),
        ],
        [("a", "b"), ("c", "d")],
    )


@pytest.fixture
def fig9_trees():
    third = build(
        [("v1", 3), ("v2", -1), ("w1", 1), ("w2", 1), ("w3", 1)],
        [
            ("a", "v1", "w1"),
            ("b", "v1", "w2"),
            ("c", "v2", "w2"),
            ("d", "v2", "w3"),
        ],
        [("a", "b"), ("c", "d")],
    )
    fourth = build(
        [
            ("v", 1),
            ("u1", -1),
            ("z1", 1),
            ("u2", -1),
            ("z2", 1),
            ("u3", -1),
            ("z3", 1),
        ],
        [
            ("a1", "u1", "v"),
            ("b1", "u1", "z1"),
            ("a2", "u2", "v"),
            ("b2", "u2", "z2"),
            ("a3", "u3", "v"),
            ("b3", "u3", "z3"),
        ],
        [("a1", "b1"), ("a2", "b2"), ("a3", "b3")],
    )
    return [
        make_two_roots(3, 1),
        make_two_roots(1, -1),
        third,
        fourth,
    ]


# -- independent oracles ---------------------------------------------------


def f_oracle(tree: DoublePointTree) -> InvariantVector:
    """Degree vector recomputed from scratch: sum of (1 - indegree) per
    degree value, using nothing but the raw edge lists."""
    indeg = {v: 0 for v in tree.vertex_ids}
    for i in range(tree.edge_count):
        indeg[tree.vertex_ids[tree.heads[i]]] += 1
    acc: dict[int, int] = {}
    for v, d in zip(tree.vertex_ids, tree.deltas):
        acc[d] = acc.get(d, 0) + 1 - indeg[v]
    return InvariantVector(acc)


def brute_force_isomorphic(t1: DoublePointTree, t2: DoublePointTree) -> bool:
    """Try all vertex bijections; check degrees, directed edges, pairing."""
    if t1.vertex_count != t2.vertex_count or t1.edge_count != t2.edge_count:
        return False
    n = t1.vertex_count
    edges1 = list(zip(t1.tails, t1.heads))
    edges2 = set(zip(t2.tails, t2.heads))
    for perm in permutations(range(n)):
        if any(t1.deltas[v] != t2.deltas[perm[v]] for v in range(n)):
            continue
        emap = {}
        ok = True
        for i, (a, b) in enumerate(edges1):
            target = (perm[a], perm[b])
            if target not in edges2:
                ok = False
                break
            # locate the edge index in t2
            for j in range(t2.edge_count):
                if (t2.tails[j], t2.heads[j]) == target and j not in emap.values():
                    emap[i] = j
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        pair_ok = True
        for i in range(t1.edge_count):
            p = t1.pairing[i]
            q = t2.pairing[emap[i]]
            if (p is None) != (q is None):
                pair_ok = False
                break
            if p is not None and emap[p] != q:
                pair_ok = False
                break
        if pair_ok:
            return True
    return False
