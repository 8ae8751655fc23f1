import random

import pytest

from dptree import (
    DoublePointTree,
    InvalidTreeError,
    canonical_code,
    canonical_hex,
    enumerate_trees,
    isomorphic,
    negate,
)
from dptree.realize import building_block_f, building_block_g

from conftest import brute_force_isomorphic, build, make_j, make_two_roots


def relabel(tree: DoublePointTree, rng: random.Random) -> DoublePointTree:
    vnames = [f"x{i}" for i in range(tree.vertex_count)]
    enames = [f"y{i}" for i in range(tree.edge_count)]
    rng.shuffle(vnames)
    rng.shuffle(enames)
    vorder = list(range(tree.vertex_count))
    eorder = list(range(tree.edge_count))
    rng.shuffle(vorder)
    rng.shuffle(eorder)
    vmap = {i: vnames[i] for i in range(tree.vertex_count)}
    pairs = []
    for i, p in enumerate(tree.pairing):
        if p is not None and i < p:
            pairs.append((enames[i], enames[p]))
    return build(
        [(vmap[i], tree.deltas[i]) for i in vorder],
        [
            (enames[i], vmap[tree.tails[i]], vmap[tree.heads[i]])
            for i in eorder
        ],
        pairs,
    )


def test_relabeled_j_same_code(j_tree):
    rng = random.Random(3)
    for _ in range(10):
        assert canonical_code(relabel(j_tree, rng)) == canonical_code(j_tree)


def test_j_vs_inward_star_differ(j_tree):
    star = build(
        [("c", 1), ("l1", 3), ("l2", 3)],
        [("a", "c", "l1"), ("b", "c", "l2")],
        [("a", "b")],
    )
    assert canonical_code(star) != canonical_code(j_tree)


def test_negation_changes_code(j_tree):
    assert canonical_code(negate(j_tree)) != canonical_code(j_tree)


def test_isomorphic_reflexive(j_tree):
    assert isomorphic(j_tree, j_tree)
    assert isomorphic(make_two_roots(3, 1), make_two_roots(3, 1))


def test_blocks_not_isomorphic():
    assert not isomorphic(building_block_f(3), building_block_g(1))
    assert not isomorphic(building_block_f(5), building_block_g(5))


def test_invalid_tree_rejected():
    bad = build([("a", 2)], [], [])
    with pytest.raises(InvalidTreeError):
        canonical_code(bad)


def test_hex_is_stable(j_tree):
    h = canonical_hex(j_tree)
    assert h == canonical_code(j_tree).hex()
    assert all(c in "0123456789abcdef" for c in h)


def test_pairing_distinguishes():
    # same shape and degrees, different chord structure
    nested = building_block_f(5)
    walk = [1, 3, 5, 3, 1]
    interleaved = build(
        [(f"p{i}", walk[i]) for i in range(5)],
        [
            ("q0", "p1", "p0"),
            ("q1", "p2", "p1"),
            ("q2", "p2", "p3"),
            ("q3", "p3", "p4"),
        ],
        [("q0", "q2"), ("q1", "q3")],
    )
    assert not isomorphic(nested, interleaved)


def test_codes_agree_with_brute_force():
    rng = random.Random(5)
    trees = list(enumerate_trees(5, 3).values())
    # positive checks: relabelled copies collide
    for t in rng.sample(trees, min(25, len(trees))):
        assert canonical_code(relabel(t, rng)) == canonical_code(t)
    # negative checks: distinct codes really mean non-isomorphic
    for _ in range(60):
        t1, t2 = rng.sample(trees, 2)
        same_code = canonical_code(t1) == canonical_code(t2)
        assert same_code == brute_force_isomorphic(t1, t2)


def test_injectivity_against_brute_force_small():
    trees = list(enumerate_trees(3, 3).values())
    for i, t1 in enumerate(trees):
        for t2 in trees[i + 1 :]:
            assert not brute_force_isomorphic(t1, t2)
            assert canonical_code(t1) != canonical_code(t2)
