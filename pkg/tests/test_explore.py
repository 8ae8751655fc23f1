import random

import pytest

from dptree import (
    EBirth,
    PreconditionError,
    ResourceLimitError,
    apply_move,
    canonical_code,
    enumerate_trees,
    in_image,
    invariant_of,
    isomorphic,
    reachable,
    validate,
)

from conftest import build, make_j


def test_counts_smallest():
    assert len(enumerate_trees(1, 1)) == 2


def test_two_vertices_add_nothing():
    assert len(enumerate_trees(2, 5)) == len(enumerate_trees(1, 5))


def test_count_three_vertices_bound_three():
    # independent count: singles with |delta| <= 3 plus outward stars with
    # center sigma and unordered leaf degrees from {sigma +- 2} within bound
    singles = len([d for d in range(-3, 4) if d % 2])
    stars = 0
    for sigma in (-3, -1, 1, 3):
        choices = [d for d in (sigma - 2, sigma + 2) if abs(d) <= 3]
        stars += len(choices) * (len(choices) + 1) // 2
    assert singles + stars == 12
    assert len(enumerate_trees(3, 3)) == 12


def test_every_enumerated_tree_valid_and_unique():
    trees = enumerate_trees(5, 3)
    for code, tree in trees.items():
        assert validate(tree).ok
        assert canonical_code(tree) == code
        assert in_image(invariant_of(tree, check=False))


def test_bad_bounds():
    with pytest.raises(PreconditionError):
        enumerate_trees(0, 3)
    with pytest.raises(ResourceLimitError):
        enumerate_trees(11, 3)
    with pytest.raises(ResourceLimitError):
        enumerate_trees(3, 99)


def test_reach_certified_unreachable(e_tree, neg_e_tree):
    res = reachable(e_tree, neg_e_tree)
    assert res.status == "certified_unreachable"
    assert res.source_invariant.render() == "1:1"
    assert res.target_invariant.render() == "-1:1"


def test_reach_e_to_j_unreachable(e_tree, j_tree):
    res = reachable(e_tree, j_tree)
    assert res.status == "certified_unreachable"


def test_reach_one_step(e_tree):
    target = apply_move(e_tree, EBirth("v", "v", 3, 3))
    res = reachable(e_tree, target)
    assert res.status == "reached"
    assert len(res.path) == 1
    replay = e_tree
    for move in res.path:
        replay = apply_move(replay, move)
    assert isomorphic(replay, target)


def test_reach_self(j_tree):
    res = reachable(j_tree, j_tree)
    assert res.status == "reached"
    assert res.path == ()


def test_reach_two_steps(e_tree):
    mid = apply_move(e_tree, EBirth("v", "v", -1, -1))
    target = apply_move(mid, EBirth("v", "v", 3, 3))
    res = reachable(e_tree, target, max_steps=3)
    assert res.status == "reached"
    assert 1 <= len(res.path) <= 2
    replay = e_tree
    for move in res.path:
        replay = apply_move(replay, move)
    assert isomorphic(replay, target)


def test_reach_unknown_when_bounds_exhaust(e_tree):
    # same invariant, but the target needs more vertices than allowed
    target = e_tree
    for _ in range(3):
        target = apply_move(target, EBirth(target.vertex_ids[0], target.vertex_ids[0], 3, 3))
    res = reachable(e_tree, target, max_steps=1, max_vertices=3)
    assert res.status == "unknown"


def test_certificates_sound_on_equal_invariants():
    rng = random.Random(17)
    trees = [t for t in enumerate_trees(3, 3).values()]
    for _ in range(12):
        a, b = rng.sample(trees, 2)
        res = reachable(a, b, max_steps=2, max_vertices=7)
        if invariant_of(a) == invariant_of(b):
            assert res.status in ("reached", "unknown")
        else:
            assert res.status == "certified_unreachable"


def test_search_deterministic(e_tree, j_tree):
    star = apply_move(e_tree, EBirth("v", "v", 3, 3))
    r1 = reachable(e_tree, star)
    r2 = reachable(e_tree, star)
    assert r1.path == r2.path
