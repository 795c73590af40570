import itertools
import random

import pytest

import brute
from nfoldopt import numeric as nm
from nfoldopt.convex import linear, squared_l2
from nfoldopt.oracles import (
    Counter,
    OracleContractError,
    augment_membership,
    augment_membership_general,
    augmentation_calls_bound,
    cco_membership,
    convex_general,
    lco_membership,
    matroid_edge_directions,
    max_norm_spanning_tree,
    optimize_bitscaling,
    optimize_general,
    solve_psd_qp,
    spanning_tree_member,
)

TRIANGLE = [(0, 1), (1, 2), (0, 2)]


def members(S):
    S = set(map(tuple, S))
    return lambda x: tuple(x) in S


def hull_directions(S):
    V = brute.hull_vertices(S)
    return [nm.sub(u, v) for u, v in itertools.combinations(V, 2)]


def test_augment_membership_examples():
    assert augment_membership(members([(0,), (1,)]), (0,), (1,), [(1,)]) == (1,)
    assert augment_membership(members([(0,), (1,)]), (1,), (1,), [(1,)]) is None
    trees = spanning_tree_member(TRIANGLE)
    y = augment_membership(trees, (1, 1, 0), (0, 0, 1), matroid_edge_directions(3))
    assert y[2] == 1 and trees(y)


def test_augment_membership_rejects_outside_point():
    with pytest.raises(ValueError):
        augment_membership(members([(0,)]), (1,), (1,), [(1,)])


def test_bitscaling_examples():
    chain = members([(0,), (1,), (2,)])
    aug = lambda x, w: augment_membership_general(chain, x, w, [(1,)], 2)
    assert optimize_bitscaling(aug, (1,), (0,), 2) == (1,)
    assert optimize_bitscaling(aug, (0,), (1,), 2) == (2,)
    cube = members(itertools.product((0, 1), repeat=2))
    aug = lambda x, w: augment_membership(cube, x, w, [(1, 0), (0, 1)])
    stats = {}
    assert optimize_bitscaling(aug, (0, 0), (2, 3), 1, stats) == (1, 1)
    assert stats["augmentations"] <= augmentation_calls_bound(2, 1, (2, 3))


def test_bitscaling_detects_bad_oracle():
    with pytest.raises(OracleContractError):
        optimize_bitscaling(lambda x, w: x, (0,), (1,), 1)


def test_lco_examples():
    cube = members(itertools.product((0, 1), repeat=2))
    assert lco_membership(cube, (0, 0), (1, -1), [(1, 0), (0, 1)]) == (1, 0)
    assert lco_membership(cube, (0, 1), (0, 0), [(1, 0), (0, 1)]) == (0, 1)
    assert lco_membership(members([(1, 0, 1)]), (1, 0, 1), (3, 1, 2), []) == (1, 0, 1)


def test_lco_matches_enumeration_on_cube_subsets():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 4)
        cube = list(itertools.product((0, 1), repeat=n))
        S = rng.sample(cube, rng.randint(1, len(cube)))
        E = hull_directions(S) if len(S) > 1 else []
        w = tuple(rng.randint(-9, 9) for _ in range(n))
        x = rng.choice(S)
        stats = {}
        got = lco_membership(members(S), x, w, E, stats)
        assert got in set(S)
        assert nm.dot(w, got) == max(nm.dot(w, s) for s in S)
        assert stats["augmentations"] <= augmentation_calls_bound(n, 1, w)
        if augment_membership(members(S), x, w, E) is None:
            assert nm.dot(w, x) == max(nm.dot(w, s) for s in S)


def test_cco_examples():
    cube = members(itertools.product((0, 1), repeat=2))
    out = cco_membership(cube, (0, 0), squared_l2(((1, -1),)), [(1, 0), (0, 1)])
    assert out.value == 1 and out.point == (0, 1)
    lin = cco_membership(cube, (0, 0), linear((1, -1)), [(1, 0), (0, 1)])
    assert lin.point == lco_membership(cube, (0, 0), (1, -1), [(1, 0), (0, 1)])
    single = cco_membership(members([(1, 1)]), (1, 1), squared_l2(((1, 2),)), [])
    assert single.point == (1, 1)


def test_general_augmentation_examples():
    chain = members([(0,), (1,), (2,)])
    assert augment_membership_general(chain, (0,), (1,), [(1,)], 2) == (2,)
    assert augment_membership_general(chain, (2,), (1,), [(1,)], 2) is None
    S = [(0, 0), (1, 2), (2, 1)]
    got = augment_membership_general(members(S), (0, 0), (1, 1), [(1, 2), (2, 1), (1, -1)], 2)
    assert got == (1, 2)


def test_optimize_general_examples():
    assert optimize_general(members([(2, 2)]), (2, 2), (1, 5), [], 2) == (2, 2)
    chain = members([(0,), (1,), (2,), (3,)])
    assert optimize_general(chain, (0,), (1,), [(1,)], 3) == (3,)


def test_general_sets_match_enumeration():
    rng = random.Random(11)
    for _ in range(60):
        S = sorted({(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(1, 6))})
        V = brute.hull_vertices(S)
        E = hull_directions(S)
        x = rng.choice(V)
        w = (rng.randint(-4, 4), rng.randint(-4, 4))
        got = optimize_general(members(S), x, w, E, 3)
        assert nm.dot(w, got) == max(nm.dot(w, s) for s in S)
        step = augment_membership_general(members(S), x, w, E, 3)
        if step is not None:
            assert step in V and nm.dot(w, step) > nm.dot(w, x)


def test_convex_general_matches_enumeration():
    rng = random.Random(5)
    for _ in range(30):
        S = sorted({(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(1, 6))})
        V = brute.hull_vertices(S)
        W = ((rng.randint(-2, 2), rng.randint(-2, 2)), (rng.randint(-2, 2), rng.randint(-2, 2)))
        out = convex_general(members(S), V[0], squared_l2(W), hull_directions(S) or [(1, 0)], 2)
        assert out.value == max(brute.sq(nm.matvec(W, s)) for s in S)
    assert convex_general(members([(1, 2)]), (1, 2), squared_l2(((1, 1),)), [], 2).point == (1, 2)


def test_matroid_directions():
    assert matroid_edge_directions(2) == [(1, -1)]
    assert matroid_edge_directions(3) == [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
    assert matroid_edge_directions(1) == []


def test_psd_qp():
    assert solve_psd_qp(((1, 1),)).point == (1, 1) and solve_psd_qp(((1, 1),)).value == 4
    zero = solve_psd_qp(((0, 0, 0),))
    assert zero.value == 0 and zero.point == (0, 0, 0)
    neg = solve_psd_qp(((1, -1),))
    assert neg.value == 1 and neg.point == (0, 1)


def test_psd_qp_random_against_cube():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 4)
        W = tuple(tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(1, 2)))
        best = max(brute.sq(nm.matvec(W, x)) for x in itertools.product((0, 1), repeat=n))
        assert solve_psd_qp(W).value == best


def _trees(edges):
    member = spanning_tree_member(edges)
    return [x for x in itertools.product((0, 1), repeat=len(edges)) if member(x)]


def test_spanning_tree_examples():
    u = [(1, 0), (0, 1), (1, 1)]
    out = max_norm_spanning_tree(TRIANGLE, u, 2)
    assert out.value == 5 and out.point[2] == 1
    assert max_norm_spanning_tree([(0, 1)], [(3, 4)], 2).point == (1,)
    out = max_norm_spanning_tree(TRIANGLE, [(2, 0), (0, 1), (0, 1)], "inf")
    # {e2, e3} sums to (0, 2) and ties the trees through e1
    assert out.value == 2
    assert out.point in [x for x in _trees(TRIANGLE) if brute.inf_norm(nm.matvec(((2, 0, 0), (0, 1, 1)), x)) == 2]


def test_spanning_tree_disconnected():
    with pytest.raises(ValueError):
        max_norm_spanning_tree([(0, 1), (2, 3)], [(1,), (1,)], 2)


def test_spanning_tree_matches_enumeration():
    rng = random.Random(2)
    K4 = list(itertools.combinations(range(4), 2))
    for p in (1, 2, 3, "inf"):
        for _ in range(5):
            u = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in K4]
            f = brute.inf_norm if p == "inf" else (lambda z, p=p: sum(abs(a) ** p for a in z))
            best = max(f(tuple(sum(u[j][i] for j in range(6) if x[j]) for i in range(2))) for x in _trees(K4))
            assert max_norm_spanning_tree(K4, u, p).value == best


def test_counter_wrapper():
    c = Counter(lambda x: x + 1)
    c(1), c(2)
    assert c.calls == 2
