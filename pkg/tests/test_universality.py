import itertools
import random

import pytest

import brute
from nfoldopt import numeric as nm
from nfoldopt.models import (
    count_line_sum_tables,
    gadget_entry_unique,
    line_sum_tables,
    subset_sum_gadget,
    table_entry_unique,
    universality_reduce,
)
from nfoldopt.models.tables import dense


def lines_of(T):
    p, q, n = len(T), len(T[0]), len(T[0][0])
    u = [[sum(T[i][j]) for j in range(q)] for i in range(p)]
    v = [[sum(T[i][j][k] for j in range(q)) for k in range(n)] for i in range(p)]
    z = [[sum(T[i][j][k] for i in range(p)) for k in range(n)] for j in range(q)]
    return u, v, z


def satisfies(table, u, v, z):
    T = dense(table, (len(u), len(z), len(v[0])))
    return min(a for row in T for col in row for a in col) >= 0 and lines_of(T) == (
        [list(r) for r in u],
        [list(r) for r in v],
        [list(r) for r in z],
    )


def test_table_search_matches_brute_force():
    rng = random.Random(1)
    done = 0
    while done < 40:
        p, q, n = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        T = [[[rng.randint(0, 2) for _ in range(n)] for _ in range(q)] for _ in range(p)]
        u, v, z = lines_of(T)
        space = 1
        for i, j, k in itertools.product(range(p), range(q), range(n)):
            space *= min(u[i][j], v[i][k], z[j][k]) + 1
        if space > 50000:
            continue
        done += 1
        got = sorted(str(dense(t, (p, q, n))) for t in line_sum_tables(u, v, z))
        assert got == sorted(str(t) for t in brute.line_sum_tables(u, v, z))


def test_table_search_empty_and_fixed():
    assert count_line_sum_tables([[1]], [[1]], [[2]]) == 0
    u = v = z = [[1, 1], [1, 1]]
    assert count_line_sum_tables(u, v, z) == 2
    assert count_line_sum_tables(u, v, z, limit=1) == 1
    only = list(line_sum_tables(u, v, z, {(0, 0, 0): (1, 1)}))
    assert len(only) == 1 and only[0][(0, 0, 0)] == 1


def test_entry_unique_on_tables():
    u = v = z = [[1, 1], [1, 1]]
    assert table_entry_unique(u, v, z, (0, 0, 0)) is False
    assert table_entry_unique([[2]], [[2]], [[2]], (0, 0, 0)) is True
    assert table_entry_unique([[1]], [[1]], [[2]], (0, 0, 0)) is None


def check_certificate(A, b):
    n = len(A[0])
    cert = universality_reduce(A, b)
    assert len(set(cert.sigma)) == n
    assert len(cert.u) == cert.rows and len(cert.z) == cert.cols
    assert all(len(row) == 3 for row in cert.v) and all(len(row) == 3 for row in cert.z)
    # integer points of P by brute force inside the coordinate bound
    pts = brute.fiber(A, b, [0] * n, [cert.bound] * n)
    images = []
    for table in cert.tables():
        assert satisfies(table, cert.u, cert.v, cert.z)
        images.append(cert.project(table))
    assert len(images) == len(set(images)) == len(pts)
    assert set(images) == set(pts)
    return cert, pts


def test_segment():
    _, pts = check_certificate(((1, 1),), (1,))
    assert len(pts) == 2


def test_two_point_line():
    _, pts = check_certificate(((2, 3),), (6,))
    assert sorted(pts) == [(0, 2), (3, 0)]


def test_single_point():
    _, pts = check_certificate(((1,),), (0,))
    assert pts == [(0,)]


def test_empty_polytope():
    _, pts = check_certificate(((2,),), (3,))
    assert pts == []


def test_dense_projection_agrees_with_sparse():
    cert = universality_reduce(((1, 2),), (2,))
    for table in cert.tables():
        assert cert.project(dense(table, (cert.rows, cert.cols, 3))) == cert.project(table)


def test_unbounded_rejected():
    with pytest.raises(ValueError):
        universality_reduce(((1, -1),), (0,))
    with pytest.raises(ValueError):
        universality_reduce(((1, 1),), (1, 2))


def test_exhaustive_single_rows():
    for a in itertools.product(range(0, 4), repeat=2):
        if 0 in a:
            continue
        for b in range(0, 4):
            check_certificate((a,), (b,))


def test_random_systems():
    rng = random.Random(4)
    done = 0
    while done < 12:
        n = rng.randint(1, 3)
        A = tuple(tuple(rng.randint(-1, 3) for _ in range(n)) for _ in range(rng.randint(1, 2)))
        y = [rng.randint(0, 2) for _ in range(n)]
        b = nm.matvec(A, y)
        if not all(any(row[j] > 0 for row in A) for j in range(n)):
            continue
        try:
            check_certificate(A, b)
        except ValueError:
            continue
        done += 1


def test_gadget_examples():
    g = subset_sum_gadget(5, (2, 3))
    assert gadget_entry_unique(g) is False
    assert gadget_entry_unique(subset_sum_gadget(4, (2, 3))) is True
    assert gadget_entry_unique(subset_sum_gadget(1, ())) is True
    with pytest.raises(ValueError):
        subset_sum_gadget(3, (0, 1))


def test_gadget_cell_carries_the_target_indicator():
    g = subset_sum_gadget(5, (2, 3))
    values = {t.get(g.cell, 0) for t in g.certificate.tables()}
    assert values == {0, 1}


def test_gadget_small_exhaustive():
    for m in range(0, 3):
        for a in itertools.product(range(1, 5), repeat=m):
            for a0 in range(1, 6):
                expect = not brute.subset_sum_hits(a0, a)
                assert gadget_entry_unique(subset_sum_gadget(a0, a)) == expect, (a0, a)
