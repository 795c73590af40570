"""Optimization over sets known only through membership or augmentation oracles.

``member(x) -> bool`` answers x in S.  ``aug(x, w)`` returns a point of S
with a larger w-value than x, or ``None`` when x is w-optimal.
"""

from __future__ import annotations

from . import numeric as nm
from .convex import ConvexObjective, lp_power, linf, maximize_convex_composite, squared_l2
from .lp import is_extreme_ray
from .outcome import Optimal


class OracleContractError(RuntimeError):
    pass


class Counter:
    """Wraps an oracle and counts its calls."""

    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, *args):
        self.calls += 1
        return self.fn(*args)


def _unit_direction(e):
    """Scale e into {-1,0,1}^n if it is a multiple of such a vector, else None."""
    m = nm.norm_inf(e)
    if m == 0 or any(a % m for a in e):
        return None
    return tuple(a // m for a in e)


def augment_membership(member, x, w, E):
    """Better point of S in {0,1}^n reachable by one edge step, or None if x is optimal."""
    x = tuple(x)
    if not member(x):
        raise ValueError("starting point is not in S")
    steps = set()
    for e in E:
        u = _unit_direction(e)
        if u is None:
            continue
        if nm.dot(w, u) < 0:
            u = nm.neg(u)
        if nm.dot(w, u) > 0:
            steps.add(u)
    for e in sorted(steps):
        y = nm.add(x, e)
        if member(y):
            return y
    return None


def augmentation_calls_bound(n: int, rho: int, w) -> int:
    return 2 * n * rho * max((abs(a).bit_length() for a in w), default=0)


def optimize_bitscaling(aug, x, w, rho: int, stats: dict | None = None):
    """Maximize w over S by augmenting along successively finer truncations of w."""
    x = tuple(x)
    w = nm.vec(w)
    k = max((abs(a).bit_length() for a in w), default=0)
    calls = 0
    augmentations = 0
    for i in range(1, k + 1):
        u = tuple(nm.sign(a) * (abs(a) >> (k - i)) for a in w)
        while True:
            calls += 1
            y = aug(x, u)
            if y is None:
                break
            y = tuple(y)
            if nm.dot(u, y) <= nm.dot(u, x):
                raise OracleContractError(f"oracle returned {y}, not better than {x} for {u}")
            x = y
            augmentations += 1
    if stats is not None:
        stats["oracle_calls"] = stats.get("oracle_calls", 0) + calls
        stats["augmentations"] = stats.get("augmentations", 0) + augmentations
        stats["scales"] = k
    return x


def lco_membership(member, x, w, E, stats: dict | None = None):
    """Linear optimization over S in {0,1}^n from membership and edge-directions."""
    return optimize_bitscaling(lambda y, u: augment_membership(member, y, u, E), x, w, 1, stats)


def cco_membership(member, x, obj: ConvexObjective, E, stats: dict | None = None):
    """Convex maximization over S in {0,1}^n from membership and edge-directions."""
    res = maximize_convex_composite(lambda w: lco_membership(member, x, w, E, stats), obj, E)
    return res


def augment_membership_general(member, x, w, E, rho: int):
    """Better vertex of conv(S) adjacent to the vertex x, or None if x is optimal."""
    x = tuple(x)
    dirs = set()
    for e in E:
        if any(e):
            p = nm.primitive(e)
            dirs.add(p)
            dirs.add(nm.neg(p))
    F = []
    for e in sorted(dirs):
        if any(member(nm.add(x, nm.scale(r, e))) for r in range(1, 2 * rho + 1)):
            F.append(e)
    G = [f for f in F if nm.dot(w, f) > 0]
    for g in G:
        if is_extreme_ray(g, F):
            for r in range(2 * rho, 0, -1):
                y = nm.add(x, nm.scale(r, g))
                if member(y):
                    return y
    return None


def optimize_general(member, x, w, E, rho: int, stats: dict | None = None):
    """Linear optimization over a finite S in Z^n from a vertex, membership and edge-directions."""
    return optimize_bitscaling(lambda y, u: augment_membership_general(member, y, u, E, rho), x, w, rho, stats)


def convex_general(member, x, obj: ConvexObjective, E, rho: int, stats: dict | None = None):
    return maximize_convex_composite(lambda w: optimize_general(member, x, w, E, rho, stats), obj, E)


def matroid_edge_directions(n: int) -> list:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i], e[j] = 1, -1
            out.append(tuple(e))
    return out


def cube_member(n: int):
    return lambda x: len(x) == n and all(a in (0, 1) for a in x)


def solve_psd_qp(W):
    """Maximize |Wx|^2 over x in {0,1}^n."""
    W = nm.matrix(W)
    n = nm.ncols(W)
    E = [nm.unit(n, i) for i in range(n)]
    return cco_membership(cube_member(n), nm.zero(n), squared_l2(W), E)


class _DisjointSets:
    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def spanning_tree_member(edges):
    nodes = sorted({v for e in edges for v in e})

    def member(x) -> bool:
        if len(x) != len(edges) or any(a not in (0, 1) for a in x):
            return False
        if sum(x) != len(nodes) - 1:
            return False
        ds = _DisjointSets(nodes)
        return all(ds.union(*edges[j]) for j, a in enumerate(x) if a)

    return member


def max_norm_spanning_tree(edges, vectors, p):
    """Spanning tree maximizing the l_p norm of the sum of its edge vectors (p an int or 'inf')."""
    edges = [tuple(e) for e in edges]
    nodes = sorted({v for e in edges for v in e})
    ds = _DisjointSets(nodes)
    start = [0] * len(edges)
    for j, (a, b) in enumerate(edges):
        if ds.union(a, b):
            start[j] = 1
    if sum(start) != len(nodes) - 1:
        raise ValueError("graph is not connected")
    d = len(vectors[0])
    W = [tuple(vectors[j][i] for j in range(len(edges))) for i in range(d)]
    obj = linf(W) if p in ("inf", float("inf")) else lp_power(W, int(p))
    res = cco_membership(spanning_tree_member(edges), tuple(start), obj, matroid_edge_directions(len(edges)))
    assert isinstance(res, Optimal)
    return res
