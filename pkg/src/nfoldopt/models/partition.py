"""Vector partitioning: items are bricks, each assigned to exactly one of p players.

Brick i holds the 0/1 indicators x_{1,i}..x_{p,i}.  Player h's criterion j
is the functional with v_{i,j} at position h of every brick i, so there are
d = p k functionals ordered player-major.
"""

from __future__ import annotations

import math

from .. import numeric as nm
from ..convex import squared_l2
from ..graver import Bimatrix
from ..nfold import NFoldProblem, nfold_solve_convex
from ..outcome import Optimal

INF = math.inf


def partition_weights(p: int, items) -> tuple:
    items = nm.matrix(items)
    k = len(items[0]) if items else 0
    rows = []
    for h in range(p):
        for j in range(k):
            row = []
            for v in items:
                row += [v[j] if g == h else 0 for g in range(p)]
            rows.append(tuple(row))
    return tuple(rows)


def encode_partition(p: int, items, shape=None, combine=squared_l2) -> NFoldProblem:
    """Partition the item vectors among p players, optionally with shape[h] items for player h."""
    items = nm.matrix(items)
    n = len(items)
    if p < 1 or n < 1:
        raise ValueError("need at least one player and one item")
    if len({len(v) for v in items}) != 1:
        raise ValueError("items must have a common dimension")
    if shape is None:
        A1, top = (), ()
    else:
        shape = nm.vec(shape)
        if len(shape) != p or sum(shape) != n or min(shape) < 0:
            raise ValueError("shape must give each player a nonnegative count summing to the item count")
        A1, top = nm.identity(p), shape
    A2 = ((1,) * p,)
    N = n * p
    obj = combine(partition_weights(p, items))
    return NFoldProblem.of(Bimatrix.of(A1, A2, p), n, top + (1,) * n, [0] * N, [INF] * N, obj)


def solve_partition(p: int, items, shape=None, combine=squared_l2, debug: bool = False):
    """Optimal partition; stats['parts'] lists each player's item indices."""
    prob = encode_partition(p, items, shape, combine)
    out = nfold_solve_convex(prob, debug)
    if isinstance(out, Optimal):
        x = out.point
        parts = [[i for i in range(len(items)) if x[i * p + h]] for h in range(p)]
        assert sorted(i for part in parts for i in part) == list(range(len(items)))
        out.stats["parts"] = parts
    return out
