"""Bin packing and cutting stock as n-fold programs.

Bins are bricks.  Brick k holds x_{1,k}..x_{t,k}, the number of items of
each type in bin k, followed by a slack type of weight 1 that fills the
bin exactly.
"""

from __future__ import annotations

import math

from .. import numeric as nm
from ..convex import ConvexObjective
from ..graver import Bimatrix
from ..nfold import NFoldProblem, nfold_solve_convex, nfold_solve_linear
from ..outcome import Infeasible, Optimal

INF = math.inf


def _brick_weights(util, t: int, n: int, slack: int) -> tuple:
    util = nm.matrix(util)
    if len(util) != t or any(len(row) != n for row in util):
        raise ValueError("utilities must be a types x bins matrix")
    out = []
    for k in range(n):
        out += [util[j][k] for j in range(t)] + [slack]
    return tuple(out)


def encode_packing(weights, counts, capacities, utilities, combine=None, slack_utility: int = 0):
    """n-fold program for packing counts[j] items of weight weights[j] into bins that must be filled exactly.

    ``utilities`` is a types x bins matrix, or with ``combine`` a list of
    such matrices turned into a ConvexObjective by ``combine(rows)``.
    Returns Infeasible when the items outweigh the total capacity.
    """
    v = nm.vec(weights)
    counts = nm.vec(counts)
    caps = nm.vec(capacities)
    t, n = len(v), len(caps)
    if any(a <= 0 for a in v):
        raise ValueError("item weights must be positive")
    if len(counts) != t:
        raise ValueError("one count per item type")
    if n == 0:
        raise ValueError("need at least one bin")
    residual = sum(caps) - nm.dot(v, counts)
    if residual < 0:
        return Infeasible()
    tp = t + 1
    A1 = nm.identity(tp)
    A2 = (v + (1,),)
    b = counts + (residual,) + caps
    if combine is None:
        objective = _brick_weights(utilities, t, n, slack_utility)
    else:
        objective = combine([_brick_weights(u, t, n, slack_utility) for u in utilities])
    N = n * tp
    return NFoldProblem.of(Bimatrix.of(A1, A2, tp), n, b, [0] * N, [INF] * N, objective)


def packing_matrix(x, t: int, n: int) -> list:
    """types x bins matrix of item counts, slack dropped."""
    return [[x[k * (t + 1) + j] for k in range(n)] for j in range(t)]


def solve_packing(weights, counts, capacities, utilities, combine=None, slack_utility: int = 0, debug: bool = False):
    p = encode_packing(weights, counts, capacities, utilities, combine, slack_utility)
    if isinstance(p, Infeasible):
        return p
    solve = nfold_solve_convex if isinstance(p.objective, ConvexObjective) else nfold_solve_linear
    out = solve(p, debug)
    if isinstance(out, Optimal):
        t, n = len(weights), len(capacities)
        X = packing_matrix(out.point, t, n)
        for j in range(t):
            assert sum(X[j]) == counts[j]
        for k in range(n):
            assert sum(weights[j] * X[j][k] for j in range(t)) <= capacities[k]
        out.stats["packing"] = X
    return out


def cutting_stock_rolls(widths, demands, stock: int) -> int:
    """Number of standard rolls that always suffices: sum of ceil(n_j / floor(u / v_j))."""
    total = 0
    for v, d in zip(widths, demands):
        per = stock // v
        if per == 0:
            raise ValueError(f"width {v} exceeds the stock width")
        total += -(-d // per)
    return total


def encode_cutting_stock(widths, demands, stock: int):
    """Each roll pays its width and each unit of waste pays 1."""
    n = cutting_stock_rolls(widths, demands, stock)
    util = [[-v] * n for v in widths]
    return encode_packing(widths, demands, [stock] * n, util, slack_utility=-1)


def solve_cutting_stock(widths, demands, stock: int, debug: bool = False):
    n = cutting_stock_rolls(widths, demands, stock)
    util = [[-v] * n for v in widths]
    out = solve_packing(widths, demands, [stock] * n, util, slack_utility=-1, debug=debug)
    if isinstance(out, Optimal):
        out.stats["rolls_used"] = sum(1 for k in range(n) if any(row[k] for row in out.stats["packing"]))
    return out
