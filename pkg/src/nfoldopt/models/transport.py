"""Multiway transportation problems as n-fold programs.

A table of shape (m_1, ..., m_k, n) is cut into its n layers along the last
axis; each layer is one brick of m_1 * ... * m_k entries in row-major order.
Margins are keyed by full index tuples with ``None`` at summed-out axes, so
the line-sum u_{i,j} of a 3-way table is ``(i, j, None)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from .. import numeric as nm
from ..convex import ConvexObjective
from ..graver import Bimatrix
from ..nfold import NFoldProblem, nfold_solve_convex, nfold_solve_linear
from ..outcome import Infeasible, Optimal

INF = math.inf


def _check_shape(shape) -> tuple:
    shape = tuple(int(m) for m in shape)
    if len(shape) < 2 or any(m < 1 for m in shape):
        raise ValueError("table shape needs at least two positive dimensions")
    return shape


def _family(F, axes: int) -> list:
    out = sorted({tuple(sorted(set(S))) for S in F})
    for S in out:
        if any(not 0 <= a < axes for a in S):
            raise ValueError(f"margin support {S} is outside the table axes")
    return out


def _layer_cells(shape) -> list:
    return list(itertools.product(*(range(m) for m in shape[:-1])))


def table_to_bricks(shape, values) -> tuple:
    """Entries in table order (row-major over all axes, layer last) to brick order."""
    values = list(values)
    n = shape[-1]
    cells = _layer_cells(shape)
    if len(values) != len(cells) * n:
        raise ValueError("entry count does not match the table shape")
    return tuple(values[c * n + l] for l in range(n) for c in range(len(cells)))


def bricks_to_table(shape, x) -> list:
    """Brick-ordered vector to a nested list indexed [i_1]...[i_k][layer]."""
    n = shape[-1]
    cells = _layer_cells(shape)
    t = len(cells)

    def build(prefix, depth):
        if depth == len(shape) - 1:
            c = cells.index(prefix)
            return [x[l * t + c] for l in range(n)]
        return [build(prefix + (i,), depth + 1) for i in range(shape[depth])]

    return build((), 0)


def flatten_table(table) -> list:
    if isinstance(table, (list, tuple)):
        return [a for row in table for a in flatten_table(row)]
    return [table]


def table_margins(table, F) -> dict:
    """All margins of a nested-list table supported on the sets in F."""
    shape = []
    t = table
    while isinstance(t, (list, tuple)):
        shape.append(len(t))
        t = t[0]
    flat = flatten_table(table)
    out = {}
    for S in _family(F, len(shape)):
        for idx in itertools.product(*(range(shape[a]) for a in S)):
            key = [None] * len(shape)
            for a, i in zip(S, idx):
                key[a] = i
            out[tuple(key)] = 0
    for pos, val in zip(itertools.product(*(range(m) for m in shape)), flat):
        for S in _family(F, len(shape)):
            key = tuple(pos[a] if a in S else None for a in range(len(shape)))
            out[key] += val
    return out


def _weights(shape, w) -> tuple:
    cells = math.prod(shape)
    if w is None:
        return nm.zero(cells)
    if isinstance(w, (list, tuple)) and w and isinstance(w[0], (list, tuple)):
        w = flatten_table(w)
    return table_to_bricks(shape, nm.vec(w))


def encode_kway_hierarchical(shape, F, margins: dict, w=None) -> NFoldProblem:
    """n-fold program for tables of the given shape with the F-supported margins.

    Margins summing over layers feed the shared rows, the others are
    repeated in every layer.  ``w`` is a linear objective in table order
    (flat or nested), or a ConvexObjective whose weights are in table order.
    """
    shape = _check_shape(shape)
    axes = len(shape)
    layer = axes - 1
    n = shape[layer]
    cells = _layer_cells(shape)
    fam = _family(F, axes)
    top, top_keys, low, low_keys = [], [], [], []
    for S in fam:
        inner = [a for a in S if a != layer]
        for idx in itertools.product(*(range(shape[a]) for a in inner)):
            row = tuple(int(all(c[a] == i for a, i in zip(inner, idx))) for c in cells)
            key = [None] * axes
            for a, i in zip(inner, idx):
                key[a] = i
            if layer in S:
                low.append(row)
                low_keys.append(key)
            else:
                top.append(row)
                top_keys.append(tuple(key))

    def value(key):
        if key not in margins:
            raise ValueError(f"missing margin {key}")
        return margins[key]

    b = [value(k) for k in top_keys]
    for l in range(n):
        for k in low_keys:
            kk = list(k)
            kk[layer] = l
            b.append(value(tuple(kk)))
    template = Bimatrix.of(top, low, len(cells))
    N = n * len(cells)
    if isinstance(w, ConvexObjective):
        objective = replace(w, weights=tuple(table_to_bricks(shape, row) for row in w.weights))
    else:
        objective = _weights(shape, w)
    return NFoldProblem.of(template, n, b, [0] * N, [INF] * N, objective)


LINE_SUMS_3WAY = ((0, 1), (0, 2), (1, 2))


def line_sum_margins(u, v, z) -> dict:
    p, q, n = len(u), len(z), len(v[0]) if v else 0
    out = {}
    for i in range(p):
        for j in range(q):
            out[(i, j, None)] = u[i][j]
    for i in range(p):
        for l in range(n):
            out[(i, None, l)] = v[i][l]
    for j in range(q):
        for l in range(n):
            out[(None, j, l)] = z[j][l]
    return out


def encode_3way_linesum(p: int, q: int, n: int, u, v, z, w=None) -> NFoldProblem:
    """p x q x n tables with line-sums u (p x q), v (p x n) and z (q x n)."""
    u, v, z = nm.matrix(u), nm.matrix(v), nm.matrix(z)
    if len(u) != p or any(len(r) != q for r in u):
        raise ValueError("u must be p x q")
    if len(v) != p or any(len(r) != n for r in v):
        raise ValueError("v must be p x n")
    if len(z) != q or any(len(r) != n for r in z):
        raise ValueError("z must be q x n")
    return encode_kway_hierarchical((p, q, n), LINE_SUMS_3WAY, line_sum_margins(u, v, z), w)


def _verify(shape, F, margins, table) -> None:
    got = table_margins(table, F)
    bad = [k for k, val in got.items() if margins.get(k) != val]
    if bad:
        raise AssertionError(f"solution violates margins {bad[:3]}")


def solve_transport(shape, F, margins: dict, objective=None, debug: bool = False):
    """Solve and reshape; an Optimal carries the table under stats['table']."""
    shape = _check_shape(shape)
    p = encode_kway_hierarchical(shape, F, margins, objective)
    if isinstance(p.objective, ConvexObjective):
        out = nfold_solve_convex(p, debug)
    else:
        out = nfold_solve_linear(p, debug)
    if isinstance(out, Optimal):
        table = bricks_to_table(shape, out.point)
        _verify(shape, F, margins, table)
        out.stats["table"] = table
    return out


@dataclass(frozen=True)
class Unique:
    value: int


@dataclass(frozen=True)
class Range:
    lo: int
    hi: int


def entry_uniqueness(shape, F, margins: dict, entry):
    """Unique(value) when every table with these margins agrees at ``entry``, else Range(lo, hi)."""
    shape = _check_shape(shape)
    entry = tuple(entry)
    if len(entry) != len(shape) or any(not 0 <= e < m for e, m in zip(entry, shape)):
        raise ValueError("entry index outside the table")
    flat_index = 0
    for e, m in zip(entry, shape):
        flat_index = flat_index * m + e
    w = [0] * math.prod(shape)
    w[flat_index] = 1
    hi = solve_transport(shape, F, margins, w)
    if isinstance(hi, Infeasible):
        return Infeasible(stats=hi.stats)
    lo = solve_transport(shape, F, margins, nm.neg(w))
    top, bottom = hi.value, -lo.value
    return Unique(top) if top == bottom else Range(bottom, top)
