"""Exact rational linear programming.

A dense two-phase tableau simplex over ``fractions.Fraction`` with Bland's
rule, so it terminates without tolerances.  Bounds may be infinite.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import numeric as nm
from .outcome import Infeasible, Optimal, Unbounded

INF = math.inf


def _simplex(M: list, h: list, c: list):
    """Maximize c.y subject to M y = h, y >= 0.

    Returns ("optimal", y), ("infeasible", None) or ("unbounded", None).
    """
    m = len(M)
    n = len(c)
    rows = []
    for i in range(m):
        r = [Fraction(a) for a in M[i]]
        rhs = Fraction(h[i])
        if rhs < 0:
            r = [-a for a in r]
            rhs = -rhs
        rows.append(r + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(pr: int, pc: int) -> None:
        prow = rows[pr]
        p = prow[pc]
        if p != 1:
            prow[:] = [a / p for a in prow]
        for i, r in enumerate(rows):
            if i != pr and r[pc]:
                f = r[pc]
                r[:] = [a - f * b for a, b in zip(r, prow)]
        basis[pr] = pc

    def run(cost: list, allowed: int) -> bool:
        """Bland-rule iterations on columns < allowed. False means unbounded."""
        while True:
            # reduced cost of column j is cost_j - sum cost_basis * column
            cb = [cost[b] for b in basis]
            enter = None
            for j in range(allowed):
                if j in basis:
                    continue
                red = cost[j] - sum(cb[i] * rows[i][j] for i in range(m) if cb[i] and rows[i][j])
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return True
            best = None
            for i in range(m):
                a = rows[i][enter]
                if a > 0:
                    ratio = rows[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return False
            pivot(best[1], enter)

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    run(phase1, width)
    if any(rows[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return "infeasible", None
    # drive remaining artificials out of the basis or drop redundant rows
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            j = next((j for j in range(n) if rows[i][j] != 0), None)
            if j is None:
                del rows[i]
                del basis[i]
                m -= 1
                continue
            pivot(i, j)
        i += 1
    cost = [Fraction(a) for a in c] + [Fraction(0)] * len(phase1[n:])
    if not run(cost, n):
        return "unbounded", None
    y = [Fraction(0)] * n
    for i, b in enumerate(basis):
        y[b] = rows[i][-1]
    return "optimal", y


def lp_solve(A: Sequence[Sequence[int]], b: Sequence[int], l: Sequence, u: Sequence, w: Sequence):
    """Maximize w.x over {x : Ax = b, l <= x <= u} exactly.

    Returns ``Optimal`` with a basic optimal point (Fractions) and its value,
    ``Infeasible`` or ``Unbounded``.
    """
    n = len(w)
    if A and any(len(row) != n for row in A):
        raise ValueError("constraint matrix width does not match objective")
    if len(A) != len(b):
        raise ValueError("right-hand side length mismatch")
    l, u = nm.check_bounds(l, u, n)
    if any(lo > hi for lo, hi in zip(l, u)):
        return Infeasible()

    # x_j = shift_j + sum coef * y_k over the new nonnegative variables
    cols: list = []  # per new variable: (original index, coefficient)
    shift = [0] * n
    extra_rows: list = []  # (y index, bound) for y <= bound
    for j in range(n):
        lo, hi = l[j], u[j]
        if lo != -INF:
            shift[j] = lo
            cols.append((j, 1))
            if hi != INF:
                extra_rows.append((len(cols) - 1, hi - lo))
        elif hi != INF:
            shift[j] = hi
            cols.append((j, -1))
        else:
            cols.append((j, 1))
            cols.append((j, -1))
    ny = len(cols)
    nslack = len(extra_rows)
    M = []
    h = []
    for row, rhs in zip(A, b):
        M.append([row[j] * s for j, s in cols] + [0] * nslack)
        h.append(rhs - nm.dot(row, shift))
    for k, (yi, bound) in enumerate(extra_rows):
        r = [0] * (ny + nslack)
        r[yi] = 1
        r[ny + k] = 1
        M.append(r)
        h.append(bound)
    c = [w[j] * s for j, s in cols] + [0] * nslack
    status, y = _simplex(M, h, c)
    if status == "infeasible":
        return Infeasible()
    if status == "unbounded":
        return Unbounded()
    x = [Fraction(s) for s in shift]
    for k, (j, s) in enumerate(cols):
        if y[k]:
            x[j] += s * y[k]
    x = tuple(x)
    return Optimal(x, sum((Fraction(a) * v for a, v in zip(w, x)), Fraction(0)))


def box_bound(A, b, l, u, n: int | None = None):
    """Smallest integer rho with the polyhedron inside [-rho, rho]^n.

    Returns an int, ``Unbounded()`` or ``Infeasible()``.
    """
    if n is None:
        n = len(l)
    rho = 0
    for j in range(n):
        for sgn in (1, -1):
            w = [0] * n
            w[j] = sgn
            out = lp_solve(A, b, l, u, w)
            if not isinstance(out, Optimal):
                return out
            rho = max(rho, math.ceil(out.value))
    return rho


def is_extreme_ray(f: Sequence[int], F) -> bool:
    """True iff f is not a nonnegative combination of the other vectors in F."""
    f = tuple(f)
    F = [tuple(e) for e in F]
    if f not in F:
        raise ValueError("f must belong to F")
    others = [e for e in dict.fromkeys(F) if e != f]
    if not others:
        return True
    d = len(f)
    A = [[e[i] for e in others] for i in range(d)]
    k = len(others)
    out = lp_solve(A, list(f), [0] * k, [INF] * k, [0] * k)
    return not isinstance(out, Optimal)
