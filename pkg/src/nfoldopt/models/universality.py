"""Representing {y >= 0 : Ay = b} as a face of an r x c x 3 line-sum polytope.

Three stages, each an integer-point-preserving coordinate embedding:

1. binary expansion: every variable y_j becomes x_{j,0..k} with
   2 x_{j,s} = x_{j,s+1}, so all coefficients land in {-1, 0, 1, 2};
2. plane-sums: each variable of stage 1 occupies a diagonal box of an
   r x r x h array, its copies on the diagonal and complements U - y on
   the cyclic off-diagonal, with copies pulled down to the planes of the
   equations that use them;
3. line-sums: the plane-sum array with entry bounds is rewritten as an
   (r*r) x (h+2r) x 3 line-sum instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import numeric as nm
from ..ip import cramer_bound
from ..lp import box_bound
from ..outcome import Infeasible, Unbounded
from .tables import line_sum_tables

INF = math.inf


@dataclass(frozen=True)
class UniversalityCertificate:
    rows: int
    cols: int
    u: tuple  # rows x cols
    v: tuple  # rows x 3
    z: tuple  # cols x 3
    sigma: tuple  # original coordinate -> (i, j, k)
    bound: int  # the coordinate bound U used by the construction

    def project(self, table) -> tuple:
        """Read the original coordinates off a table (sparse dict or dense nested list)."""
        if isinstance(table, dict):
            return tuple(table.get(cell, 0) for cell in self.sigma)
        return tuple(table[i][j][k] for i, j, k in self.sigma)

    def tables(self):
        return line_sum_tables(self.u, self.v, self.z)


def _bits(a: int) -> list:
    return [(a >> s) & 1 for s in range(a.bit_length())]


def binary_expansion(A, b, n: int):
    """Stage 1: (Q, d, first) with Q over {-1,0,1,2} and first[j] the column carrying y_j."""
    cols = []
    first = []
    for j in range(n):
        k = max((abs(row[j]).bit_length() - 1 for row in A if row[j]), default=0)
        first.append(len(cols))
        cols += [(j, s) for s in range(k + 1)]
    where = {c: x for x, c in enumerate(cols)}
    Q, d = [], []
    for row, rhs in zip(A, b):
        q = [0] * len(cols)
        for j, a in enumerate(row):
            for s, bit in enumerate(_bits(abs(a))):
                q[where[(j, s)]] = bit * nm.sign(a)
        Q.append(tuple(q))
        d.append(rhs)
    for j in range(n):
        s = 0
        while (j, s + 1) in where:
            q = [0] * len(cols)
            q[where[(j, s)]] = 2
            q[where[(j, s + 1)]] = -1
            Q.append(tuple(q))
            d.append(0)
            s += 1
    return tuple(Q), tuple(d), first


def _coordinate_bound(Q, d) -> int:
    n = nm.ncols(Q, 0)
    out = box_bound(Q, d, [0] * n, [INF] * n, n)
    if isinstance(out, Infeasible):
        return 0
    if isinstance(out, Unbounded):
        raise ValueError("polytope is unbounded")
    return min(out, cramer_bound(Q, d, [0] * n, [INF] * n))


def plane_sum_embedding(Q, d, U: int):
    """Stage 2: plane-sums of an r x r x h array with enabled entries.

    Returns (r, h, plane_sums (a, b, c), enabled set, cell of each column).
    """
    m = len(Q)
    n = nm.ncols(Q, 0)
    h = m + 1
    enabled = set()
    cell = []
    off = 0
    for jj in range(n):
        col = [Q[k][jj] for k in range(m)]
        pos = sum(a for a in col if a > 0)
        neg = sum(-a for a in col if a < 0)
        rj = max(pos, neg) or 2  # an all-zero column only occurs when the polytope is empty
        kplus, kminus = [m] * rj, [m] * rj
        fp = fm = 0
        for k, a in enumerate(col):
            for _ in range(abs(a)):
                if a > 0:
                    kplus[fp] = k
                    fp += 1
                else:
                    kminus[fm] = k
                    fm += 1
        if rj == 1:
            enabled.add((off, off, kplus[0]))
            enabled.add((off, off, kminus[0]))
        else:
            for s in range(rj):
                enabled.add((off + s, off + s, kplus[s]))
                enabled.add((off + s, off + (s + 1) % rj, kminus[s]))
        cell.append((off, off, kplus[0]))
        off += rj
    r = off
    planes = [d[k] + U * sum(-a for a in Q[k] if a < 0) for k in range(m)]
    planes.append(r * U - sum(planes))
    return r, h, ([U] * r, [U] * r, planes), enabled, cell


def line_sum_embedding(r: int, h: int, sums, enabled, U: int):
    """Stage 3: plane-sum array with entry bounds e -> (u, v, z, cell map)."""
    a, b, c = sums
    Up = min(max(a, default=0), max(b, default=0))
    rows, cols = r * r, h + 2 * r
    e_row = [[0] * r for _ in range(r)]
    e_plane = [0] * h
    for i, j, k in enabled:
        e_row[i][j] += U
        e_plane[k] += U
    u = [[0] * cols for _ in range(rows)]
    v = []
    for i in range(r):
        for j in range(r):
            row = u[i * r + j]
            for t in range(h):
                if (i, j, t) in enabled:
                    row[t] = U
            row[h + i] = Up
            row[h + r + j] = Up
            v.append((Up, e_row[i][j], Up))
    z = [(c[t], e_plane[t] - c[t], 0) for t in range(h)]
    z += [(r * Up - a[i], 0, a[i]) for i in range(r)]
    z += [(0, b[j], r * Up - b[j]) for j in range(r)]
    u = tuple(tuple(row) for row in u)

    def place(i, j, t):
        return (i * r + j, t, 0)

    return u, tuple(v), tuple(z), place


def universality_reduce(A, b) -> UniversalityCertificate:
    """Line-sum instance whose tables biject, via sigma, with the integer points of {y >= 0 : Ay = b}."""
    A = nm.matrix(A)
    b = nm.vec(b)
    if len(A) != len(b):
        raise ValueError("right-hand side length mismatch")
    n = nm.ncols(A, 0)
    if n == 0:
        raise ValueError("need at least one variable")
    out = box_bound(A, b, [0] * n, [INF] * n, n)
    if isinstance(out, Unbounded):
        raise ValueError("polytope is unbounded")
    Q, d, first = binary_expansion(A, b, n)
    U = _coordinate_bound(Q, d)
    r, h, sums, enabled, cell = plane_sum_embedding(Q, d, U)
    u, v, z, place = line_sum_embedding(r, h, sums, enabled, U)
    sigma = tuple(place(*cell[first[j]]) for j in range(n))
    return UniversalityCertificate(len(u), len(z), u, v, z, sigma, U)


@dataclass(frozen=True)
class GadgetInstance:
    target: int
    values: tuple
    certificate: UniversalityCertificate
    cell: tuple  # the designated entry, carrying y_0


def subset_sum_polytope(a0: int, a) -> tuple:
    """a0 y0 - sum a_i y_i = 0 and y_i + z_i = 1 over (y_0..y_m, z_0..z_m)."""
    m = len(a)
    n = 2 * (m + 1)
    rows = [tuple([a0] + [-x for x in a] + [0] * (m + 1))]
    for i in range(m + 1):
        row = [0] * n
        row[i] = row[m + 1 + i] = 1
        rows.append(tuple(row))
    return tuple(rows), (0,) + (1,) * (m + 1)


def subset_sum_gadget(a0: int, a) -> GadgetInstance:
    """Line-sum instance whose designated entry is unique iff no subset of a sums to a0."""
    a = tuple(a)
    if a0 <= 0 or any(x <= 0 for x in a):
        raise ValueError("subset-sum values must be positive")
    A, b = subset_sum_polytope(a0, a)
    cert = universality_reduce(A, b)
    return GadgetInstance(a0, a, cert, cert.sigma[0])


def table_entry_unique(u, v, z, cell) -> bool | None:
    """True if every table agrees at ``cell``, False if two differ, None if there is no table."""
    first = next(line_sum_tables(u, v, z), None)
    if first is None:
        return None
    a = first.get(cell, 0)
    if a > 0 and next(line_sum_tables(u, v, z, {cell: (0, a - 1)}), None) is not None:
        return False
    return next(line_sum_tables(u, v, z, {cell: (a + 1, 1 << 62)}), None) is None


def gadget_entry_unique(g: GadgetInstance) -> bool:
    c = g.certificate
    verdict = table_entry_unique(c.u, c.v, c.z, g.cell)
    assert verdict is not None, "gadget instance always has the y = 0 table"
    return verdict
