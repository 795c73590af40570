"""Exact integer vector arithmetic and the conformal order.

Vectors are plain tuples of Python ints, so arithmetic never overflows.
Infinite bounds are represented by ``math.inf`` and ``-math.inf``.
"""

from __future__ import annotations

import math
from functools import reduce
from fractions import Fraction
from typing import Iterable, Sequence

INF = math.inf

IntVec = tuple
Matrix = tuple


def vec(values: Iterable[int]) -> tuple:
    out = tuple(values)
    for x in out:
        if not isinstance(x, int) or isinstance(x, bool):
            raise TypeError(f"expected integer entries, got {x!r}")
    return out


def matrix(rows: Iterable[Iterable[int]], ncols: int | None = None) -> tuple:
    out = tuple(vec(r) for r in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    if ncols is not None and widths and widths != {ncols}:
        raise ValueError(f"expected {ncols} columns, got {widths.pop()}")
    return out


def _check_len(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


def dot(u: Sequence, v: Sequence):
    _check_len(u, v)
    return sum(a * b for a, b in zip(u, v) if a and b)


def add(u: Sequence[int], v: Sequence[int]) -> tuple:
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> tuple:
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: int, v: Sequence[int]) -> tuple:
    return tuple(c * a for a in v)


def neg(v: Sequence[int]) -> tuple:
    return tuple(-a for a in v)


def zero(n: int) -> tuple:
    return (0,) * n


def unit(n: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(n))


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def norm_inf(v: Sequence[int]) -> int:
    return max((abs(a) for a in v), default=0)


def norm1(v: Sequence[int]) -> int:
    return sum(abs(a) for a in v)


def conformal_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff u lies in the same orthant as v and is no larger in each coordinate."""
    _check_len(u, v)
    return all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(u, v))


def pos_neg_parts(g: Sequence[int]) -> tuple[tuple, tuple]:
    return tuple(a if a > 0 else 0 for a in g), tuple(-a if a < 0 else 0 for a in g)


def primitive(v: Sequence[int]) -> tuple:
    g = reduce(math.gcd, v, 0)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(a // g for a in v)


def radius(points: Iterable[Sequence[int]]) -> int:
    pts = list(points)
    if not pts:
        raise ValueError("radius of an empty set")
    return max(norm_inf(p) for p in pts)


def canonical(vectors: Iterable[Sequence[int]]) -> list:
    """Deduplicate and sort lexicographically (negative entries first)."""
    return sorted({tuple(v) for v in vectors})


def sign(a) -> int:
    return (a > 0) - (a < 0)


def ceil_log2(x) -> int:
    """Smallest integer k with 2**k >= x, for x > 0 (int or Fraction)."""
    if x <= 0:
        raise ValueError("ceil_log2 needs a positive argument")
    x = Fraction(x)
    k = 0
    if x >= 1:
        while Fraction(2) ** k < x:
            k += 1
        return k
    while Fraction(2) ** (k - 1) >= x:
        k -= 1
    return k


# --- matrices -------------------------------------------------------------

def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> tuple:
    return tuple(dot(row, x) for row in A)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> tuple:
    cols = list(zip(*B)) if B else []
    return tuple(tuple(dot(row, c) for c in cols) for row in A)


def identity(n: int) -> tuple:
    return tuple(unit(n, i) for i in range(n))


def ncols(A: Sequence[Sequence[int]], default: int = 0) -> int:
    return len(A[0]) if A else default


def in_box(x: Sequence[int], l: Sequence, u: Sequence) -> bool:
    return all(lo <= a <= hi for a, lo, hi in zip(x, l, u))


def check_bounds(l: Sequence, u: Sequence, n: int) -> tuple[tuple, tuple]:
    """Validate extended-integer bound vectors of length n."""
    if len(l) != n or len(u) != n:
        raise ValueError("bound vectors have the wrong length")
    for a in l:
        if a != -INF and not isinstance(a, int):
            raise TypeError(f"lower bound {a!r} must be an integer or -inf")
    for a in u:
        if a != INF and not isinstance(a, int):
            raise TypeError(f"upper bound {a!r} must be an integer or +inf")
    return tuple(l), tuple(u)


def rank(A: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free elimination."""
    rows = [list(r) for r in A]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [p * a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def kernel_basis(A: Sequence[Sequence[int]], n: int | None = None) -> list:
    """Lattice basis of {x in Z^n : Ax = 0}, via unimodular column operations."""
    if n is None:
        n = ncols(A)
    cols = [list(c) for c in zip(*A)] if A else [[] for _ in range(n)]
    m = len(A)
    U = [list(unit(n, j)) for j in range(n)]  # U[j] is column j of the transform
    k = 0
    for i in range(m):
        while True:
            nz = [j for j in range(k, n) if cols[j][i]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j == p:
                    continue
                q = cols[j][i] // cols[p][i]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[p])]
                U[j] = [a - q * b for a, b in zip(U[j], U[p])]
        nz = [j for j in range(k, n) if cols[j][i]]
        if nz:
            j = nz[0]
            cols[k], cols[j] = cols[j], cols[k]
            U[k], U[j] = U[j], U[k]
            k += 1
    return hermite_rows([tuple(U[j]) for j in range(k, n)])


def hermite_rows(B: list) -> list:
    """Row-style Hermite normal form of a full-row-rank integer basis."""
    rows = [list(r) for r in B]
    if not rows:
        return []
    n = len(rows[0])
    r = 0
    for c in range(n):
        if r == len(rows):
            break
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda i: abs(rows[i][c]))
            for i in nz:
                if i != p:
                    q = rows[i][c] // rows[p][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[p])]
        nz = [i for i in range(r, len(rows)) if rows[i][c]]
        if not nz:
            continue
        i = nz[0]
        rows[r], rows[i] = rows[i], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [tuple(x) for x in rows]


def pivot_columns(H: list) -> list:
    """Leading column of each row of an echelon matrix."""
    return [next(j for j, a in enumerate(row) if a) for row in H]
