"""Graver bases, conformal decompositions, circuits and n-fold structure.

A Graver basis is returned as a canonically sorted list of integer tuples
closed under negation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import numeric as nm

_SAFE = 1 << 40  # entries beyond this switch the screening arrays to Python ints


class _Pool:
    """Growing set of lattice vectors with vectorised conformal lookups on active coordinates.

    Sign patterns are packed into 64-bit words so a lookup first filters by
    support containment and only then compares magnitudes.
    """

    def __init__(self, active: list, vectors=()):
        self.active = list(active)
        self.words = max(1, -(-len(self.active) // 64))
        self.vecs: list = []
        self.seen: set = set()
        self._arr = np.zeros((16, len(self.active)), dtype=np.int64)
        self._pos = np.zeros((16, self.words), dtype=np.uint64)
        self._neg = np.zeros((16, self.words), dtype=np.uint64)
        self._obj = False
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.vecs)

    def proj(self, v):
        return [v[c] for c in self.active]

    def masks(self, p):
        pos = [0] * self.words
        neg = [0] * self.words
        for i, a in enumerate(p):
            if a > 0:
                pos[i >> 6] |= 1 << (i & 63)
            elif a < 0:
                neg[i >> 6] |= 1 << (i & 63)
        return np.array(pos, dtype=np.uint64), np.array(neg, dtype=np.uint64)

    def add(self, v) -> bool:
        v = tuple(v)
        if v in self.seen:
            return False
        p = self.proj(v)
        if not self._obj and max(map(abs, p), default=0) > _SAFE:
            self._arr = self._arr.astype(object)
            self._obj = True
        k = len(self.vecs)
        if k == self._arr.shape[0]:
            self._arr = _grow(self._arr, k)
            self._pos = _grow(self._pos, k)
            self._neg = _grow(self._neg, k)
        self._arr[k] = p
        self._pos[k], self._neg[k] = self.masks(p)
        self.vecs.append(v)
        self.seen.add(v)
        return True

    @property
    def arr(self):
        return self._arr[: len(self.vecs)]

    def reducer(self, s) -> int:
        """Index of some pool vector conformal to s on the active coordinates, or -1."""
        p = self.proj(s)
        pos, neg = self.masks(p)
        k = len(self.vecs)
        fit = ((self._pos[:k] & ~pos) | (self._neg[:k] & ~neg)) == 0
        if self.words > 1:
            fit = fit.all(axis=1)
        else:
            fit = fit[:, 0]
        cand = np.flatnonzero(fit)
        if cand.size == 0:
            return -1
        absp = np.abs(np.array(p, dtype=self._arr.dtype))
        ok = (np.abs(self._arr[cand]) <= absp).all(axis=1)
        hits = np.flatnonzero(ok)
        return int(cand[hits[0]]) if hits.size else -1

    def normal_form(self, s):
        s = list(s)
        while True:
            if not any(s[c] for c in self.active):
                return None
            k = self.reducer(s)
            if k < 0:
                return tuple(s)
            g = self.vecs[k]
            # subtract the largest multiple that stays conformal
            q = min(s[c] // g[c] for c in self.active if g[c])
            s = [a - q * b for a, b in zip(s, g)]


def _grow(arr, k):
    out = np.zeros((2 * arr.shape[0],) + arr.shape[1:], dtype=arr.dtype)
    out[:k] = arr[:k]
    return out


def _minimal(vectors: list, active: list) -> list:
    """Keep vectors with no other nonzero vector conformally below them on the active coordinates."""
    if not vectors:
        return []
    arr = np.array([[v[c] for c in active] for v in vectors], dtype=object)
    if max(abs(x) for x in arr.flat) <= _SAFE:
        arr = arr.astype(np.int64)
    absa = np.abs(arr)
    keep = []
    for i, v in enumerate(vectors):
        p = arr[i]
        ok = ((arr * p) >= 0) & (absa <= np.abs(p))
        ok = ok.all(axis=1)
        ok[i] = False
        if not ok.any():
            keep.append(v)
    return keep


def _complete(pool: _Pool, new_coord: int | None, old_active: list) -> None:
    """Completion over the pool's active coordinates.

    With ``new_coord`` given, the pool already covers the Graver basis of the
    projection onto ``old_active`` and only sums of vectors that agree in sign
    on ``old_active`` and disagree on ``new_coord`` need normal forms.
    """
    old_idx = [pool.active.index(c) for c in old_active]
    i = 0
    while i < len(pool):
        f = pool.vecs[i]
        a = pool.arr[:i]
        fp = np.array(pool.proj(f), dtype=a.dtype)
        if new_coord is not None:
            jx = pool.active.index(new_coord)
            if fp[jx] <= 0:
                i += 1
                continue
            mask = a[:, jx] < 0
            if old_idx:
                mask &= ((a[:, old_idx] * fp[old_idx]) >= 0).all(axis=1)
        else:
            # any coordinate with opposite signs
            mask = ((a * fp) < 0).any(axis=1)
        for k in np.flatnonzero(mask):
            g = pool.vecs[int(k)]
            s = tuple(x + y for x, y in zip(f, g))
            r = pool.normal_form(s)
            if r is not None:
                pool.add(r)
                pool.add(nm.neg(r))
        i += 1


def graver_basis(A, n: int | None = None) -> list:
    """Graver basis of the integer kernel of A, canonically ordered."""
    A = nm.matrix(A)
    if n is None:
        n = nm.ncols(A)
    if A and nm.ncols(A) != n:
        raise ValueError("column count mismatch")
    basis = nm.kernel_basis(A, n)
    if not basis:
        return []
    tau = nm.pivot_columns(basis)
    rest = [j for j in range(n) if j not in tau]
    start = []
    for b in basis:
        start += [b, nm.neg(b)]
    pool = _Pool(tau, start)
    if any(basis[i][c] != 1 for i, c in enumerate(tau)):
        _complete(pool, None, [])
        vecs = _minimal(pool.vecs, tau)
    else:
        vecs = pool.vecs
    active = list(tau)
    for j in rest:
        old = list(active)
        active = active + [j]
        pool = _Pool(active, vecs)
        _complete(pool, j, old)
        vecs = _minimal(pool.vecs, active)
    return sorted(set(vecs))


def conformal_decompose(h, G) -> list:
    """Write h as a sum of basis elements each conformal to h (greedy peel)."""
    h = nm.vec(h)
    if not any(h):
        return []
    rest = list(h)
    parts = []
    while any(rest):
        g = next((g for g in G if nm.conformal_leq(g, rest)), None)
        if g is None:
            raise ValueError("vector has no conformal decomposition over the given set")
        parts.append(tuple(g))
        rest = [a - b for a, b in zip(rest, g)]
    return parts


def circuits(A, n: int | None = None) -> list:
    """Support-minimal primitive kernel vectors, both signs, canonically ordered."""
    A = nm.matrix(A)
    if n is None:
        n = nm.ncols(A)
    rk = nm.rank(A)
    out = set()
    for size in range(1, rk + 2):
        for T in itertools.combinations(range(n), size):
            sub = [[row[j] for j in T] for row in A]
            ker = nm.kernel_basis(sub, size)
            if len(ker) != 1 or not all(ker[0]):
                continue
            v = [0] * n
            for j, a in zip(T, nm.primitive(ker[0])):
                v[j] = a
            out.add(tuple(v))
            out.add(nm.neg(v))
    return sorted(out)


@dataclass(frozen=True)
class Bimatrix:
    """n-fold template: A1 (r x t) is repeated along the top, A2 (s x t) along the diagonal."""

    A1: tuple
    A2: tuple
    t: int

    @classmethod
    def of(cls, A1, A2, t: int | None = None) -> "Bimatrix":
        A1 = nm.matrix(A1)
        A2 = nm.matrix(A2)
        if t is None:
            t = nm.ncols(A1) or nm.ncols(A2)
        if (A1 and nm.ncols(A1) != t) or (A2 and nm.ncols(A2) != t):
            raise ValueError("A1 and A2 must have the same number of columns")
        if t < 1:
            raise ValueError("template needs at least one column")
        return cls(A1, A2, t)

    @property
    def r(self) -> int:
        return len(self.A1)

    @property
    def s(self) -> int:
        return len(self.A2)

    def stacked(self) -> tuple:
        return self.A1 + self.A2


def nfold_matrix(A: Bimatrix, n: int) -> tuple:
    if n < 1:
        raise ValueError("n must be positive")
    t = A.t
    rows = [tuple(row) * n for row in A.A1]
    for k in range(n):
        for row in A.A2:
            rows.append((0,) * (k * t) + tuple(row) + (0,) * ((n - k - 1) * t))
    return tuple(rows)


def vector_type(x, t: int) -> int:
    """Number of nonzero bricks of a vector split into blocks of length t."""
    return sum(1 for k in range(0, len(x), t) if any(x[k : k + t]))


@lru_cache(maxsize=None)
def _graver_cached(A: tuple, n: int) -> tuple:
    return tuple(graver_basis(A, n))


def graver_complexity(A: Bimatrix) -> int:
    """Upper bound on the largest type of a Graver element of any n-fold of A.

    Returns 1 when A2 has trivial kernel or G(A1 G2) has no nonnegative element.
    """
    G2 = _graver_cached(A.A2, A.t)
    if not G2:
        return 1
    M = tuple(tuple(nm.dot(row, g) for g in G2) for row in A.A1)
    GG = _graver_cached(M, len(G2))
    sums = [sum(v) for v in GG if min(v) >= 0]
    return max(sums, default=1)


def _embed(g, ks, n: int, t: int) -> tuple:
    out = [0] * (n * t)
    for i, k in enumerate(ks):
        out[k * t : (k + 1) * t] = g[i * t : (i + 1) * t]
    return tuple(out)


DIRECT_COLUMNS = 24


def nfold_graver(A: Bimatrix, n: int, method: str = "assemble") -> list:
    """Graver basis of the n-fold matrix.

    ``assemble`` embeds the Graver basis of the c-fold matrix, c the Graver
    complexity, into every choice of c bricks (direct computation when n < c).
    ``direct`` completes the n-fold matrix itself.  ``auto`` goes direct for
    matrices of at most DIRECT_COLUMNS columns, where that is cheaper than
    computing c, and assembles otherwise.
    """
    if method not in ("auto", "assemble", "direct"):
        raise ValueError(f"unknown method {method!r}")
    if method == "direct" or (method == "auto" and n * A.t <= DIRECT_COLUMNS):
        return list(_graver_cached(nfold_matrix(A, n), n * A.t))
    c = graver_complexity(A)
    if n < c:
        return list(_graver_cached(nfold_matrix(A, n), n * A.t))
    base = _graver_cached(nfold_matrix(A, c), c * A.t)
    out = set()
    for ks in itertools.combinations(range(n), c):
        for g in base:
            out.add(_embed(g, ks, n, A.t))
    return sorted(out)
