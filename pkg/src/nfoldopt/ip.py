"""Integer programming by oriented augmentation along Graver basis elements.

Programs have the form max{wx : Ax = b, l <= x <= u, x integer} with
bounds in Z plus +-inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import numeric as nm
from .convex import ConvexObjective, maximize_convex_composite
from .lp import box_bound, lp_solve
from .outcome import Infeasible, Optimal, Unbounded

INF = math.inf


class OracleContractError(RuntimeError):
    pass


@dataclass(frozen=True)
class BoxProgram:
    A: tuple
    b: tuple
    l: tuple
    u: tuple

    @classmethod
    def of(cls, A, b, l, u) -> "BoxProgram":
        A = nm.matrix(A)
        n = len(l)
        if A and nm.ncols(A) != n:
            raise ValueError("matrix width does not match the bounds")
        b = nm.vec(b)
        if len(b) != len(A):
            raise ValueError("right-hand side length mismatch")
        l, u = nm.check_bounds(l, u, n)
        return cls(A, b, l, u)

    @property
    def n(self) -> int:
        return len(self.l)

    def feasible(self, x) -> bool:
        return nm.in_box(x, self.l, self.u) and nm.matvec(self.A, x) == self.b


def _shifted(w, mu: Fraction, y, l, u):
    """w+ = w - mu (u-y)^-1 and w- = w + mu (y-l)^-1, with infinite reciprocals on zero gaps."""
    wp, wm = [], []
    for wi, yi, lo, hi in zip(w, y, l, u):
        up = hi - yi
        dn = yi - lo
        if mu == 0:
            wp.append(Fraction(wi))
            wm.append(Fraction(wi))
            continue
        wp.append(wi - mu / up if up else -INF)
        wm.append(wi + mu / dn if dn else INF)
    return wp, wm


def oriented_value(wp, wm, g):
    """w+ g+ - w- g-, where infinite entries only meet the zero part of g."""
    total = Fraction(0)
    for a, p, m in zip(g, wp, wm):
        if a > 0:
            total += p * a
        elif a < 0:
            total += m * a
    return total


def gap_measure(y, g, l, u):
    """(u-y)^-1 g+ + (y-l)^-1 g-, the fraction of each coordinate's room that g uses."""
    total = Fraction(0)
    for a, yi, lo, hi in zip(g, y, l, u):
        if a > 0:
            total += Fraction(a, hi - yi) if hi != yi else INF
        elif a < 0:
            total += Fraction(-a, yi - lo) if yi != lo else INF
    return total


def phase_bound(n: int, rho: int, w) -> int:
    """ceil(log2(2 n rho |w|_inf)), the phase budget of oriented augmentation (1 when w = 0)."""
    m = 2 * n * rho * nm.norm_inf(w)
    return max(1, nm.ceil_log2(m)) if m > 0 else 1


def oriented_augment_optimize(l, u, oracle, x, w, gap=None, debug: bool = False, stats: dict | None = None):
    """Maximize w over S = aff(S) within the finite box [l, u] from x in S.

    ``oracle(y, w_plus, w_minus)`` must return an exhaustive step g with
    y + g in S and w+ g+ - w- g- > 0, or None if no such g exists.  ``gap``
    optionally bounds max{wz : z in S} - wx and only tightens the first phase.
    """
    y = tuple(x)
    w = nm.vec(w)
    n = len(y)
    if any(a in (INF, -INF) for a in tuple(l) + tuple(u)):
        raise ValueError("oriented augmentation needs a finite box")
    rho = max((abs(a) for a in tuple(l) + tuple(u)), default=0)
    # the first phase only needs wx* - wx <= 2 n mu_1; the box gives such a bound too
    box_gap = sum(max(wi * (hi - yi), wi * (lo - yi)) for wi, yi, lo, hi in zip(w, y, l, u))
    if gap is not None:
        box_gap = min(box_gap, gap)
    mu = Fraction(rho * nm.norm_inf(w))
    if n:
        mu = min(mu, Fraction(max(box_gap, 0), 2 * n))
    phases = 0
    per_phase = []
    while True:
        phases += 1
        count = 0
        while True:
            wp, wm = _shifted(w, mu, y, l, u)
            g = oracle(y, wp, wm)
            if g is None:
                break
            g = tuple(g)
            z = nm.add(y, g)
            if not nm.in_box(z, l, u) or oriented_value(wp, wm, g) <= 0:
                raise OracleContractError(f"oracle step {g} at {y} is not an improving feasible step")
            if debug:
                m = gap_measure(y, g, l, u)
                assert m <= n, "room used exceeds n"
                assert 2 * m > 1, "step is not exhaustive"
            y = z
            count += 1
        per_phase.append(count)
        if n == 0 or mu < Fraction(1, n):
            break
        mu /= 2
    if stats is not None:
        stats["phases"] = stats.get("phases", 0) + phases
        stats["augmentations"] = stats.get("augmentations", 0) + sum(per_phase)
        stats["max_phase_augmentations"] = max(stats.get("max_phase_augmentations", 0), max(per_phase))
        stats.setdefault("phase_log", []).append({"phases": phases, "per_phase": per_phase, "rho": rho})
    return y


def _largest_step(ok, top: int) -> int:
    """Largest r in 1..top with ok(r), assuming {r : ok(r)} is an interval containing 1."""
    lo, hi = 1, top
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


class GraverOracle:
    """Oriented augmentation oracle over a box-clipped fiber, scanning a Graver basis in order."""

    def __init__(self, G, l, u, rho: int):
        self.G = [tuple(g) for g in G]
        self.l = tuple(l)
        self.u = tuple(u)
        self.rho = rho
        self.calls = 0
        n = len(self.l)
        big = max((nm.norm_inf(g) for g in self.G), default=0)
        dtype = np.int64 if big < (1 << 40) else object
        self._G = np.array(self.G, dtype=dtype).reshape(len(self.G), n)
        self._pos = np.where(self._G > 0, self._G, 0).astype(float)
        self._neg = np.where(self._G < 0, -self._G, 0).astype(float)
        self._lo = np.array([float(a) for a in self.l])
        self._hi = np.array([float(a) for a in self.u])

    def __call__(self, y, wp, wm):
        self.calls += 1
        if not self.G:
            return None
        # float screening is deliberately permissive; candidates are re-checked exactly
        yv = np.array([float(a) for a in y])
        moved = self._G.astype(float) + yv
        slack = 1e-9 * (1.0 + np.abs(self._lo) + np.abs(self._hi) + np.abs(yv))
        feas = ((moved >= self._lo - slack) & (moved <= self._hi + slack)).all(axis=1)
        wpf = np.array([float(a) if abs(a) != INF else 0.0 for a in wp])
        wmf = np.array([float(a) if abs(a) != INF else 0.0 for a in wm])
        approx = self._pos @ wpf - self._neg @ wmf
        scale = 1.0 + self._pos @ np.abs(wpf) + self._neg @ np.abs(wmf)
        cand = np.flatnonzero(feas & (approx > -1e-9 * scale))
        for k in cand:
            g = self.G[int(k)]
            if nm.in_box(nm.add(y, g), self.l, self.u) and oriented_value(wp, wm, g) > 0:
                z = lambda r: nm.in_box(nm.add(y, nm.scale(r, g)), self.l, self.u)
                r = _largest_step(z, max(1, 2 * self.rho))
                return nm.scale(r, g)
        return None


def graver_oriented_oracle(G, program: BoxProgram, rho: int) -> GraverOracle:
    """Oracle for S = {x : Ax = b} within the program's box clipped to [-rho, rho]."""
    l = tuple(max(a, -rho) for a in program.l)
    u = tuple(min(a, rho) for a in program.u)
    return GraverOracle(G, l, u, rho)


def cramer_bound(A, b, l, u) -> int:
    """(n+1)(n+1)! r^(n+1) with r the largest absolute finite input entry."""
    n = len(l)
    entries = [abs(a) for row in A for a in row] + [abs(a) for a in b]
    entries += [abs(a) for a in tuple(l) + tuple(u) if a not in (INF, -INF)]
    r = max(entries, default=0)
    return (n + 1) * math.factorial(n + 1) * r ** (n + 1)


def solve_ip_graver(A, G, l, u, x, w, debug: bool = False):
    """max{wz : Az = Ax, l <= z <= u, z integer} from the feasible x, with G the Graver basis of A."""
    x = nm.vec(x)
    w = nm.vec(w)
    n = len(x)
    A = nm.matrix(A)
    l, u = nm.check_bounds(l, u, n)
    if not nm.in_box(x, l, u):
        raise ValueError("starting point violates its bounds")
    b = nm.matvec(A, x)
    stats: dict = {"lp_solves": 1}
    relax = lp_solve(A, b, l, u, w)
    if isinstance(relax, Unbounded):
        return Unbounded(stats=stats)
    rho = cramer_bound(A, b, l, u)
    bound = box_bound(A, b, l, u, n)
    stats["lp_solves"] += 2 * n
    if isinstance(bound, int):
        rho = min(rho, bound)
    rho = max(rho, nm.norm_inf(x))
    program = BoxProgram.of(A, b, l, u)
    oracle = graver_oriented_oracle(G, program, rho)
    gap = math.floor(relax.value) - nm.dot(w, x)
    best = oriented_augment_optimize(oracle.l, oracle.u, oracle, x, w, gap=gap, debug=debug, stats=stats)
    stats["oracle_calls"] = oracle.calls
    stats["rho"] = rho
    return Optimal(best, nm.dot(w, best), stats)


def solve_ip_graver_std(A, G, x, w, debug: bool = False):
    """Standard form: bounds 0 <= x < inf."""
    n = len(x)
    return solve_ip_graver(A, G, [0] * n, [INF] * n, x, w, debug)


def _integral(point) -> tuple:
    if any(Fraction(a).denominator != 1 for a in point):
        raise ValueError("linear relaxation has a fractional vertex; matrix is not totally unimodular")
    return tuple(int(a) for a in point)


def _bounded(A, b, l, u, n):
    """2n LP probes: Infeasible, Unbounded, or the integer box radius."""
    for j in range(n):
        for sgn in (1, -1):
            w = [0] * n
            w[j] = sgn
            out = lp_solve(A, b, l, u, w)
            if not isinstance(out, Optimal):
                return out
    return None


def solve_tum_convex(A, C, l, u, b, obj: ConvexObjective):
    """Convex maximization over {x : Ax = b, l <= x <= u} for totally unimodular A; C covers its circuits."""
    A = nm.matrix(A)
    n = len(l)
    l, u = nm.check_bounds(l, u, n)
    bad = _bounded(A, b, l, u, n)
    if bad is not None:
        return bad

    def ldo(w):
        out = lp_solve(A, b, l, u, w)
        return _integral(out.point) if isinstance(out, Optimal) else None

    return maximize_convex_composite(ldo, obj, C)


def solve_convex_graver(A, G, l, u, x, obj: ConvexObjective, debug: bool = False):
    """Convex maximization over the fiber of x, using G both to optimize and as edge-directions."""
    A = nm.matrix(A)
    x = nm.vec(x)
    n = len(x)
    l, u = nm.check_bounds(l, u, n)
    b = nm.matvec(A, x)
    bad = _bounded(A, b, l, u, n)
    if isinstance(bad, Unbounded):
        return bad
    totals: dict = {"linear_solves": 0}

    def ldo(w):
        totals["linear_solves"] += 1
        out = solve_ip_graver(A, G, l, u, x, w, debug)
        for key, name in (("phases", "phases"), ("augmentations", "augmentations"), ("oracle_calls", "augmentation_queries")):
            totals[name] = totals.get(name, 0) + out.stats.get(key, 0)
        return out.point

    res = maximize_convex_composite(ldo, obj, G)
    if isinstance(res, Optimal):
        res.stats.update(totals)
    return res
