"""Linear and convex n-fold integer programming.

The constraint matrix is the n-fold product of a fixed template: A1 repeated
along the top and A2 on the block diagonal.  Optimization augments along
the Graver basis of the n-fold matrix, which is assembled from the Graver
basis of a c-fold matrix.  Feasibility is found by optimizing an auxiliary
n-fold program with slack columns.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field, replace

from . import numeric as nm
from .convex import ConvexObjective, maximize_convex_composite
from .graver import Bimatrix, nfold_graver, nfold_matrix
from .ip import solve_ip_graver, _bounded
from .lp import lp_solve
from .outcome import Infeasible, Optimal, Unbounded

INF = math.inf


@dataclass(frozen=True)
class NFoldProblem:
    template: Bimatrix
    n: int
    b: tuple
    l: tuple
    u: tuple
    objective: object = None  # linear weight vector or ConvexObjective

    @classmethod
    def of(cls, template: Bimatrix, n: int, b, l, u, objective=None) -> "NFoldProblem":
        if n < 1:
            raise ValueError("n must be positive")
        nt = n * template.t
        b = nm.vec(b)
        if len(b) != template.r + n * template.s:
            raise ValueError(f"right-hand side must have length {template.r + n * template.s}")
        l, u = nm.check_bounds(tuple(l), tuple(u), nt)
        if objective is None:
            objective = nm.zero(nt)
        if isinstance(objective, ConvexObjective):
            if any(len(w) != nt for w in objective.weights):
                raise ValueError("objective weights have the wrong length")
        else:
            objective = nm.vec(objective)
            if len(objective) != nt:
                raise ValueError("objective has the wrong length")
        return cls(template, n, b, l, u, objective)

    @property
    def nt(self) -> int:
        return self.n * self.template.t

    def matrix(self) -> tuple:
        return nfold_matrix(self.template, self.n)

    def feasible(self, x) -> bool:
        return nm.in_box(x, self.l, self.u) and nm.matvec(self.matrix(), x) == self.b

    def with_objective(self, objective) -> "NFoldProblem":
        return replace(self, objective=objective)


def _merge(total: dict, part: dict, prefix: str = "") -> None:
    for key in ("phases", "augmentations", "oracle_calls", "lp_solves"):
        if key in part:
            total[prefix + key] = total.get(prefix + key, 0) + part[key]


def nfold_optimize_from_feasible(p: NFoldProblem, x, debug: bool = False):
    """Optimize the linear objective of p from a feasible point."""
    x = nm.vec(x)
    if not p.feasible(x):
        raise ValueError("starting point is not feasible")
    G = nfold_graver(p.template, p.n, "auto")
    out = solve_ip_graver(p.matrix(), G, p.l, p.u, x, p.objective, debug)
    out.stats["graver_size"] = len(G)
    return out


def auxiliary_template(A: Bimatrix, columns=None) -> Bimatrix:
    """(A1, I, -I, 0, 0) over (A2, 0, 0, I, -I).

    ``columns`` optionally lists the slack columns to keep as (row, sign)
    pairs, rows numbered top first; by default all 2r + 2s are kept.
    """
    r, s = A.r, A.s
    if columns is None:
        columns = [(i, 1) for i in range(r)] + [(i, -1) for i in range(r)]
        columns += [(r + i, 1) for i in range(s)] + [(r + i, -1) for i in range(s)]
    columns = list(columns)
    rows = [tuple(row) for row in A.A1] + [tuple(row) for row in A.A2]
    full = [row + tuple(sg if i == k else 0 for i, sg in columns) for k, row in enumerate(rows)]
    return Bimatrix.of(full[:r], full[r:], A.t + len(columns))


def _clamp_zero(lo, hi) -> int:
    return min(max(0, lo), hi)


def _round_bricks(p: NFoldProblem, point):
    """Integral point near an LP point with the same brick sum, or None if that sum is fractional.

    Every coordinate is rounded down or up, so the box is respected, and the
    top rows (which only see the brick sum) stay satisfied.
    """
    t, n = p.template.t, p.n
    x = [math.floor(a) for a in point]
    for j in range(t):
        total = sum(Fraction(point[k * t + j]) for k in range(n))
        if total.denominator != 1:
            return None
        deficit = int(total) - sum(x[k * t + j] for k in range(n))
        for k in range(n):
            if deficit and Fraction(point[k * t + j]).denominator != 1:
                x[k * t + j] += 1
                deficit -= 1
    return tuple(x)


def _relaxation_start(p: NFoldProblem, stats: dict | None):
    """From the LP relaxation: Infeasible, a feasible point, a better start, or None."""
    out = lp_solve(p.matrix(), p.b, p.l, p.u, nm.zero(p.nt))
    if stats is not None:
        stats["feasibility_lp_solves"] = stats.get("feasibility_lp_solves", 0) + 1
    if isinstance(out, Infeasible):
        return out, None
    if not isinstance(out, Optimal):
        return None, None
    if all(Fraction(a).denominator == 1 for a in out.point):
        return tuple(int(a) for a in out.point), None
    return None, _round_bricks(p, out.point)


def nfold_find_feasible(p: NFoldProblem, debug: bool = False, stats: dict | None = None, relaxation: bool = True):
    """A feasible point of p, or Infeasible.

    With ``relaxation`` the LP relaxation is tried first; the auxiliary
    program only runs when it is feasible but its vertex is fractional, and
    then starts from a rounding of that vertex when the rounding keeps the
    top rows satisfied.
    """
    if any(lo > hi for lo, hi in zip(p.l, p.u)):
        return Infeasible()
    A, n, t = p.template, p.n, p.template.t
    r, s = A.r, A.s
    x0 = tuple(_clamp_zero(lo, hi) for lo, hi in zip(p.l, p.u))
    resid = nm.sub(p.b, nm.matvec(p.matrix(), x0))
    if not any(resid):
        return x0
    if relaxation:
        found, start = _relaxation_start(p, stats)
        if found is not None:
            return found
        if start is not None:
            x0 = start
            resid = nm.sub(p.b, nm.matvec(p.matrix(), x0))
    # keep only the slack columns some residual needs; a feasible point of p
    # still extends by zero slack, so the auxiliary optimum is 0 iff p is feasible
    need = set()
    for i in range(r):
        if resid[i]:
            need.add((i, nm.sign(resid[i])))
    for k in range(n):
        for i in range(s):
            v = resid[r + k * s + i]
            if v:
                need.add((r + i, nm.sign(v)))
    columns = sorted(need, key=lambda c: (c[0] >= r, -c[1], c[0]))
    aux = auxiliary_template(A, columns)
    ta = aux.t
    extra = len(columns)
    seed, lo, hi, w = [], [], [], []
    for k in range(n):
        slack = []
        for i, sg in columns:
            v = resid[i] if i < r else resid[r + k * s + (i - r)]
            if i < r and k:
                v = 0
            slack.append(abs(v) if nm.sign(v) == sg else 0)
        seed += list(x0[k * t : (k + 1) * t]) + slack
        lo += list(p.l[k * t : (k + 1) * t]) + [0] * extra
        hi += list(p.u[k * t : (k + 1) * t]) + [INF] * extra
        w += [0] * t + [-1] * extra
    q = NFoldProblem.of(aux, n, p.b, lo, hi, w)
    out = nfold_optimize_from_feasible(q, seed, debug)
    if stats is not None:
        _merge(stats, out.stats, "feasibility_")
        stats["feasibility_graver_size"] = out.stats.get("graver_size")
    if not isinstance(out, Optimal) or out.value != 0:
        return Infeasible()
    x = []
    for k in range(n):
        x += out.point[k * ta : k * ta + t]
    x = tuple(x)
    assert p.feasible(x)
    return x


def nfold_solve_linear(p: NFoldProblem, debug: bool = False, relaxation: bool = True):
    """Optimal, Infeasible or Unbounded for a linear n-fold program."""
    stats: dict = {}
    x = nfold_find_feasible(p, debug, stats, relaxation)
    if isinstance(x, Infeasible):
        return Infeasible(stats=stats)
    out = nfold_optimize_from_feasible(p, x, debug)
    _merge(stats, out.stats)
    if isinstance(out, Unbounded):
        return Unbounded(stats=stats)
    assert p.feasible(out.point)
    stats["graver_size"] = out.stats.get("graver_size")
    return Optimal(out.point, out.value, stats)


def nfold_solve_convex(p: NFoldProblem, debug: bool = False, relaxation: bool = True):
    """Maximize a convex objective c(Wx) over the lattice points of an n-fold program."""
    obj = p.objective
    if not isinstance(obj, ConvexObjective):
        raise TypeError("problem objective must be a ConvexObjective")
    stats: dict = {}
    x = nfold_find_feasible(p, debug, stats, relaxation)
    if isinstance(x, Infeasible):
        return Infeasible(stats=stats)
    A = p.matrix()
    bad = _bounded(A, p.b, p.l, p.u, p.nt)
    stats["lp_solves"] = stats.get("lp_solves", 0) + 2 * p.nt
    if bad is not None:
        return Unbounded(stats=stats) if isinstance(bad, Unbounded) else Infeasible(stats=stats)
    G = nfold_graver(p.template, p.n, "auto")

    def ldo(w):
        out = nfold_optimize_from_feasible(p.with_objective(w), x, debug)
        _merge(stats, out.stats)
        return out.point

    res = maximize_convex_composite(ldo, obj, G)
    if not isinstance(res, Optimal):
        return res
    assert p.feasible(res.point)
    z = obj.project(res.point)
    stats["linear_oracle_calls"] = res.stats["oracle_calls"]
    stats["graver_size"] = len(G)
    value = obj.evaluate(z) if obj.evaluate else None
    return Optimal(res.point, value, {**stats, "projection": z})
