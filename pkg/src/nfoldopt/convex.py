"""Convex maximization over a finite set through a linear optimization oracle.

The set S is only accessed through ``ldo(w)``, which returns a maximizer of
w.x over S (or ``None``/``Infeasible`` when S is empty).  The objective is
c(w_1 x, ..., w_d x) with c convex, given by a comparison oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import numeric as nm
from .outcome import Infeasible, Optimal
from .zonotope import project_directions, vertex_count_bound, zonotope_vertices


@dataclass(frozen=True)
class ConvexObjective:
    """Weights w_1..w_d (rows) and a comparator ``leq(z1, z2)`` meaning c(z1) <= c(z2)."""

    weights: tuple
    leq: Callable
    evaluate: Callable | None = None
    name: str = "custom"

    @property
    def d(self) -> int:
        return len(self.weights)

    def project(self, x) -> tuple:
        return nm.matvec(self.weights, x)

    def value(self, x):
        if self.evaluate is None:
            raise ValueError("objective has no evaluator")
        return self.evaluate(self.project(x))


def _by_value(weights, f, name) -> ConvexObjective:
    return ConvexObjective(nm.matrix(weights), lambda a, b: f(a) <= f(b), f, name)


def squared_l2(weights) -> ConvexObjective:
    return _by_value(weights, lambda z: sum(a * a for a in z), "squared-l2")


def lp_power(weights, p: int) -> ConvexObjective:
    """Sum of |z_i|^p; comparing p-th powers orders points like the l_p norm."""
    if p < 1:
        raise ValueError("p must be at least 1")
    return _by_value(weights, lambda z: sum(abs(a) ** p for a in z), f"l{p}^{p}")


def linf(weights) -> ConvexObjective:
    return _by_value(weights, lambda z: max((abs(a) for a in z), default=0), "linf")


def linear(w) -> ConvexObjective:
    return _by_value([tuple(w)], lambda z: z[0], "linear")


def _point(res):
    if res is None or isinstance(res, Infeasible):
        return None
    if isinstance(res, Optimal):
        return tuple(res.point)
    return tuple(res)


def _better(obj: ConvexObjective, z, x, best) -> bool:
    if best is None:
        return True
    bz, bx = best
    if not obj.leq(z, bz):
        return True
    if obj.leq(bz, z):
        return (z, x) < (bz, bx)
    return False


def _sweep(ldo, obj: ConvexObjective, directions: list):
    n = len(obj.weights[0])
    calls = 1
    first = _point(ldo(nm.zero(n)))
    if first is None:
        return Infeasible(stats={"oracle_calls": calls})
    best = (obj.project(first), first)
    witnesses = zonotope_vertices(directions, obj.d)
    for wit in witnesses:
        g = nm.zero(n)
        for hi, row in zip(wit.functional, obj.weights):
            if hi:
                g = nm.add(g, nm.scale(hi, row))
        x = _point(ldo(g))
        calls += 1
        if x is None:
            raise RuntimeError("linear oracle failed on a nonempty set")
        z = obj.project(x)
        if _better(obj, z, x, best):
            best = (z, x)
    stats = {"oracle_calls": calls, "zonotope_vertices": len(witnesses), "directions": len(directions)}
    value = obj.evaluate(best[0]) if obj.evaluate else None
    return Optimal(best[1], value, stats)


def maximize_convex_composite(ldo, obj: ConvexObjective, E):
    """Maximize c(Wx) over S given edge-directions E of conv(S)."""
    return _sweep(ldo, obj, project_directions(E, obj.weights))


def ldo_call_bound(num_directions: int, d: int) -> int:
    return 1 + vertex_count_bound(num_directions, d)


def grid_difference_directions(rho: int, weights) -> list:
    """Primitive classes of differences of the grid {-r..r}^d, r = n rho max|w|."""
    weights = nm.matrix(weights)
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    d = len(weights)
    n = nm.ncols(weights)
    r = n * rho * max((nm.norm_inf(w) for w in weights), default=0)
    out = set()
    for v in itertools.product(range(-2 * r, 2 * r + 1), repeat=d):
        if any(v):
            out.add(nm.primitive(v))
    return sorted(out)


def maximize_convex_no_directions(ldo, rho: int, obj: ConvexObjective):
    """Maximize c(Wx) over S with only a radius bound rho >= max|x_i| known."""
    return _sweep(ldo, obj, grid_difference_directions(rho, obj.weights))
