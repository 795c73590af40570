"""Exact convex and linear discrete optimization over lattice points.

Graver bases, n-fold integer programming, zonotope vertex enumeration and
the table, packing and partition models built on them.
"""

from .outcome import Infeasible, Optimal, Unbounded

__all__ = ["Infeasible", "Optimal", "Unbounded"]
__version__ = "0.1.0"
