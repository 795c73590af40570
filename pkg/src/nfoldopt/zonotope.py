"""Vertices of zonotopes with integral witness functionals.

The vertices of zone(E) = sum of the segments [-e, e] correspond to the
regions of the central hyperplane arrangement {h : h.e = 0}.  Every region
of an essential arrangement of rank k >= 2 has an extreme ray cut out by
k - 1 independent generators, so regions are found by walking those rays
and recursing on the generators lying in the corresponding hyperplane.
Exact integer arithmetic throughout; degenerate (non-generic) inputs are
handled by the recursion rather than by a numeric perturbation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from . import numeric as nm


@dataclass(frozen=True)
class VertexWitness:
    vertex: tuple
    functional: tuple


def vertex_count_bound(m: int, d: int) -> int:
    """Upper bound on the number of vertices of a zonotope with m generators in dimension d."""
    if m == 0:
        return 1
    return 2 * sum(comb(m - 1, k) for k in range(d))


def _direction(e) -> tuple:
    p = nm.primitive(e)
    return p if next(a for a in p if a) > 0 else nm.neg(p)


def merged_directions(E) -> list:
    """Distinct lines spanned by the nonzero generators, as sign-normalised primitive vectors."""
    return sorted({_direction(e) for e in E if any(e)})


def _regions(vecs: list, d: int) -> list:
    """One integral functional per region of the arrangement of ``vecs`` (pairwise non-parallel)."""
    if not vecs:
        return [nm.zero(d)]
    k = nm.rank(vecs)
    if k == 1:
        return [vecs[0], nm.neg(vecs[0])]
    found: dict = {}
    done: set = set()
    for M in itertools.combinations(range(len(vecs)), k - 1):
        rows = [vecs[i] for i in M]
        if nm.rank(rows) < k - 1:
            continue
        normal = next(b for b in nm.kernel_basis(rows, d) if any(nm.dot(b, v) for v in vecs))
        flat = tuple(i for i, v in enumerate(vecs) if nm.dot(normal, v) == 0)
        if flat in done:
            continue
        done.add(flat)
        for g in _regions([vecs[i] for i in flat], d):
            big = 1 + 2 * sum(nm.norm_inf(g) * nm.norm1(v) for v in vecs)
            for s in (1, -1):
                h = nm.add(nm.scale(s * big, normal), g)
                key = tuple(nm.dot(h, v) > 0 for v in vecs)
                found.setdefault(key, h)
    return list(found.values())


def zonotope_vertices(E, d: int | None = None) -> list:
    """All vertices of zone(E) with functionals maximised uniquely there, sorted by vertex."""
    E = [nm.vec(e) for e in E]
    if d is None:
        if not E:
            raise ValueError("dimension needed for an empty generator set")
        d = len(E[0])
    if any(len(e) != d for e in E):
        raise ValueError("generators of different dimensions")
    out = {}
    for h in _regions(merged_directions(E), d):
        v = nm.zero(d)
        for e in E:
            s = nm.sign(nm.dot(h, e))
            if s:
                v = nm.add(v, e) if s > 0 else nm.sub(v, e)
        out.setdefault(v, h)
    return [VertexWitness(v, out[v]) for v in sorted(out)]


def project_directions(E, W) -> list:
    """Primitive images W e of the directions, zero images dropped, deduplicated up to sign."""
    W = nm.matrix(W)
    out = set()
    for e in E:
        if W and len(e) != len(W[0]):
            raise ValueError("direction length does not match the projection")
        img = nm.matvec(W, e)
        if any(img):
            out.add(_direction(img))
    return sorted(out)
