"""Exhaustive search over r x c x h tables with prescribed line-sums.

A cell can only be nonzero when all three of its line-sums are positive,
so the search runs over those live cells with interval propagation along
every line and depth-first branching on the narrowest open cell.
"""

from __future__ import annotations


class _Search:
    def __init__(self, u, v, z):
        r, c = len(u), len(z)
        h = len(v[0]) if v else (len(z[0]) if z else 0)
        self.shape = (r, c, h)
        self.ok = True
        for rows, m, n in ((u, r, c), (v, r, h), (z, c, h)):
            if len(rows) != m or any(len(row) != n for row in rows):
                raise ValueError("line-sum arrays do not fit an r x c x h table")
            if any(a < 0 for row in rows for a in row):
                self.ok = False
        self.cells = []
        line_id: dict = {}
        self.targets = []
        self.lines: list = []
        self.cell_lines: list = []

        def lid(key, target):
            if key not in line_id:
                line_id[key] = len(self.targets)
                self.targets.append(target)
                self.lines.append([])
            return line_id[key]

        if not self.ok:
            return
        for i in range(r):
            for j in range(c):
                if u[i][j] <= 0:
                    continue
                for k in range(h):
                    if v[i][k] > 0 and z[j][k] > 0:
                        idx = len(self.cells)
                        self.cells.append((i, j, k))
                        ls = (lid(("u", i, j), u[i][j]), lid(("v", i, k), v[i][k]), lid(("z", j, k), z[j][k]))
                        for L in ls:
                            self.lines[L].append(idx)
                        self.cell_lines.append(ls)
        # every positive line-sum needs a live cell
        for key_rows, kind in ((u, "u"), (v, "v"), (z, "z")):
            for a, row in enumerate(key_rows):
                for b, val in enumerate(row):
                    if val > 0 and (kind, a, b) not in line_id:
                        self.ok = False
        self.hi0 = [min(self.targets[L] for L in ls) for ls in self.cell_lines]

    def propagate(self, lo, hi, queue) -> bool:
        queued = set(queue)
        targets, lines, cell_lines = self.targets, self.lines, self.cell_lines
        while queue:
            L = queue.pop()
            queued.discard(L)
            T = targets[L]
            cells = lines[L]
            slo = shi = 0
            for x in cells:
                slo += lo[x]
                shi += hi[x]
            if slo > T or shi < T:
                return False
            for x in cells:
                nhi = T - (slo - lo[x])
                nlo = T - (shi - hi[x])
                changed = False
                if nhi < hi[x]:
                    shi -= hi[x] - nhi
                    hi[x] = nhi
                    changed = True
                if nlo > lo[x]:
                    slo += nlo - lo[x]
                    lo[x] = nlo
                    changed = True
                if changed:
                    if lo[x] > hi[x]:
                        return False
                    for M in cell_lines[x]:
                        if M != L and M not in queued:
                            queued.add(M)
                            queue.append(M)
        return True

    def solutions(self, lo, hi):
        if not self.propagate(lo, hi, list(range(len(self.targets)))):
            return
        yield from self._dfs(lo, hi)

    def _dfs(self, lo, hi):
        best, width = -1, None
        for x in range(len(lo)):
            w = hi[x] - lo[x]
            if w and (width is None or w < width):
                best, width = x, w
                if w == 1:
                    break
        if best < 0:
            yield {self.cells[x]: lo[x] for x in range(len(lo)) if lo[x]}
            return
        for val in range(lo[best], hi[best] + 1):
            lo2, hi2 = lo[:], hi[:]
            lo2[best] = hi2[best] = val
            if self.propagate(lo2, hi2, list(self.cell_lines[best])):
                yield from self._dfs(lo2, hi2)


def line_sum_tables(u, v, z, fixed: dict | None = None):
    """Yield every nonnegative integer table with the given line-sums.

    u[i][j] = sum_k x[i][j][k], v[i][k] = sum_j x[i][j][k], z[j][k] = sum_i x[i][j][k].
    Tables are sparse dicts {(i, j, k): value} of their nonzero cells.
    ``fixed`` maps cells to (lo, hi) ranges that restrict the search.
    """
    s = _Search(u, v, z)
    if not s.ok:
        return
    lo = [0] * len(s.cells)
    hi = list(s.hi0)
    where = {cell: x for x, cell in enumerate(s.cells)}
    for cell, (a, b) in (fixed or {}).items():
        if cell not in where:
            if a > 0:
                return
            continue
        x = where[cell]
        lo[x], hi[x] = max(lo[x], a), min(hi[x], b)
        if lo[x] > hi[x]:
            return
    yield from s.solutions(lo, hi)


def count_line_sum_tables(u, v, z, limit: int | None = None) -> int:
    n = 0
    for _ in line_sum_tables(u, v, z):
        n += 1
        if limit is not None and n >= limit:
            break
    return n


def first_table(u, v, z, fixed: dict | None = None):
    return next(line_sum_tables(u, v, z, fixed), None)


def dense(table: dict, shape) -> list:
    r, c, h = shape
    return [[[table.get((i, j, k), 0) for k in range(h)] for j in range(c)] for i in range(r)]
