"""Search over a pivot-table sprawl (AESA, iAESA-free variants, PiAESA).

Every point starts out available.  Points are visited one at a time in order
of a heuristic built from the triangle-inequality bounds gathered so far;
after each visit any candidate whose bound exceeds the radius is eliminated.
The virtual regions are the rows of the distance matrix.
"""
from __future__ import annotations

import heapq

import numpy as np

from ..ambit import LinearAmbit, member, normalized_rows
from ..errors import InvalidInputError
from ..metrics import EPS, INF, CountedMetric
from .graph import SprawlGraph

HEURISTICS = ("lb_sum", "lb_max")


class _Walk:
    def __init__(self, g: SprawlGraph, heuristic: str | None):
        t = g.table
        self.D = t.matrix
        self.heuristic = heuristic or t.heuristic
        if self.heuristic not in HEURISTICS:
            raise InvalidInputError(f"unknown heuristic {self.heuristic!r}")
        n = g.n
        self.alive = np.ones(n, dtype=bool)
        self.lbmax = np.zeros(n)
        self.lbsum = np.zeros(n)
        self.pivots = iter(t.pivot_order[: t.switch])
        self.steps = 0
        self.checked = 0
        self.eliminated = 0

    def next_point(self) -> int | None:
        for p in self.pivots:
            if self.alive[p]:
                return p
        if not self.alive.any():
            return None
        h = self.lbsum if self.heuristic == "lb_sum" else self.lbmax
        return int(np.where(self.alive, h, np.inf).argmin())

    def take(self, u: int):
        self.alive[u] = False
        self.steps += 1

    def update(self, u: int, d: float, s: float):
        row = np.abs(self.D[u] - d)
        np.maximum(self.lbmax, row, out=self.lbmax)
        self.lbsum += row
        self.checked += int(self.alive.sum())
        self.kill(self.alive & (self.lbmax > s + EPS))

    def kill(self, mask):
        k = int(mask.sum())
        if k:
            self.alive &= ~mask
            self.eliminated += k


def _report(walk: _Walk, results, m, calls0, radius, trace):
    from .search import SearchReport
    return SearchReport(results=results, distance_count=m.calls - calls0,
                        regions_checked=walk.checked, regions_pruned=walk.eliminated,
                        points_eliminated=walk.eliminated, radius=radius,
                        trace=[] if trace else None)


def aesa_range(g: SprawlGraph, m: CountedMetric, q, s: float, heuristic=None, trace=False):
    walk = _Walk(g, heuristic)
    calls0 = m.calls
    found = []
    while (u := walk.next_point()) is not None:
        walk.take(u)
        d = m(q, g.payloads[u])
        if d <= s:
            found.append((u, d))
        walk.update(u, d, s)
    return _report(walk, sorted(found), m, calls0, s, trace)


def aesa_knn(g: SprawlGraph, m: CountedMetric, q, k: int, heuristic=None, trace=False):
    walk = _Walk(g, heuristic)
    calls0 = m.calls
    best: list[tuple[float, int]] = []
    s = INF
    while (u := walk.next_point()) is not None:
        walk.take(u)
        d = m(q, g.payloads[u])
        if len(best) < k:
            heapq.heappush(best, (-d, -u))
        elif (d, u) < (-best[0][0], -best[0][1]):
            heapq.heapreplace(best, (-d, -u))
        if len(best) == k:
            s = -best[0][0]
        walk.update(u, d, s)
    results = [(u, d) for d, u in sorted((-nd, -nu) for nd, nu in best)]
    return _report(walk, results, m, calls0, s, trace)


def aesa_ambit(g: SprawlGraph, m: CountedMetric, Q: LinearAmbit, trace=False):
    """Ambit query: visited points eliminate candidates through the sphere rule.

    For a visited point v with query-focus distances y_v and a candidate u at
    x = D[v, u], the sphere {x} around v can only meet a normalized query row
    (c, s) if ``x >= c.y_v - s`` and, when c is nonnegative, ``x <= c.y_v + s``.
    Candidates are taken in id order.
    """
    walk = _Walk(g, "lb_max")
    calls0 = m.calls
    qrows = normalized_rows(Q)
    first = Q.coeffs[0]
    found = []
    while walk.alive.any():
        u = int(walk.alive.argmax())
        walk.take(u)
        y = [m(qf, g.payloads[u]) for qf in Q.foci]
        if member(Q, y):
            found.append((u, sum(c * v for c, v in zip(first, y))))
        row = walk.D[u]
        walk.checked += int(walk.alive.sum())
        dead = np.zeros(g.n, dtype=bool)
        for c, s, c_nonneg in qrows:
            cy = sum(ci * yi for ci, yi in zip(c, y))
            dead |= row < cy - s - EPS
            if c_nonneg:
                dead |= row > cy + s + EPS
        walk.kill(walk.alive & dead)
    return _report(walk, sorted(found), m, calls0, Q.radii[0], trace)
