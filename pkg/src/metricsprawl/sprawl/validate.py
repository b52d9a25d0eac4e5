"""Structural checks and a containment audit for sprawls.

Full responsibility checking is out of reach in general, so this settles for
what can be checked cheaply: the graph is bipartite and acyclic along
positive edges, parents agree with foci, every point can be reached, and in
tree-like parts every region really contains the points stored under it.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

import numpy as np

from ..ambit import member
from ..metrics import CountedMetric
from .graph import SprawlGraph


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    containment_failures: dict[int, list[int]] = field(default_factory=dict)
    audit_distances: int = 0

    @property
    def passed(self) -> bool:
        return not self.errors and not self.containment_failures

    def __bool__(self):
        return self.passed

    def lines(self) -> list[str]:
        out = list(self.errors)
        for rid, pts in sorted(self.containment_failures.items()):
            out.append(f"containment: region {rid} excludes points {pts[:10]}"
                       + (" ..." if len(pts) > 10 else ""))
        return out


def _structure(g: SprawlGraph, rep: ValidationReport) -> bool:
    n, nr = g.n, len(g.regions)
    for sk, si, dk, di, neg in g.stray_edges:
        rep.errors.append(f"bipartiteness: edge {sk}{si} -> {dk}{di} joins two {sk} nodes"
                          if sk == dk else f"bipartiteness: malformed edge {sk}{si} -> {dk}{di}")
    ok = not rep.errors
    for u, kids in enumerate(g.point_children):
        for rid in kids:
            if not 0 <= rid < nr:
                rep.errors.append(f"point {u} has a child region {rid} that does not exist")
                ok = False
    for rid, R in enumerate(g.regions):
        for v in (*R.pos, *R.neg):
            if not 0 <= v < n:
                rep.errors.append(f"region {rid} has a child point {v} that does not exist")
                ok = False
    for u in g.roots:
        if not 0 <= u < n:
            rep.errors.append(f"root {u} does not exist")
            ok = False
    if not ok:
        return False

    for rid, R in enumerate(g.regions):
        if len(set(R.parents)) != len(R.parents):
            rep.errors.append(f"parents: region {rid} repeats a focus")
        for f in R.parents:
            if g.point_children[f].count(rid) != 1:
                rep.errors.append(f"parents: region {rid} has focus {f} but is not listed once among its children")
    for u, kids in enumerate(g.point_children):
        for rid in kids:
            if u not in g.regions[rid].parents:
                rep.errors.append(f"parents: point {u} lists region {rid} whose foci are {list(g.regions[rid].parents)}")

    # positive-edge acyclicity (Kahn over points + regions)
    indeg = [0] * (n + nr)
    for u, kids in enumerate(g.point_children):
        for rid in kids:
            indeg[n + rid] += 1
    for R in g.regions:
        for v in R.pos:
            indeg[v] += 1
    queue = deque(i for i, d in enumerate(indeg) if d == 0)
    seen = 0
    while queue:
        i = queue.popleft()
        seen += 1
        succ = g.point_children[i] if i < n else g.regions[i - n].pos
        off = n if i < n else 0
        for j in succ:
            indeg[j + off] -= 1
            if indeg[j + off] == 0:
                queue.append(j + off)
    if seen != n + nr:
        rep.errors.append(f"acyclicity: {n + nr - seen} nodes lie on or behind a positive cycle")

    # reachability: a region is reachable once all its parents are
    reached = [False] * n
    waiting = [len(R.parents) for R in g.regions]
    queue = deque()
    for u in g.roots:
        if not reached[u]:
            reached[u] = True
            queue.append(u)
    while queue:
        u = queue.popleft()
        for rid in g.point_children[u]:
            waiting[rid] -= 1
            if waiting[rid] == 0:
                for v in g.regions[rid].pos:
                    if not reached[v]:
                        reached[v] = True
                        queue.append(v)
    missing = [u for u in range(n) if not reached[u]]
    if missing:
        rep.errors.append(f"reachability: {len(missing)} points unreachable from roots, e.g. {missing[:10]}")
    return not rep.errors


def _audit(g: SprawlGraph, rep: ValidationReport, metric: CountedMetric):
    indeg = [0] * g.n
    for R in g.regions:
        for v in R.pos:
            indeg[v] += 1
    memo: dict[tuple[int, int], float] = {}

    def d(f, u):
        key = (f, u) if f < u else (u, f)
        if key not in memo:
            memo[key] = metric(g.payloads[f], g.payloads[u])
        return memo[key]

    below_cache: dict[int, list[int]] = {}

    def below(u):
        # u plus everything reachable through single-parent points
        if u in below_cache:
            return below_cache[u]
        out, stack = [], [u]
        while stack:
            v = stack.pop()
            out.append(v)
            for rid in g.point_children[v]:
                for w in g.regions[rid].pos:
                    if indeg[w] == 1:
                        stack.append(w)
        below_cache[u] = out
        return out

    for rid, R in enumerate(g.regions):
        covered = set()
        for v in R.pos:
            if indeg[v] == 1:
                covered.update(below(v))
        for v in R.neg:
            covered.update(below(v))
        bad = [u for u in sorted(covered)
               if not member(R.ambit, [d(f, u) for f in R.parents])]
        if bad:
            rep.containment_failures[rid] = bad


def _audit_table(g: SprawlGraph, rep: ValidationReport, metric: CountedMetric, sample: int = 32):
    D = g.table.matrix
    if D.shape != (g.n, g.n):
        rep.errors.append(f"pivot table: shape {D.shape} for {g.n} points")
        return
    if not np.array_equal(D, D.T) or np.any(np.diag(D) != 0):
        rep.errors.append("pivot table: matrix is not symmetric with a zero diagonal")
    step = max(1, g.n // sample)
    for i in range(0, g.n, step):
        j = (i * 7 + 3) % g.n
        if D[i, j] != metric(g.payloads[i], g.payloads[j]):
            rep.errors.append(f"pivot table: entry ({i}, {j}) disagrees with the metric")


def validate(g: SprawlGraph, audit: bool = True, metric: CountedMetric | None = None) -> ValidationReport:
    """Check ``g``; on success the graph is marked validated for searching."""
    rep = ValidationReport()
    if _structure(g, rep) and audit:
        metric = metric.fresh() if metric is not None else CountedMetric(g.metric)
        if g.table is not None:
            _audit_table(g, rep, metric)
        _audit(g, rep, metric)
        rep.audit_distances = metric.calls
    g.validated = rep.passed
    return rep
