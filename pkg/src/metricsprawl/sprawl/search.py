"""One traversal procedure for every index shape.

Range and ambit queries walk the sprawl depth-first.  kNN queries pop nodes
from a priority queue keyed by lower bounds and shrink the radius as
candidates arrive.  Graphs that carry a pivot table (the AESA family) are
delegated to :mod:`.aesa`.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from ..ambit import LinearAmbit, _general_overlap, member, normalized_rows
from ..errors import InvalidInputError, InvalidStateError
from ..metrics import EPS, INF, CountedMetric
from .graph import SprawlGraph
from .state import ELIMINATED, SEEN, UNSET, WHITE, TraversalState


@dataclass
class SearchReport:
    results: list[tuple[int, float]] = field(default_factory=list)
    distance_count: int = 0
    regions_checked: int = 0
    regions_pruned: int = 0
    points_eliminated: int = 0
    radius: float = INF
    trace: list[tuple[int, bool]] | None = None

    @property
    def ids(self) -> list[int]:
        return [u for u, _ in self.results]

    def summary(self) -> tuple:
        return (tuple(self.results), self.distance_count, self.regions_checked,
                self.regions_pruned, self.points_eliminated)


def _check_query(g: SprawlGraph, q):
    if not g.validated:
        raise InvalidStateError("graph has not passed validation")
    kind = g.payload_kind()
    if kind is None:
        return
    if kind[0] == "str":
        if not isinstance(q, type(g.payloads[0])):
            raise InvalidInputError("string index queried with a non-string object")
    elif isinstance(q, (str, bytes)) or len(q) != kind[1]:
        raise InvalidInputError(f"query does not match the index's {kind[1]}-dimensional vectors")


def _dfs(g: SprawlGraph, st: TraversalState, rep: SearchReport, visit, overlaps=None,
         s: float = 0.0):
    """Depth-first sprawl walk.

    ``visit(u)`` computes and memoizes the query distance(s) for ``u``.
    Regions are tested with ``overlaps(rid)`` when given, else with the
    ball check at radius ``s`` on ``st.dist``.
    """
    compiled = g.compiled()
    children = g.point_children
    gen = st.generation
    p_stamp, color, dist = st.p_stamp, st.color, st.dist
    r_stamp, count = st.r_stamp, st.count
    trace = rep.trace
    checked = pruned = 0

    def open_point(u):
        st.touch(u)
        color[u] = SEEN
        visit(u)
        return (True, iter(children[u]))

    for root in g.roots:
        if p_stamp[root] == gen and color[root] != WHITE:
            continue
        stack = [open_point(root)]
        while stack:
            is_point, it = stack[-1]
            if is_point:
                for rid in it:
                    foci, rows, pos, neg = compiled[rid]
                    if r_stamp[rid] != gen:
                        r_stamp[rid] = gen
                        count[rid] = 1
                    else:
                        count[rid] += 1
                    if count[rid] != len(foci):
                        continue
                    checked += 1
                    if overlaps is not None:
                        hit = overlaps(rid)
                    else:
                        hit = True
                        if len(foci) == 1:
                            z = dist[foci[0]]
                            for row, r, norm in rows:
                                if row[0] * z > r + norm * s + EPS:
                                    hit = False
                                    break
                        else:
                            z = [dist[f] for f in foci]
                            for row, r, norm in rows:
                                acc = 0.0
                                for a, zi in zip(row, z):
                                    acc += a * zi
                                if acc > r + norm * s + EPS:
                                    hit = False
                                    break
                    if trace is not None:
                        trace.append((rid, hit))
                    if hit:
                        if pos:
                            stack.append((False, iter(pos)))
                            break
                    else:
                        pruned += 1
                        for v in neg:
                            if p_stamp[v] != gen:
                                st.touch(v)
                            if color[v] == WHITE:
                                color[v] = ELIMINATED
                                st.eliminated += 1
                else:
                    stack.pop()
            else:
                for v in it:
                    if p_stamp[v] != gen or color[v] == WHITE:
                        stack.append(open_point(v))
                        break
                else:
                    stack.pop()
    rep.regions_checked += checked
    rep.regions_pruned += pruned


def _finish(rep: SearchReport, st: TraversalState, m: CountedMetric, calls0: int):
    rep.distance_count = m.calls - calls0
    rep.points_eliminated = st.eliminated
    return rep


def range_search(g: SprawlGraph, m: CountedMetric, q, s: float,
                 state: TraversalState | None = None, trace: bool = False) -> SearchReport:
    """All points within ``s`` of ``q``, sorted by id."""
    if s < 0:
        raise InvalidInputError("radius must be nonnegative")
    _check_query(g, q)
    if g.table is not None:
        from .aesa import aesa_range
        return aesa_range(g, m, q, s, trace=trace)
    st = state if state is not None else TraversalState(g)
    rep = SearchReport(radius=s, trace=[] if trace else None)
    calls0 = m.calls
    dist, payloads, compiled = st.dist, g.payloads, g.compiled()
    found = []

    def visit(u):
        d = m(q, payloads[u])
        dist[u] = d
        if d <= s:
            found.append((u, d))

    _dfs(g, st, rep, visit, s=s)
    rep.results = sorted(found)
    return _finish(rep, st, m, calls0)


def ambit_search(g: SprawlGraph, m: CountedMetric, Q: LinearAmbit,
                 state: TraversalState | None = None, trace: bool = False) -> SearchReport:
    """All points inside the query ambit ``Q`` (whose foci are query objects).

    Each visited point is compared with every query focus; a region is
    pruned using the cross-distance bound between its foci and ``Q``'s.
    Reported distances are the value of ``Q``'s first row at the point.
    """
    for qf in Q.foci:
        _check_query(g, qf)
    if g.table is not None:
        from .aesa import aesa_ambit
        return aesa_ambit(g, m, Q, trace=trace)
    st = state if state is not None else TraversalState(g)
    rep = SearchReport(radius=Q.radii[0], trace=[] if trace else None)
    calls0 = m.calls
    dist, payloads, compiled = st.dist, g.payloads, g.compiled()
    qrows = normalized_rows(Q)
    rrows_cache: dict[int, list] = {}
    first = Q.coeffs[0]
    found = []

    def visit(u):
        y = [m(qf, payloads[u]) for qf in Q.foci]
        dist[u] = y
        if member(Q, y):
            found.append((u, sum(c * v for c, v in zip(first, y))))

    def overlaps(rid):
        if rid not in rrows_cache:
            rrows_cache[rid] = normalized_rows(g.regions[rid].ambit)
        Z = [dist[f] for f in compiled[rid][0]]
        return _general_overlap(rrows_cache[rid], qrows, Z)

    _dfs(g, st, rep, visit, overlaps)
    rep.results = sorted(found)
    return _finish(rep, st, m, calls0)


def knn_search(g: SprawlGraph, m: CountedMetric, q, k: int, heuristic: str | None = None,
               state: TraversalState | None = None, trace: bool = False) -> SearchReport:
    """The ``k`` nearest points, sorted by (distance, id).

    Best-first: a point's priority is the larger of (a) the smallest lower
    bound among regions that discovered it and (b) the largest lower bound
    among regions that failed to eliminate it.  Ties go to the point first
    enqueued.  The search stops once the best pending priority exceeds the
    current k-th distance.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    _check_query(g, q)
    if g.table is not None:
        from .aesa import aesa_knn
        return aesa_knn(g, m, q, k, heuristic=heuristic, trace=trace)
    st = state if state is not None else TraversalState(g)
    rep = SearchReport(trace=[] if trace else None)
    calls0 = m.calls
    compiled, children, payloads = g.compiled(), g.point_children, g.payloads
    color, dist, disc, elim, seq = st.color, st.dist, st.disc, st.elim, st.seq
    heap = st.queue
    gen, p_stamp, r_stamp, rcount = st.generation, st.p_stamp, st.r_stamp, st.count
    trace = rep.trace
    checked = pruned = 0
    best: list[tuple[float, int]] = []  # max-heap on (distance, id) via negation
    s = INF
    counter = 0

    def discover(v, lb):
        nonlocal counter
        st.touch(v)
        if color[v] != WHITE:
            return
        if disc[v] == UNSET:
            counter += 1
            seq[v] = counter
        elif lb >= disc[v]:
            return
        old = disc[v] if disc[v] > elim[v] else elim[v]
        disc[v] = lb
        new = lb if lb > elim[v] else elim[v]
        if new != old:
            heapq.heappush(heap, (new, seq[v], v))

    for root in g.roots:
        discover(root, 0.0)

    while heap:
        p, _, u = heapq.heappop(heap)
        if color[u] != WHITE or p != (disc[u] if disc[u] > elim[u] else elim[u]):
            continue
        if p > s + EPS:
            break
        color[u] = SEEN
        d = m(q, payloads[u])
        dist[u] = d
        if len(best) < k:
            heapq.heappush(best, (-d, -u))
        elif (d, u) < (-best[0][0], -best[0][1]):
            heapq.heapreplace(best, (-d, -u))
        if len(best) == k:
            s = -best[0][0]
        for rid in children[u]:
            foci, rows, pos, neg = compiled[rid]
            if r_stamp[rid] != gen:
                r_stamp[rid] = gen
                rcount[rid] = 1
            else:
                rcount[rid] += 1
            if rcount[rid] != len(foci):
                continue
            checked += 1
            lb, hit = 0.0, True
            if len(foci) == 1:
                z = dist[foci[0]]
                for row, r, norm in rows:
                    acc = row[0] * z
                    if acc > r + norm * s + EPS:
                        hit = False
                    v = (acc - r) / norm
                    if v > lb:
                        lb = v
            else:
                z = [dist[f] for f in foci]
                for row, r, norm in rows:
                    acc = 0.0
                    for a, zi in zip(row, z):
                        acc += a * zi
                    if acc > r + norm * s + EPS:
                        hit = False
                    v = (acc - r) / norm
                    if v > lb:
                        lb = v
            if trace is not None:
                trace.append((rid, hit))
            if hit:
                for v in pos:
                    discover(v, lb)
                for v in neg:
                    if p_stamp[v] != gen:
                        st.touch(v)
                    if color[v] == WHITE and lb > elim[v]:
                        old = disc[v] if disc[v] > elim[v] else elim[v]
                        elim[v] = lb
                        if disc[v] != UNSET and lb > old:
                            heapq.heappush(heap, (lb, seq[v], v))
            else:
                pruned += 1
                for v in neg:
                    if p_stamp[v] != gen:
                        st.touch(v)
                    if color[v] == WHITE:
                        color[v] = ELIMINATED
                        st.eliminated += 1

    rep.regions_checked, rep.regions_pruned = checked, pruned
    st.radius = s
    rep.radius = s
    rep.results = [(u, d) for d, u in sorted((-nd, -nu) for nd, nu in best)]
    return _finish(rep, st, m, calls0)

