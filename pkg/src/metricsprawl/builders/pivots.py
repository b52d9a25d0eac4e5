"""Pivot-table indexes: LAESA (two encodings) and the AESA family."""
from __future__ import annotations

import numpy as np

from ..ambit import cut_region, sphere
from ..errors import InvalidInputError
from ..metrics import CountedMetric
from ..sprawl.graph import PivotTable, SprawlGraph
from ._common import BuildParams, Ctx, check_data


def build_laesa(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Pivots with a table of pivot-object distances.

    ``eliminate`` mode: one sphere per (pivot, object) with a negative edge to
    the object; pivots are roots first, then every object.  ``discover``
    mode: one cut region per object with all pivots as foci and a positive
    edge to the object.  Both prune exactly when some ``|x - z| > s``.
    """
    check_data(data)
    params = params or BuildParams()
    n = len(data)
    count = 16 if params.pivot_count is None else params.pivot_count
    if count > n:
        raise InvalidInputError(f"{count} pivots requested for {n} points")
    ctx = Ctx(data, m, params, "laesa")
    g = ctx.graph
    pivots = ctx.farthest_first(range(n), count) if count else []
    chosen = set(pivots)
    objects = [u for u in range(n) if u not in chosen]
    if params.laesa_mode == "eliminate" or not pivots:
        for p in pivots:
            for u in objects:
                g.add_region(sphere(p, ctx.d(p, u)), neg=[u], tag="pivot-sphere")
        for u in [*pivots, *objects]:
            g.add_root(u)
    else:
        for u in objects:
            x = [ctx.d(p, u) for p in pivots]
            g.add_region(cut_region(pivots, [(v, v) for v in x]), pos=[u], tag="pivot-cut")
        for p in pivots:
            g.add_root(p)
    return ctx.finish()


def _farthest_order(D: np.ndarray, k: int, start: int) -> list[int]:
    order = [start]
    gap = D[start].copy()
    while len(order) < k:
        nxt = int(gap.argmax())
        order.append(nxt)
        np.minimum(gap, D[nxt], out=gap)
    return order


def build_aesa(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Complete distance matrix; queries are answered by :mod:`metricsprawl.sprawl.aesa`.

    ``heuristic`` picks the next point by the smallest sum (``lb_sum``) or
    max (``lb_max``) of triangle bounds.  With ``piaesa_switch > 0`` the first
    selections follow a farthest-first pivot order of ``pivot_count`` pivots.
    """
    check_data(data)
    params = params or BuildParams()
    n = len(data)
    ctx = Ctx(data, m, params, "aesa")
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = ctx.metric(data[i], data[j])
    count = params.pivot_count or 0
    if params.piaesa_switch and not count:
        count = params.piaesa_switch
    count = min(count, n)
    order = _farthest_order(D, count, ctx.rng.randrange(n)) if count else []
    g = ctx.graph
    g.table = PivotTable(D, params.heuristic, order, min(params.piaesa_switch, len(order)))
    for u in range(n):
        g.add_root(u)
    return ctx.finish()
