from __future__ import annotations

from ..ambit import ball, inverted_ball, shell_from_bounds
from ..metrics import CountedMetric
from ..sprawl.graph import SprawlGraph
from ._common import BuildParams, Ctx, check_data
from .trees import _deep, multiway_topology

MAX_TREES = 64


def build_vp_forest(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Excluded-middle vantage-point forest.

    Each node splits at the median distance ``r`` into an inner ball
    (``<= r - rho``), a middle shell and an outer inverted ball
    (``>= r + rho``).  Points strictly inside a shell are set aside and form
    the next tree, whose top points become the children of every shell
    region of the previous tree.  After ``MAX_TREES`` trees any residue is
    stored as a ball tree.
    """
    check_data(data)
    params = params or BuildParams()
    rho = params.shell_width
    _deep(len(data))
    ctx = Ctx(data, m, params, "vpforest")
    g = ctx.graph
    cap = params.leaf_capacity

    def build(ids: list[int], deferred: list[int], shells: list[int]) -> list[int]:
        if len(ids) <= cap:
            return ids
        p = ctx.vantage(ids)
        ds = sorted((ctx.d(p, u), u) for u in ids if u != p)
        r_med = ds[(len(ds) - 1) // 2][0]
        lo, hi = r_med - rho, r_med + rho
        inner = [u for du, u in ds if du <= lo]
        outer = [u for du, u in ds if du >= hi and du > lo]
        middle = [u for du, u in ds if lo < du < hi]
        deferred.extend(middle)
        in_entries = build(inner, deferred, shells) if inner else []
        out_entries = build(outer, deferred, shells) if outer else []
        if inner:
            g.add_region(ball(p, lo), pos=in_entries, tag="inner")
        if middle:
            shells.append(g.add_region(shell_from_bounds(p, max(lo, 0.0), hi), tag="shell"))
        if outer:
            g.add_region(inverted_ball(p, hi), pos=out_entries, tag="outer")
        return [p]

    remaining = list(range(len(data)))
    parents: list[int] = []
    for tree in range(MAX_TREES):
        deferred: list[int] = []
        shells: list[int] = []
        entries = build(remaining, deferred, shells)
        if tree == 0:
            for u in entries:
                g.add_root(u)
        for rid in parents:
            for u in entries:
                g.add_child(rid, u)
        parents, remaining = shells, sorted(deferred)
        if not remaining:
            break
    else:
        top = multiway_topology(ctx, remaining)
        for node in top.walk():
            if node.kids:
                r = max(ctx.d(node.center, u) for u in node.members())
                g.add_region(ball(node.center, r), pos=[k.center for k in node.kids], tag="residue")
        for rid in parents:
            g.add_child(rid, top.center)
    return ctx.finish()
