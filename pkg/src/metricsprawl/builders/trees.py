"""Ball trees (BS-tree, multiway), the M-tree translation, the PM-tree and VP-trees."""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Sequence

from ..ambit import ball, inverted_ball, shell_from_bounds
from ..metrics import CountedMetric
from ..sprawl.graph import SprawlGraph
from ._common import BuildParams, Ctx, check_data


def _deep(n: int):
    # degenerate (tied) data can make trees as deep as the dataset
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))


@dataclass
class Node:
    center: int
    kids: list["Node"] = field(default_factory=list)

    def members(self) -> list[int]:
        out, stack = [], [self]
        while stack:
            node = stack.pop()
            out.append(node.center)
            stack.extend(node.kids)
        return out

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.kids))


def multiway_topology(ctx: Ctx, ids: Sequence[int]) -> Node:
    """Recursive partition shared by the ball tree, M-tree and PM-tree.

    A node keeps at most ``leaf_capacity`` remaining points as direct leaf
    children; otherwise it picks ``arity`` far-apart seeds and splits the rest
    evenly among them.
    """
    arity, cap = ctx.params.arity, ctx.params.leaf_capacity

    def grow(center: int, rest: list[int]) -> Node:
        if len(rest) <= cap:
            return Node(center, [Node(u) for u in rest])
        seeds = ctx.farthest_first(rest, arity)
        chosen = set(seeds)
        groups = ctx.balanced_partition(seeds, [u for u in rest if u not in chosen])
        return Node(center, [grow(c, grp) for c, grp in zip(seeds, groups)])

    ids = list(ids)
    root = ctx.farthest_first(ids, 1)[0]
    return grow(root, [u for u in ids if u != root])


def _emit_balls(ctx: Ctx, top: Node):
    for node in top.walk():
        if node.kids:
            r = max(ctx.d(node.center, u) for u in node.members())
            ctx.graph.add_region(ball(node.center, r), pos=[k.center for k in node.kids], tag="ball")


def build_ball_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Each internal point owns one covering ball whose children are its child points."""
    check_data(data)
    params = params or BuildParams()
    _deep(len(data))
    ctx = Ctx(data, m, params, "ball")
    top = multiway_topology(ctx, range(len(data)))
    _emit_balls(ctx, top)
    ctx.graph.add_root(top.center)
    return ctx.finish()


def build_bs_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    params = params or BuildParams()
    if params.arity != 2:
        params = BuildParams(**{**params.to_dict(), "arity": 2})
    g = build_ball_tree(data, m, params)
    g.builder = "bs"
    return g


def build_m_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Ball-tree topology, but each child gets its own tight shell around the parent.

    The shell bounds are the min and max distance from the parent to the
    child's subtree, which subsumes both the covering ball and the M-tree's
    parent-distance pre-filter.
    """
    check_data(data)
    params = params or BuildParams()
    _deep(len(data))
    ctx = Ctx(data, m, params, "mtree")
    top = multiway_topology(ctx, range(len(data)))
    for node in top.walk():
        for kid in node.kids:
            ds = [ctx.d(node.center, u) for u in kid.members()]
            ctx.graph.add_region(shell_from_bounds(node.center, min(ds), max(ds)),
                                 pos=[kid.center], tag="shell")
    ctx.graph.add_root(top.center)
    return ctx.finish()


def build_pm_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """A ball tree plus eliminating shells around global pivots.

    For every pivot g and every subtree T there is a tight shell around g
    covering T with a negative edge to T's top point.  Pivots are drawn from
    the tree's leaves so that visiting them first expands no tree region;
    they are roots listed before the tree root.
    """
    check_data(data)
    params = params or BuildParams()
    pivots_wanted = 8 if params.pivot_count is None else params.pivot_count
    _deep(len(data))
    ctx = Ctx(data, m, params, "pmtree")
    top = multiway_topology(ctx, range(len(data)))
    nodes = list(top.walk())
    leaves = [nd.center for nd in nodes if not nd.kids and nd is not top]
    pivots = ctx.farthest_first(sorted(leaves), min(pivots_wanted, len(leaves)))
    if len(pivots) < pivots_wanted:
        others = sorted(set(range(len(data))) - set(pivots) - {top.center})
        pivots += ctx.farthest_first(others, min(pivots_wanted - len(pivots), len(others)))

    for g in pivots:
        for node in nodes:
            if node is top or node.center == g:
                continue
            ds = [ctx.d(g, u) for u in node.members()]
            ctx.graph.add_region(shell_from_bounds(g, min(ds), max(ds)), neg=[node.center],
                                 tag="pivot-shell")
    _emit_balls(ctx, top)
    for g in pivots:
        ctx.graph.add_root(g)
    ctx.graph.add_root(top.center)
    return ctx.finish()


def build_vp_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Median-split vantage-point tree: an inside ball and an outside inverted ball per node.

    With ``params.tight`` the inside radius is the largest inside distance and
    the outside radius the smallest outside distance; otherwise both use the
    median.
    """
    check_data(data)
    params = params or BuildParams()
    _deep(len(data))
    ctx = Ctx(data, m, params, "vp")
    cap = params.leaf_capacity

    def build(ids: list[int]) -> list[int]:
        if len(ids) <= cap:
            return ids
        p = ctx.vantage(ids)
        ds = sorted((ctx.d(p, u), u) for u in ids if u != p)
        r_med = ds[(len(ds) - 1) // 2][0]
        inside = [u for du, u in ds if du <= r_med]
        outside = [u for du, u in ds if du > r_med]
        r_in = max(du for du, _ in ds if du <= r_med) if params.tight else r_med
        r_out = ds[len(inside)][0] if (params.tight and outside) else r_med
        in_entries = build(inside)
        out_entries = build(outside) if outside else []
        ctx.graph.add_region(ball(p, r_in), pos=in_entries, tag="inside")
        if outside:
            ctx.graph.add_region(inverted_ball(p, r_out), pos=out_entries, tag="outside")
        return [p]

    for u in build(list(range(len(data)))):
        ctx.graph.add_root(u)
    return ctx.finish()
