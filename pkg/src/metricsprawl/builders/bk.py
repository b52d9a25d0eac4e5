from __future__ import annotations

from ..ambit import sphere
from ..errors import InvalidInputError
from ..metrics import CountedMetric
from ..sprawl.graph import SprawlGraph
from ._common import BuildParams, Ctx, check_data
from .trees import _deep


def build_bk_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Burkhard-Keller tree for an integer-valued metric.

    Points are inserted in dataset order.  Each node gets one zero-width
    shell per occupied child distance, in ascending distance order, leading
    to the subtree stored at that distance.  Duplicates live under distance 0.
    """
    if not m.discrete:
        raise InvalidInputError(f"a BK-tree needs a discrete metric, not {m.kind}")
    check_data(data)
    params = params or BuildParams()
    _deep(len(data))
    ctx = Ctx(data, m, params, "bk")
    branches: list[dict[int, int]] = [{} for _ in data]
    for u in range(1, len(data)):
        node = 0
        while True:
            d = int(ctx.d(node, u))
            nxt = branches[node].get(d)
            if nxt is None:
                branches[node][d] = u
                break
            node = nxt
    for node in range(len(data)):
        for d in sorted(branches[node]):
            ctx.graph.add_region(sphere(node, d), pos=[branches[node][d]], tag=f"d={d}")
    ctx.graph.add_root(0)
    return ctx.finish()
