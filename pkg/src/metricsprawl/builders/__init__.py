"""Classic metric indexes expressed as sprawl configurations.

Every builder has the signature ``build(data, metric, params) -> SprawlGraph``
and is deterministic given ``params.seed``.  Distances spent while building
are recorded on the graph as ``build_distances`` and never touch the
caller's counter.
"""
from __future__ import annotations

from ..metrics import CountedMetric
from ..sprawl.graph import SprawlGraph
from ._common import BuildParams, Ctx, check_data
from .bk import build_bk_tree
from .forest import build_vp_forest
from .partitions import build_gh_tree, build_gnat, build_voronoi_node, build_voronoi_tree
from .pivots import build_aesa, build_laesa
from .trees import build_ball_tree, build_bs_tree, build_m_tree, build_pm_tree, build_vp_tree


def build_linear(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """No regions at all: every point is a root, so every query scans everything."""
    check_data(data)
    ctx = Ctx(data, m, params or BuildParams(), "linear")
    for u in range(len(data)):
        ctx.graph.add_root(u)
    return ctx.finish()


BUILDERS = {
    "linear": build_linear,
    "bs": build_bs_tree,
    "ball": build_ball_tree,
    "vp": build_vp_tree,
    "mtree": build_m_tree,
    "bk": build_bk_tree,
    "gnat": build_gnat,
    "gh": build_gh_tree,
    "voronoi": build_voronoi_tree,
    "laesa": build_laesa,
    "aesa": build_aesa,
    "pmtree": build_pm_tree,
    "vpforest": build_vp_forest,
}


def build(kind: str, data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    from ..errors import InvalidInputError
    try:
        fn = BUILDERS[kind]
    except KeyError:
        raise InvalidInputError(f"unknown index kind {kind!r}; choose from {sorted(BUILDERS)}") from None
    return fn(data, m, params)


__all__ = [
    "BUILDERS", "BuildParams", "build", "build_aesa", "build_ball_tree", "build_bk_tree",
    "build_bs_tree", "build_gh_tree", "build_gnat", "build_laesa", "build_linear", "build_m_tree",
    "build_pm_tree", "build_voronoi_node", "build_voronoi_tree", "build_vp_forest", "build_vp_tree",
]
