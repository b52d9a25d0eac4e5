"""Multi-focus partitions: GNAT cut regions and generalized-hyperplane / Voronoi trees."""
from __future__ import annotations

from ..ambit import LinearAmbit, cut_region, voronoi_cell
from ..errors import InvalidInputError
from ..metrics import CountedMetric
from ..sprawl.graph import SprawlGraph
from ._common import BuildParams, Ctx, check_data
from .trees import _deep


def build_voronoi_node(foci, foci_count: int | None = None) -> list[LinearAmbit]:
    """One Voronoi cell per focus: rows ``e_i - e_j`` for every other focus j, radii 0."""
    foci = list(foci)
    if foci_count is not None and foci_count != len(foci):
        raise InvalidInputError(f"{len(foci)} foci given, {foci_count} expected")
    if len(foci) < 2:
        raise InvalidInputError("a Voronoi node needs at least two foci")
    return [voronoi_cell(foci, i) for i in range(len(foci))]


def _split(ctx: Ctx, ids: list[int]) -> tuple[list[int], list[list[int]]]:
    centers = ctx.farthest_first(ids, ctx.params.arity)
    chosen = set(centers)
    return centers, ctx.nearest_partition(centers, [u for u in ids if u not in chosen])


def build_gnat(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Geometric near-neighbor access tree.

    Each node picks ``arity`` split points and sends every other point to its
    nearest split point.  The group of split point i becomes a cut region
    whose foci are all split points: for each focus, the tight [min, max]
    distance to the group's points.
    """
    check_data(data)
    params = params or BuildParams()
    _deep(len(data))
    ctx = Ctx(data, m, params, "gnat")

    def build(ids: list[int]) -> list[int]:
        if len(ids) <= params.leaf_capacity:
            return ids
        centers, groups = _split(ctx, ids)
        for grp in groups:
            if not grp:
                continue
            bounds = []
            for c in centers:
                ds = [ctx.d(c, u) for u in grp]
                bounds.append((min(ds), max(ds)))
            ctx.graph.add_region(cut_region(centers, bounds), pos=build(grp), tag="cut")
        return centers

    for u in build(list(range(len(data)))):
        ctx.graph.add_root(u)
    return ctx.finish()


def build_voronoi_tree(data, m: CountedMetric, params: BuildParams | None = None,
                       name: str = "voronoi") -> SprawlGraph:
    """Each node splits its points into the Voronoi cells of ``arity`` foci."""
    check_data(data)
    params = params or BuildParams()
    _deep(len(data))
    ctx = Ctx(data, m, params, name)

    def build(ids: list[int]) -> list[int]:
        if len(ids) <= params.leaf_capacity:
            return ids
        centers, groups = _split(ctx, ids)
        if len(centers) < 2:
            return ids
        for cell, grp in zip(build_voronoi_node(centers), groups):
            if grp:
                ctx.graph.add_region(cell, pos=build(grp), tag="cell")
        return centers

    for u in build(list(range(len(data)))):
        ctx.graph.add_root(u)
    return ctx.finish()


def build_gh_tree(data, m: CountedMetric, params: BuildParams | None = None) -> SprawlGraph:
    """Generalized hyperplane tree: two foci per node, points go to the closer one (ties left)."""
    params = params or BuildParams()
    if params.arity != 2:
        params = BuildParams(**{**params.to_dict(), "arity": 2})
    return build_voronoi_tree(data, m, params, name="gh")
