from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import Sequence

from ..errors import InvalidInputError
from ..metrics import CountedMetric
from ..sprawl.graph import SprawlGraph
from ..sprawl.validate import validate


@dataclass
class BuildParams:
    """Knobs for every builder; each builder reads the ones it needs.

    ``pivot_count`` of None picks the builder's own default (16 for LAESA,
    8 for the PM-tree, none for AESA).
    """

    arity: int = 2
    leaf_capacity: int = 1
    pivot_count: int | None = None
    shell_width: float = 0.0
    seed: int = 0
    heuristic: str = "lb_sum"
    laesa_mode: str = "eliminate"
    piaesa_switch: int = 0
    tight: bool = True

    def __post_init__(self):
        if self.arity < 2:
            raise InvalidInputError("arity must be at least 2")
        if self.leaf_capacity < 1:
            raise InvalidInputError("leaf_capacity must be at least 1")
        if self.pivot_count is not None and self.pivot_count < 0:
            raise InvalidInputError("pivot_count must be nonnegative")
        if self.shell_width < 0:
            raise InvalidInputError("shell_width must be nonnegative")
        if self.piaesa_switch < 0:
            raise InvalidInputError("piaesa_switch must be nonnegative")
        if self.heuristic not in ("lb_sum", "lb_max"):
            raise InvalidInputError(f"unknown heuristic {self.heuristic!r}")
        if self.laesa_mode not in ("eliminate", "discover"):
            raise InvalidInputError(f"unknown LAESA mode {self.laesa_mode!r}")

    def to_dict(self) -> dict:
        return asdict(self)


class Ctx:
    """Build-time helpers: a private counted metric, a distance cache, seeded RNG."""

    def __init__(self, data: Sequence, m: CountedMetric, params: BuildParams, name: str):
        self.data = list(data)
        self.metric = m.fresh()
        self.params = params
        self.rng = random.Random(params.seed)
        self.graph = SprawlGraph(m.kind, self.data)
        self.graph.builder = name
        self.graph.params = params.to_dict()
        self._cache: dict[tuple[int, int], float] = {}

    def d(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        key = (i, j) if i < j else (j, i)
        v = self._cache.get(key)
        if v is None:
            v = self._cache[key] = self.metric(self.data[i], self.data[j])
        return v

    def farthest_first(self, ids: Sequence[int], k: int) -> list[int]:
        """Max-min sampling: random start, then repeatedly the point farthest from those chosen."""
        ids = list(ids)
        if k <= 0:
            return []
        if k >= len(ids):
            return ids
        chosen = [ids[self.rng.randrange(len(ids))]]
        gap = {u: self.d(chosen[0], u) for u in ids}
        while len(chosen) < k:
            nxt = max(ids, key=lambda u: (gap[u], -u))
            chosen.append(nxt)
            for u in ids:
                du = self.d(nxt, u)
                if du < gap[u]:
                    gap[u] = du
        return chosen

    def vantage(self, ids: Sequence[int]) -> int:
        """A point far from a random one; lowest id on ties."""
        start = ids[self.rng.randrange(len(ids))]
        return max(ids, key=lambda u: (self.d(start, u), -u))

    def nearest_partition(self, centers: Sequence[int], ids: Sequence[int]) -> list[list[int]]:
        """Assign each point to its closest center, ties to the lowest center index."""
        groups = [[] for _ in centers]
        for u in ids:
            best = min(range(len(centers)), key=lambda i: (self.d(centers[i], u), i))
            groups[best].append(u)
        return groups

    def balanced_partition(self, centers: Sequence[int], ids: Sequence[int]) -> list[list[int]]:
        """Round-robin: each center in turn claims its nearest unclaimed point.

        ``ids`` must not contain the centers; group sizes differ by at most one.
        """
        orders = [sorted(ids, key=lambda u: (self.d(c, u), u)) for c in centers]
        cursors = [0] * len(centers)
        taken: set[int] = set()
        groups = [[] for _ in centers]
        left = len(ids)
        while left:
            for i, order in enumerate(orders):
                if not left:
                    break
                while order[cursors[i]] in taken:
                    cursors[i] += 1
                u = order[cursors[i]]
                taken.add(u)
                groups[i].append(u)
                left -= 1
        return groups

    def finish(self) -> SprawlGraph:
        g = self.graph
        g.build_distances = self.metric.calls
        rep = validate(g, audit=False)
        if not rep.passed:
            raise AssertionError(f"{g.builder} produced an invalid sprawl: {rep.lines()}")
        return g


def check_data(data: Sequence):
    if len(data) == 0:
        raise InvalidInputError("cannot index an empty dataset")
