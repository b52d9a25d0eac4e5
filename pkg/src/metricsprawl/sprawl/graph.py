"""The sprawl: a bipartite digraph of point nodes and region nodes.

Point ``u`` has an ordered list of child regions.  A region's parents are
exactly its ambit's foci.  A region has positive children (discovered when
the region may overlap the query) and negative children (eliminated when it
cannot).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..ambit import LinearAmbit
from ..errors import InvalidInputError


@dataclass
class Region:
    ambit: LinearAmbit
    pos: list[int] = field(default_factory=list)
    neg: list[int] = field(default_factory=list)
    tag: str = ""

    @property
    def parents(self) -> tuple[int, ...]:
        return self.ambit.foci


@dataclass
class PivotTable:
    """Full distance matrix standing in for AESA's n^2 sphere regions.

    Row ``u`` of ``matrix`` plays the role of the zero-width shells around
    ``u`` with negative edges to every other point.
    """

    matrix: np.ndarray
    heuristic: str = "lb_sum"
    pivot_order: list[int] = field(default_factory=list)
    switch: int = 0


class SprawlGraph:
    def __init__(self, metric: str, payloads: Sequence):
        self.metric = metric
        self.payloads = list(payloads)
        self.point_children: list[list[int]] = [[] for _ in self.payloads]
        self.regions: list[Region] = []
        self.roots: list[int] = []
        self.table: PivotTable | None = None
        self.build_distances = 0
        self.builder = ""
        self.params: dict = {}
        # edges that break bipartiteness; only hand-made or loaded graphs have them
        self.stray_edges: list[tuple[str, int, str, int, bool]] = []
        self.validated = False
        self._compiled = None

    @property
    def n(self) -> int:
        return len(self.payloads)

    def __repr__(self):
        return (f"SprawlGraph({self.builder or 'custom'}, n={self.n}, "
                f"regions={len(self.regions)}, roots={len(self.roots)})")

    def _touch(self):
        self.validated = False
        self._compiled = None

    def _check_point(self, u: int):
        if not 0 <= u < self.n:
            raise InvalidInputError(f"no point {u}")

    def add_region(self, ambit: LinearAmbit, pos: Sequence[int] = (), neg: Sequence[int] = (),
                   tag: str = "") -> int:
        for f in ambit.foci:
            self._check_point(f)
        for u in (*pos, *neg):
            self._check_point(u)
        rid = len(self.regions)
        self.regions.append(Region(ambit, list(pos), list(neg), tag))
        for f in ambit.foci:
            self.point_children[f].append(rid)
        self._touch()
        return rid

    def add_child(self, rid: int, u: int, negative: bool = False):
        self._check_point(u)
        (self.regions[rid].neg if negative else self.regions[rid].pos).append(u)
        self._touch()

    def add_root(self, u: int):
        self._check_point(u)
        self.roots.append(u)
        self._touch()

    def add_edge(self, src: tuple[str, int], dst: tuple[str, int], negative: bool = False):
        """Add an arbitrary typed edge; ``("p", i)`` is a point, ``("r", j)`` a region."""
        (sk, si), (dk, di) = src, dst
        if sk == "p" and dk == "r":
            self.point_children[si].append(di)
        elif sk == "r" and dk == "p":
            self.add_child(si, di, negative)
        else:
            self.stray_edges.append((sk, si, dk, di, negative))
        self._touch()

    def compiled(self):
        """Per-region tuples ``(foci, rows, pos, neg)`` for the search loops."""
        if self._compiled is None:
            self._compiled = [(R.ambit.foci, R.ambit.rows, R.pos, R.neg) for R in self.regions]
        return self._compiled

    def payload_kind(self):
        if not self.payloads:
            return None
        p = self.payloads[0]
        return ("str", None) if isinstance(p, (str, bytes)) else ("vec", len(p))
