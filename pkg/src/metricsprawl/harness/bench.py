"""Benchmark runs: build each index, run a workload, count distances."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from ..builders import BuildParams, build
from ..errors import InvalidInputError
from ..metrics import CountedMetric
from ..sprawl import ambit_search, knn_search, range_search
from ..sprawl.graph import SprawlGraph
from .data import Dataset
from .oracle import agrees, oracle
from .workload import AmbitQuery, KnnQuery, RangeQuery, Workload

FIELDS = ("builder", "params", "query_id", "mode", "result_size", "distance_count",
          "build_distances", "correct", "wall_time", "error")

PARAM_KEYS = {
    "arity": "arity", "pivots": "pivot_count", "pivot_count": "pivot_count", "rho": "shell_width",
    "shell_width": "shell_width", "leaf_cap": "leaf_capacity", "leaf-cap": "leaf_capacity",
    "leaf_capacity": "leaf_capacity", "seed": "seed", "heuristic": "heuristic",
    "mode": "laesa_mode", "laesa_mode": "laesa_mode", "switch": "piaesa_switch",
    "piaesa_switch": "piaesa_switch", "tight": "tight",
}


@dataclass
class BenchRecord:
    builder: str
    params: dict
    query_id: int
    mode: str
    result_size: int = 0
    distance_count: int = 0
    build_distances: int = 0
    correct: bool | None = None
    wall_time: float = 0.0
    error: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class IndexSpec:
    kind: str
    params: BuildParams = field(default_factory=BuildParams)

    @property
    def label(self) -> str:
        return self.kind


def parse_index_specs(text: str, base: BuildParams | None = None) -> list[IndexSpec]:
    """``"vp,gnat:arity=4,laesa:pivots=16:mode=discover"`` -> index specs."""
    base = base or BuildParams()
    out = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        kind, *opts = item.split(":")
        kw = base.to_dict()
        for opt in opts:
            key, eq, val = opt.partition("=")
            if not eq or key not in PARAM_KEYS:
                raise InvalidInputError(f"bad index option {opt!r} in {item!r}")
            name = PARAM_KEYS[key]
            if name in ("heuristic", "laesa_mode"):
                kw[name] = val
            elif name == "shell_width":
                kw[name] = float(val)
            elif name == "tight":
                kw[name] = val.lower() in ("1", "true", "yes")
            else:
                kw[name] = int(val)
        out.append(IndexSpec(kind, BuildParams(**kw)))
    return out


def run_query(g: SprawlGraph, m: CountedMetric, query, heuristic: str | None = None):
    if isinstance(query, RangeQuery):
        return range_search(g, m, query.obj, query.radius)
    if isinstance(query, KnnQuery):
        return knn_search(g, m, query.obj, query.k, heuristic=heuristic)
    if isinstance(query, AmbitQuery):
        return ambit_search(g, m, query.ambit)
    raise InvalidInputError(f"unsupported query {query!r}")


def run_bench(ds: Dataset, metric: CountedMetric, indexes: Sequence[IndexSpec], workload: Workload,
              verify: bool = False) -> Iterator[BenchRecord]:
    """One record per (index, query), in index order then workload order.

    Each query gets a fresh counter.  A failing build or query is recorded
    with ``error`` set and the run moves on.
    """
    truth: dict[int, list] = {}
    if verify:
        om = metric.fresh()
        truth = {i: oracle(ds.points, om, q) for i, q in enumerate(workload.queries)}
    for spec in indexes:
        params = spec.params.to_dict()
        try:
            g = build(spec.kind, ds.points, metric, spec.params)
        except Exception as e:  # noqa: BLE001 - record and continue
            for i, q in enumerate(workload.queries):
                yield BenchRecord(spec.label, params, i, q.mode, correct=False if verify else None,
                                  error=f"build: {type(e).__name__}: {e}")
            continue
        for i, q in enumerate(workload.queries):
            m = metric.fresh()
            rec = BenchRecord(spec.label, params, i, q.mode, build_distances=g.build_distances)
            t0 = time.perf_counter()
            try:
                rep = run_query(g, m, q)
            except Exception as e:  # noqa: BLE001
                rec.error = f"{type(e).__name__}: {e}"
                rec.correct = False if verify else None
            else:
                rec.wall_time = time.perf_counter() - t0
                rec.result_size = len(rep.results)
                rec.distance_count = rep.distance_count
                if verify:
                    rec.correct = agrees(q, rep.results, truth[i])
            yield rec
