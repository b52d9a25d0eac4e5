"""Query workloads with radii calibrated to a target selectivity."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from ..ambit import LinearAmbit, ellipse, hyperplane
from ..errors import InvalidInputError
from ..metrics import CountedMetric
from .data import Dataset


@dataclass(frozen=True)
class RangeQuery:
    obj: object
    radius: float
    mode = "range"


@dataclass(frozen=True)
class KnnQuery:
    obj: object
    k: int
    mode = "knn"


@dataclass(frozen=True)
class AmbitQuery:
    ambit: LinearAmbit
    mode = "ambit"


Query = Union[RangeQuery, KnnQuery, AmbitQuery]


@dataclass
class Workload:
    queries: list = field(default_factory=list)
    seed: int = 0


DEFAULTS = {"range": 100, "knn": 50, "k": 10, "selectivity": 0.01, "hyperplane": 0, "ellipse": 0}


def parse_workload_spec(spec: str) -> dict:
    """``"range=100,knn=50,k=10,selectivity=0.01,hyperplane=0,ellipse=0"``; omitted keys default."""
    out = dict(DEFAULTS)
    for part in filter(None, (p.strip() for p in spec.split(","))):
        key, eq, val = part.partition("=")
        if not eq or key not in DEFAULTS:
            raise InvalidInputError(f"bad workload item {part!r}; keys are {sorted(DEFAULTS)}")
        try:
            out[key] = float(val) if key == "selectivity" else int(val)
        except ValueError:
            raise InvalidInputError(f"bad value in workload item {part!r}") from None
    if not 0 < out["selectivity"] <= 1:
        raise InvalidInputError("selectivity must be in (0, 1]")
    return out


def perturb(ds: Dataset, rng: random.Random, scale: float):
    """A query near a random data point: Gaussian jitter for vectors, one edit for strings."""
    base = ds.points[rng.randrange(len(ds.points))]
    if ds.kind == "vectors":
        return tuple(x + rng.gauss(0.0, scale) for x in base)
    alphabet = sorted({c for w in ds.points for c in w}) or ["a"]
    w = list(base)
    op = rng.randrange(3) if w else 1
    i = rng.randrange(len(w) + (op == 1)) if (w or op == 1) else 0
    if op == 0:
        w[i] = rng.choice(alphabet)
    elif op == 1:
        w.insert(i, rng.choice(alphabet))
    else:
        del w[i]
    return "".join(w)


def calibrate(values: list[float], selectivity: float) -> float:
    return float(np.quantile(np.asarray(values), selectivity, method="lower"))


def make_workload(ds: Dataset, metric: CountedMetric, spec: str | dict = "", seed: int = 0,
                  sample: int = 400) -> Workload:
    """Generate queries for ``ds``.

    The range radius is the ``selectivity`` quantile of distances between
    the range queries and a sample of data points, so a typical query
    returns that fraction of the data.  Calibration distances use a private
    counter.
    """
    cfg = parse_workload_spec(spec) if isinstance(spec, str) else {**DEFAULTS, **spec}
    if not ds.points:
        raise InvalidInputError("cannot build a workload for an empty dataset")
    rng = random.Random(seed)
    m = metric.fresh()
    scale = 0.0
    if ds.kind == "vectors":
        arr = np.asarray(ds.points)
        scale = 0.01 * float(arr.std(axis=0).mean()) if len(arr) > 1 else 0.01
    pts = ds.points
    picks = [pts[rng.randrange(len(pts))] for _ in range(min(sample, len(pts)))]
    wl = Workload(seed=seed)

    objs = [perturb(ds, rng, scale) for _ in range(cfg["range"])]
    if objs:
        dists = [m(q, p) for q in objs[:25] for p in picks]
        s = calibrate(dists, cfg["selectivity"])
        wl.queries += [RangeQuery(q, s) for q in objs]
    wl.queries += [KnnQuery(perturb(ds, rng, scale), cfg["k"]) for _ in range(cfg["knn"])]
    for _ in range(cfg["hyperplane"]):
        q1, q2 = perturb(ds, rng, scale), perturb(ds, rng, scale)
        wl.queries.append(AmbitQuery(hyperplane(q1, q2, 0.0)))
    pairs = [(perturb(ds, rng, scale), perturb(ds, rng, scale)) for _ in range(cfg["ellipse"])]
    if pairs:
        sums = [m(a, p) + m(b, p) for a, b in pairs[:25] for p in picks]
        r = calibrate(sums, cfg["selectivity"])
        wl.queries += [AmbitQuery(ellipse(a, b, r)) for a, b in pairs]
    return wl
