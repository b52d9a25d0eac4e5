"""Linear-scan ground truth, independent of the sprawl machinery."""
from __future__ import annotations

from typing import Sequence

from ..metrics import EPS, CountedMetric
from .workload import AmbitQuery, KnnQuery, RangeQuery


def oracle(points: Sequence, metric: CountedMetric, query) -> list[tuple[int, float]]:
    """Exhaustive answer: range and ambit results by id, kNN by (distance, id)."""
    if isinstance(query, RangeQuery):
        out = []
        for u, p in enumerate(points):
            d = metric(query.obj, p)
            if d <= query.radius:
                out.append((u, d))
        return out
    if isinstance(query, KnnQuery):
        scored = sorted((metric(query.obj, p), u) for u, p in enumerate(points))
        return [(u, d) for d, u in scored[: query.k]]
    if isinstance(query, AmbitQuery):
        A = query.ambit
        out = []
        for u, p in enumerate(points):
            y = [metric(f, p) for f in A.foci]
            rows = [sum(a * v for a, v in zip(row, y)) for row in A.coeffs]
            if all(val <= r + EPS for val, r in zip(rows, A.radii)):
                out.append((u, rows[0]))
        return out
    raise TypeError(f"unsupported query {query!r}")


def agrees(query, results: list[tuple[int, float]], expected: list[tuple[int, float]]) -> bool:
    """Id sets for range/ambit, distance multisets for kNN."""
    if isinstance(query, KnnQuery):
        return sorted(d for _, d in results) == sorted(d for _, d in expected)
    return sorted(u for u, _ in results) == sorted(u for u, _ in expected)
