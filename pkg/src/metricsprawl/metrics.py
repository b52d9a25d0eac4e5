"""Distance functions with exact call accounting.

Every index in this package is judged by how many times it calls the metric,
so the metric object carries its own counter.  One counter per in-flight
query or benchmark; they are never shared.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .errors import InvalidInputError

Payload = Union[tuple, str, bytes]

EPS = 1e-9
INF = 1.7976931348623157e308  # largest finite float; stands in for "unbounded"

METRIC_ALIASES = {
    "l2": "euclidean",
    "euclidean": "euclidean",
    "l1": "manhattan",
    "manhattan": "manhattan",
    "levenshtein": "levenshtein",
    "edit": "levenshtein",
    "hamming": "hamming",
}
DISCRETE_METRICS = frozenset({"levenshtein", "hamming"})
STRING_METRICS = DISCRETE_METRICS


def _check_vectors(u, v):
    if isinstance(u, (str, bytes)) or isinstance(v, (str, bytes)):
        raise InvalidInputError("vector metric applied to a string payload")
    if len(u) != len(v):
        raise InvalidInputError(f"dimension mismatch: {len(u)} != {len(v)}")


def _check_strings(u, v):
    if not isinstance(u, (str, bytes)) or type(u) is not type(v):
        raise InvalidInputError("string metric needs two payloads of the same string type")


def euclidean(u: Sequence[float], v: Sequence[float]) -> float:
    _check_vectors(u, v)
    return math.dist(u, v)


def manhattan(u: Sequence[float], v: Sequence[float]) -> float:
    _check_vectors(u, v)
    return float(sum(abs(a - b) for a, b in zip(u, v)))


def levenshtein(u: str, v: str) -> int:
    """Unit-cost edit distance (insert, delete, substitute)."""
    _check_strings(u, v)
    if u == v:
        return 0
    if len(u) < len(v):
        u, v = v, u
    if not v:
        return len(u)
    previous = list(range(len(v) + 1))
    for i, cu in enumerate(u, 1):
        current = [i]
        for j, cv in enumerate(v, 1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (cu != cv)))
        previous = current
    return previous[-1]


def hamming(u: str, v: str) -> int:
    _check_strings(u, v)
    if len(u) != len(v):
        raise InvalidInputError(f"hamming needs equal lengths: {len(u)} != {len(v)}")
    return sum(a != b for a, b in zip(u, v))


BASE_METRICS: dict[str, Callable[[Payload, Payload], float]] = {
    "euclidean": euclidean,
    "manhattan": manhattan,
    "levenshtein": levenshtein,
    "hamming": hamming,
}


def canonical_metric(name: str) -> str:
    try:
        return METRIC_ALIASES[name.lower()]
    except KeyError:
        raise InvalidInputError(f"unknown metric {name!r}") from None


class CountedMetric:
    """A metric plus the number of times it has been evaluated.

    ``base`` is one of the shipped metric names (aliases such as ``l2`` are
    accepted) or any callable; callables are reported under ``name``.
    """

    def __init__(self, base: Union[str, Callable[[Payload, Payload], float]] = "euclidean",
                 name: str | None = None, discrete: bool = False):
        if callable(base):
            self._fn = base
            self.kind = name or getattr(base, "__name__", "custom")
            self.discrete = discrete
        else:
            self.kind = canonical_metric(base)
            self._fn = BASE_METRICS[self.kind]
            self.discrete = self.kind in DISCRETE_METRICS
        self.calls = 0

    def __call__(self, u: Payload, v: Payload) -> float:
        self.calls += 1
        return self._fn(u, v)

    def fresh(self) -> "CountedMetric":
        """Same distance function, new zeroed counter."""
        clone = CountedMetric.__new__(CountedMetric)
        clone._fn, clone.kind, clone.discrete, clone.calls = self._fn, self.kind, self.discrete, 0
        return clone

    def __repr__(self):
        return f"CountedMetric({self.kind!r}, calls={self.calls})"


def distance(m: CountedMetric, u: Payload, v: Payload) -> float:
    return m(u, v)


def counter_read(m: CountedMetric) -> int:
    return m.calls


def counter_reset(m: CountedMetric) -> None:
    m.calls = 0


@dataclass
class AxiomReport:
    passed: bool
    trials: int
    violation: str | None = None
    witness: tuple | None = None


def metric_axiom_check(m: CountedMetric, sample: Sequence[Payload], trials: int = 1000,
                       seed: int = 0, tol: float = EPS) -> AxiomReport:
    """Sample triples from ``sample`` and look for a metric-axiom violation.

    Checks symmetry, zero self-distance, zero distance only between equal
    payloads, and the triangle inequality (within ``tol``).  Stops at the
    first violating triple and returns it as the witness; for the triangle
    inequality the witness ``(u, v, w)`` has ``d(u, v) > d(u, w) + d(w, v)``.
    """
    if not sample:
        raise InvalidInputError("sample must be nonempty")
    rng = random.Random(seed)
    n = len(sample)
    for t in range(trials):
        u, v, w = (sample[rng.randrange(n)] for _ in range(3))
        duv, dvu = m(u, v), m(v, u)
        if duv != dvu:
            return AxiomReport(False, t + 1, "symmetry", (u, v, w))
        if m(u, u) != 0:
            return AxiomReport(False, t + 1, "identity", (u, u, u))
        if (duv == 0) != (u == v):
            return AxiomReport(False, t + 1, "indiscernibles", (u, v, w))
        if duv < 0:
            return AxiomReport(False, t + 1, "nonnegativity", (u, v, w))
        if duv > m(u, w) + m(w, v) + tol:
            return AxiomReport(False, t + 1, "triangle", (u, v, w))
    return AxiomReport(True, trials)
