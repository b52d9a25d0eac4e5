"""Datasets from files or seeded generators.

Generator specs look like function calls: ``uniform(dim,n)``,
``clusters(dim,n,c,sigma)`` and ``words(n)``; a trailing ``seed=...``
argument overrides the default seed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import InvalidInputError

_SPEC = re.compile(r"^\s*(uniform|clusters|words)\s*\((.*)\)\s*$")


@dataclass
class Dataset:
    kind: str  # "vectors" | "strings"
    points: list
    provenance: str

    def __len__(self):
        return len(self.points)

    @property
    def dim(self) -> int | None:
        return len(self.points[0]) if self.kind == "vectors" and self.points else None


def _parse_args(body: str) -> tuple[list[float], dict[str, float]]:
    pos, kw = [], {}
    for part in filter(None, (p.strip() for p in body.split(","))):
        key, eq, val = part.partition("=")
        try:
            if eq:
                kw[key.strip()] = float(val)
            else:
                pos.append(float(part))
        except ValueError:
            raise InvalidInputError(f"bad generator argument {part!r}") from None
    return pos, kw


def uniform(dim: int, n: int, seed: int = 0) -> list[tuple[float, ...]]:
    rng = np.random.default_rng(seed)
    return [tuple(map(float, row)) for row in rng.random((n, dim))]


def clusters(dim: int, n: int, c: int, sigma: float, seed: int = 0) -> list[tuple[float, ...]]:
    """Gaussian blobs with centers uniform in the unit cube."""
    rng = np.random.default_rng(seed)
    centers = rng.random((c, dim))
    labels = rng.integers(0, c, n)
    pts = centers[labels] + rng.normal(0.0, sigma, (n, dim))
    return [tuple(map(float, row)) for row in pts]


_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def words(n: int, seed: int = 0) -> list[str]:
    """A synthetic vocabulary: families of related words grown from random stems."""
    rng = np.random.default_rng(seed)
    vowels, consonants = "aeiou", "bcdfghjklmnprstvwz"
    suffixes = ["s", "ed", "ing", "er", "ly", "ness", "able", "ful"]

    def stem():
        length = int(rng.integers(3, 8))
        return "".join(rng.choice(list(consonants if i % 2 == 0 else vowels)) for i in range(length))

    out: list[str] = []
    seen: set[str] = set()
    base = stem()
    while len(out) < n:
        r = rng.random()
        if r < 0.15 or not out:
            base = stem()
            w = base
        elif r < 0.5:
            w = base + suffixes[int(rng.integers(len(suffixes)))]
        else:
            w = list(base)
            i = int(rng.integers(len(w)))
            w[i] = _ALPHABET[int(rng.integers(26))]
            w = "".join(w)
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def generate(spec: str, seed: int = 0) -> Dataset:
    match = _SPEC.match(spec)
    if not match:
        raise InvalidInputError(f"not a generator spec: {spec!r}")
    name, body = match.groups()
    pos, kw = _parse_args(body)
    seed = int(kw.pop("seed", seed))
    arity = {"uniform": 2, "clusters": 4, "words": 1}[name]
    if len(pos) != arity or kw:
        raise InvalidInputError(f"{name} takes {arity} positional arguments (plus seed=)")
    if name == "uniform":
        pts = uniform(int(pos[0]), int(pos[1]), seed)
    elif name == "clusters":
        pts = clusters(int(pos[0]), int(pos[1]), int(pos[2]), pos[3], seed)
    else:
        return Dataset("strings", words(int(pos[0]), seed), f"{spec.strip()} seed={seed}")
    return Dataset("vectors", pts, f"{spec.strip()} seed={seed}")


def read_vectors(path) -> Dataset:
    pts, dim = [], None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                row = tuple(float(v) for v in line.split(","))
            except ValueError:
                raise InvalidInputError(f"{path}:{lineno}: cannot parse {line!r} as numbers") from None
            if dim is None:
                dim = len(row)
            elif len(row) != dim:
                raise InvalidInputError(f"{path}:{lineno}: {len(row)} values, expected {dim}")
            pts.append(row)
    return Dataset("vectors", pts, str(path))


def read_strings(path) -> Dataset:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return Dataset("strings", [ln.rstrip("\r") for ln in lines], str(path))


def load_dataset(source: str, kind: str | None = None, seed: int = 0) -> Dataset:
    """Load ``source`` as a generator spec or a file.

    Files are read as comma-separated vectors unless ``kind`` is ``"strings"``.
    """
    if _SPEC.match(source):
        ds = generate(source, seed)
    elif not Path(source).is_file():
        raise InvalidInputError(f"no such file or generator: {source!r}")
    elif kind == "strings":
        ds = read_strings(source)
    else:
        ds = read_vectors(source)
    if kind is not None and ds.kind != kind:
        raise InvalidInputError(f"{source!r} yields {ds.kind}, but {kind} were expected")
    return ds
