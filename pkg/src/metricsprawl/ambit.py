"""Linear ambits: regions of the form ``{u : A x_u <= r}``.

``x_u`` is the pivot vector of ``u``, its distances to the ambit's foci in
order.  A k-row ambit is the conjunction of its rows.  All comparisons carry
``EPS`` of slack in the permissive direction: a borderline case is treated
as membership/overlap, which can only cost extra distance computations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import InvalidInputError
from .metrics import EPS, INF


def _as_matrix(coeffs) -> tuple[tuple[float, ...], ...]:
    rows = list(coeffs)
    if rows and not isinstance(rows[0], (list, tuple)):
        rows = [rows]
    return tuple(tuple(float(c) for c in row) for row in rows)


@dataclass(frozen=True)
class LinearAmbit:
    """``foci`` are point ids for index regions and payloads for queries."""

    foci: tuple
    coeffs: tuple[tuple[float, ...], ...]
    radii: tuple[float, ...]
    rows: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, foci: Sequence[Any], coeffs, radii):
        foci = tuple(foci)
        coeffs = _as_matrix(coeffs)
        radii = tuple(float(r) for r in (radii if isinstance(radii, (list, tuple)) else [radii]))
        if not foci or not coeffs:
            raise InvalidInputError("an ambit needs at least one focus and one row")
        if len(radii) != len(coeffs):
            raise InvalidInputError(f"{len(coeffs)} rows but {len(radii)} radii")
        for row in coeffs:
            if len(row) != len(foci):
                raise InvalidInputError(f"row of length {len(row)} for {len(foci)} foci")
            if not any(row):
                raise InvalidInputError("every row needs a nonzero coefficient")
        object.__setattr__(self, "foci", foci)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "rows", tuple(
            (row, r, sum(abs(c) for c in row)) for row, r in zip(coeffs, radii)))

    @property
    def m(self) -> int:
        return len(self.foci)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def nonneg_rows(self) -> tuple[bool, ...]:
        return tuple(all(c >= 0 for c in row) for row in self.coeffs)


def _check_len(R: LinearAmbit, x: Sequence[float]):
    if len(x) != len(R.foci):
        raise InvalidInputError(f"pivot vector of length {len(x)} for {len(R.foci)} foci")


def member(R: LinearAmbit, x: Sequence[float]) -> bool:
    _check_len(R, x)
    for row, r, _ in R.rows:
        if sum(a * xi for a, xi in zip(row, x)) > r + EPS:
            return False
    return True


def ball_overlap(R: LinearAmbit, z: Sequence[float], s: float) -> bool:
    """Can ``R`` intersect the ball of radius ``s`` whose pivot vector is ``z``?

    Row-wise ``a z <= r + |a|_1 s``.  Never returns False for intersecting
    regions; may return True for disjoint ones.
    """
    _check_len(R, z)
    if s < 0:
        raise InvalidInputError("query radius must be nonnegative")
    for row, r, norm in R.rows:
        if sum(a * zi for a, zi in zip(row, z)) > r + norm * s + EPS:
            return False
    return True


def lower_bound(R: LinearAmbit, z: Sequence[float]) -> float:
    """Smallest ball radius around the query that could reach ``R``."""
    lb = 0.0
    for row, r, norm in R.rows:
        v = (sum(a * zi for a, zi in zip(row, z)) - r) / norm
        if v > lb:
            lb = v
    return lb


def normalized_rows(A: LinearAmbit) -> list[tuple[tuple[float, ...], float, bool]]:
    """Rows scaled to unit 1-norm (radius scaled alike), with a nonnegativity flag."""
    out = []
    for row, r, norm in A.rows:
        if norm != 1.0:
            row = tuple(c / norm for c in row)
            r = r / norm
        out.append((row, r, all(c >= 0 for c in row)))
    return out


def general_overlap(R: LinearAmbit, Q: LinearAmbit, Z: Sequence[Sequence[float]]) -> bool:
    """Overlap test between a region ambit and a query ambit.

    ``Z[i][j]`` is the distance between focus i of ``R`` and focus j of ``Q``.
    Every pair of normalized rows (a, c) with a or c nonnegative must satisfy
    ``a Z c^t <= r + s``; pairs where both rows mix signs prove nothing and
    are skipped.
    """
    if len(Z) != len(R.foci) or any(len(zr) != len(Q.foci) for zr in Z):
        raise InvalidInputError("cross-distance matrix does not match the foci counts")
    return _general_overlap(normalized_rows(R), normalized_rows(Q), Z)


def _general_overlap(rrows, qrows, Z) -> bool:
    for c, s, c_nonneg in qrows:
        zc = [sum(zij * cj for zij, cj in zip(zrow, c)) for zrow in Z]
        for a, r, a_nonneg in rrows:
            if not (a_nonneg or c_nonneg):
                continue
            if sum(ai * v for ai, v in zip(a, zc)) > r + s + EPS:
                return False
    return True


# -- constructors -----------------------------------------------------------

def ball(focus, radius: float) -> LinearAmbit:
    return LinearAmbit([focus], [[1.0]], [radius])


def inverted_ball(focus, radius: float) -> LinearAmbit:
    """Closure of the ball's complement: ``x >= radius``."""
    return LinearAmbit([focus], [[-1.0]], [-radius])


def shell_from_bounds(focus, r_lo: float, r_hi: float = INF) -> LinearAmbit:
    if not 0 <= r_lo <= r_hi:
        raise InvalidInputError(f"bad shell bounds [{r_lo}, {r_hi}]")
    return LinearAmbit([focus], [[-1.0], [1.0]], [-r_lo, r_hi])


def sphere(focus, x: float) -> LinearAmbit:
    return shell_from_bounds(focus, x, x)


def cut_region(foci: Sequence, bounds: Sequence[tuple[float, float]]) -> LinearAmbit:
    """Intersection of shells around distinct foci; two rows per focus."""
    m = len(foci)
    coeffs, radii = [], []
    for j, (lo, hi) in enumerate(bounds):
        if not 0 <= lo <= hi:
            raise InvalidInputError(f"bad shell bounds [{lo}, {hi}]")
        neg = [0.0] * m
        neg[j] = -1.0
        pos = [0.0] * m
        pos[j] = 1.0
        coeffs += [neg, pos]
        radii += [-lo, hi]
    return LinearAmbit(foci, coeffs, radii)


def hyperplane(p1, p2, r: float = 0.0) -> LinearAmbit:
    """Points with ``x1 - x2 <= r``; r = 0 is the side closer to ``p1``."""
    return LinearAmbit([p1, p2], [[1.0, -1.0]], [r])


def ellipse(p1, p2, r: float) -> LinearAmbit:
    return LinearAmbit([p1, p2], [[1.0, 1.0]], [r])


def voronoi_cell(foci: Sequence, i: int) -> LinearAmbit:
    """Points at least as close to ``foci[i]`` as to every other focus."""
    m = len(foci)
    coeffs = []
    for j in range(m):
        if j == i:
            continue
        row = [0.0] * m
        row[i], row[j] = 1.0, -1.0
        coeffs.append(row)
    return LinearAmbit(foci, coeffs, [0.0] * (m - 1))


def ambit_to_dict(A: LinearAmbit) -> dict:
    return {"foci": list(A.foci), "coeffs": [list(r) for r in A.coeffs], "radii": list(A.radii)}


def ambit_from_dict(d: dict) -> LinearAmbit:
    foci = [tuple(f) if isinstance(f, list) else f for f in d["foci"]]
    return LinearAmbit(foci, d["coeffs"], d["radii"])
