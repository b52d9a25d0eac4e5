import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metricsprawl.ambit import (
    LinearAmbit, ambit_from_dict, ambit_to_dict, ball, ball_overlap, cut_region, ellipse,
    general_overlap, hyperplane, inverted_ball, lower_bound, member, shell_from_bounds, sphere,
    voronoi_cell,
)
from metricsprawl.errors import InvalidInputError
from metricsprawl.metrics import EPS, INF

nonneg = st.floats(0, 10, allow_nan=False)


def test_member_examples():
    assert member(ball("p", 0.5), [0.3])
    assert not member(LinearAmbit(["p"], [[-1], [1]], [-0.2, 0.5]), [0.1])
    vor = LinearAmbit(["a", "b", "c"], [[1, -1, 0], [1, 0, -1]], [0, 0])
    assert not member(vor, [1.0, 1.2, 0.9])


def test_ball_overlap_examples():
    assert not ball_overlap(ball("p", 0.5), [1.0], 0.4)
    assert not ball_overlap(LinearAmbit(["p"], [[-1]], [-0.5]), [0.2], 0.1)
    assert ball_overlap(sphere("p", 0.7), [0.65], 0.1)


def test_shell_examples():
    assert member(shell_from_bounds("p", 0.2, 0.5), [0.3])
    z = shell_from_bounds("p", 0.7, 0.7)
    assert member(z, [0.7]) and not member(z, [0.7001]) and not member(z, [0.6999])
    assert member(shell_from_bounds("p", 0.0, INF), [1e300])
    assert member(shell_from_bounds("p", 0.0), [1e300])


def test_shell_bad_bounds():
    with pytest.raises(InvalidInputError):
        shell_from_bounds("p", 0.5, 0.2)
    with pytest.raises(InvalidInputError):
        shell_from_bounds("p", -0.1, 0.2)


@pytest.mark.parametrize("args", [
    (["p"], [[0.0]], [1.0]),          # zero row
    (["p"], [[1.0, 2.0]], [1.0]),     # wrong width
    (["p"], [[1.0]], [1.0, 2.0]),     # radii length
    ([], [[]], [1.0]),
])
def test_invalid_ambits(args):
    with pytest.raises(InvalidInputError):
        LinearAmbit(*args)


def test_length_mismatch():
    with pytest.raises(InvalidInputError):
        member(ball("p", 1), [0.1, 0.2])
    with pytest.raises(InvalidInputError):
        ball_overlap(ball("p", 1), [0.1], -1.0)
    with pytest.raises(InvalidInputError):
        general_overlap(ball("p", 1), ball("q", 1), [[1.0, 2.0]])


@given(nonneg, nonneg, nonneg)
def test_shell_decomposition(lo, width, x):
    # membership carries the same 1e-9 slack as every other check
    hi = lo + width
    got = member(shell_from_bounds("p", lo, hi), [x])
    assert got == (-x <= -lo + EPS and x <= hi + EPS)
    if lo <= x <= hi:
        assert got
    if x < lo - 2 * EPS or x > hi + 2 * EPS:
        assert not got


def test_mtree_prefilter_equivalence():
    rng = random.Random(1)
    for _ in range(100_000):
        x, r, z, s = (rng.random() for _ in range(4))
        want = abs(z - x) <= r + s
        assert ball_overlap(shell_from_bounds("p", max(x - r, 0.0), x + r), [z], s) == want


def test_pivoting_bound():
    rng = random.Random(2)
    for _ in range(100_000):
        x, z, s = rng.random(), rng.random(), rng.random() * 0.3
        assert ball_overlap(sphere("p", x), [z], s) == (abs(x - z) <= s)


@given(st.lists(nonneg, min_size=1, max_size=4).flatmap(
    lambda a: st.tuples(st.just(a), st.lists(nonneg, min_size=len(a), max_size=len(a)), nonneg, nonneg)))
def test_nonnegative_row_matches_shorthand(t):
    # for nonnegative a, |a|_1 s is f(s, ..., s)
    a, z, r, s = t
    if not any(a):
        return
    R = LinearAmbit(list(range(len(a))), [a], [r])
    f = lambda v: sum(ai * vi for ai, vi in zip(a, v))
    assert ball_overlap(R, z, s) == (f(z) <= r + f([s] * len(a)) + 1e-9)


@given(nonneg, nonneg, nonneg)
def test_general_overlap_one_by_one_is_ball_overlap(r, z, s):
    assert general_overlap(ball("p", r), ball("q", s), [[z]]) == ball_overlap(ball("p", r), [z], s)
    assert general_overlap(ball("p", r), ball("q", s), [[z]]) == (z <= r + s + 1e-9)


@given(nonneg, nonneg, nonneg)
def test_general_overlap_halfspace_vs_ball(z1, z2, s):
    R = LinearAmbit(["p1", "p2"], [[0.5, -0.5]], [0.0])
    assert general_overlap(R, ball("q", s), [[z1], [z2]]) == (z1 - z2 <= 2 * s + 1e-9)


def test_general_overlap_scales_radius_with_row():
    # [1,-1] <= 0 normalizes to [1/2,-1/2] <= 0; [2] <= 2 normalizes to [1] <= 1
    R = LinearAmbit(["p1", "p2"], [[1, -1]], [0.0])
    Q = LinearAmbit(["q"], [[2.0]], [2.0])
    assert general_overlap(R, Q, [[3.0], [1.0]])      # (3-1)/2 = 1 <= 0 + 1
    assert not general_overlap(R, Q, [[3.2], [1.0]])  # 1.1 > 1


def test_mixed_sign_pairs_are_skipped():
    R = hyperplane("p1", "p2")
    Q = hyperplane("q1", "q2")
    assert general_overlap(R, Q, [[100.0, 0.0], [0.0, 100.0]])


def _random_ambit(rng, pts):
    kind = rng.randrange(6)
    f = [pts[rng.randrange(len(pts))] for _ in range(3)]
    if kind == 0:
        return ball(f[0], rng.uniform(0.05, 0.5))
    if kind == 1:
        return inverted_ball(f[0], rng.uniform(0.1, 0.6))
    if kind == 2:
        lo = rng.uniform(0, 0.5)
        return shell_from_bounds(f[0], lo, lo + rng.uniform(0, 0.3))
    if kind == 3:
        return hyperplane(f[0], f[1], rng.uniform(-0.1, 0.1))
    if kind == 4:
        return ellipse(f[0], f[1], math.dist(f[0], f[1]) + rng.uniform(0, 0.4))
    return cut_region(f[:2], [(0.1, 0.5), (0.0, 0.7)])


GRID = [(i / 40, j / 40) for i in range(41) for j in range(41)]


def _witness_exists(R, Q):
    for u in GRID:
        if member(R, [math.dist(f, u) for f in R.foci]) and member(Q, [math.dist(f, u) for f in Q.foci]):
            return True
    return False


def test_general_overlap_sound_on_grid_witnesses():
    rng = random.Random(5)
    pts = [(rng.random(), rng.random()) for _ in range(30)]
    witnessed = 0
    for _ in range(300):
        R, Q = _random_ambit(rng, pts), _random_ambit(rng, pts)
        Z = [[math.dist(p, q) for q in Q.foci] for p in R.foci]
        if _witness_exists(R, Q):
            witnessed += 1
            assert general_overlap(R, Q, Z)
    assert witnessed > 50


def test_ball_overlap_sound_brute_force():
    rng = random.Random(6)
    pts = [(rng.random(), rng.random()) for _ in range(60)]
    for _ in range(300):
        R = _random_ambit(rng, pts)
        q, s = (rng.random(), rng.random()), rng.uniform(0, 0.3)
        z = [math.dist(f, q) for f in R.foci]
        for u in pts:
            if member(R, [math.dist(f, u) for f in R.foci]) and math.dist(q, u) <= s:
                assert ball_overlap(R, z, s)
                assert lower_bound(R, z) <= s + 1e-9
                break


def test_voronoi_cell_rows():
    V = voronoi_cell(["a", "b", "c"], 0)
    assert V.coeffs == ((1.0, -1.0, 0.0), (1.0, 0.0, -1.0))
    assert member(V, [0.2, 0.3, 0.2]) and not member(V, [0.4, 0.3, 0.5])


def test_lower_bound_of_ball():
    assert lower_bound(ball("p", 0.5), [1.25]) == pytest.approx(0.75)
    assert lower_bound(ball("p", 0.5), [0.25]) == 0.0


def test_dict_round_trip():
    A = cut_region([(0.0, 1.0), (2.0, 3.0)], [(0.1, 0.5), (0.0, 0.7)])
    assert ambit_from_dict(ambit_to_dict(A)) == A
