import math
import random

import pytest

from metricsprawl.builders import BUILDERS, BuildParams, build, build_voronoi_node
from metricsprawl.errors import InvalidInputError
from metricsprawl.harness.oracle import oracle
from metricsprawl.harness.workload import KnnQuery
from metricsprawl.metrics import INF, CountedMetric
from metricsprawl.sprawl import dumps, knn_search, range_search, validate

L2 = CountedMetric("l2")
LEV = CountedMetric("levenshtein")
VECTOR_KINDS = [k for k in BUILDERS if k != "bk"]
TIGHT_KINDS = ["bs", "ball", "vp", "mtree", "gnat", "pmtree"]


def points(n, seed=0):
    rng = random.Random(seed)
    return [(rng.random(), rng.random()) for _ in range(n)]


def covered(g, rid):
    """Points reachable from a region's children along positive edges."""
    R = g.regions[rid]
    todo, seen = list(R.pos or R.neg), set()
    while todo:
        u = todo.pop()
        if u in seen:
            continue
        seen.add(u)
        for c in g.point_children[u]:
            todo.extend(g.regions[c].pos)
    return seen


def tightness_errors(g, m):
    """Rows of the form +e_j <= r or -e_j <= -r must sit exactly on the extreme covered distance."""
    bad = []
    for rid, R in enumerate(g.regions):
        pts = covered(g, rid)
        if not pts:
            continue
        A = R.ambit
        for row, r in zip(A.coeffs, A.radii):
            nz = [j for j, c in enumerate(row) if c]
            if len(nz) != 1 or abs(row[nz[0]]) != 1.0:
                continue
            ds = [m(g.payloads[A.foci[nz[0]]], g.payloads[u]) for u in pts]
            want = max(ds) if row[nz[0]] > 0 else -min(ds)
            if r != want and not (r >= INF and want >= INF):
                bad.append((rid, row, r, want))
    return bad


@pytest.fixture(scope="module")
def pts300():
    return points(300, 1)


@pytest.mark.parametrize("kind", VECTOR_KINDS)
def test_single_point(kind):
    g = build(kind, [(0.5, 0.5)], L2, BuildParams(pivot_count=1))
    assert g.n == 1 and len(g.regions) == 0
    assert range_search(g, L2.fresh(), (0.0, 0.0), 1.0).ids == [0]


@pytest.mark.parametrize("kind", list(BUILDERS))
def test_empty_data_rejected(kind):
    with pytest.raises(InvalidInputError):
        build(kind, [], L2)


def test_unknown_kind():
    with pytest.raises(InvalidInputError):
        build("kd", points(3), L2)


@pytest.mark.parametrize("kw", [{"arity": 1}, {"leaf_capacity": 0}, {"pivot_count": -1},
                                {"shell_width": -0.1}, {"heuristic": "lb_avg"},
                                {"laesa_mode": "both"}, {"piaesa_switch": -1}])
def test_bad_params(kw):
    with pytest.raises(InvalidInputError):
        BuildParams(**kw)


def test_bs_tree_seven_points():
    g = build("bs", points(7), L2)
    assert g.n == 7 and len(g.regions) == 3 and len(g.roots) == 1


def test_ball_tree_arity_four():
    g = build("ball", points(100), L2, BuildParams(arity=4))
    assert all(len(R.pos) <= 4 for R in g.regions)
    assert sorted(g.roots + [u for R in g.regions for u in R.pos]) == list(range(100))


def test_ball_arity_two_is_bs(pts300):
    a, b = build("ball", pts300, L2), build("bs", pts300, L2)
    assert [(R.ambit, R.pos) for R in a.regions] == [(R.ambit, R.pos) for R in b.regions]


@pytest.mark.parametrize("kind", TIGHT_KINDS)
def test_tight_bounds(kind, pts300):
    g = build(kind, pts300, L2, BuildParams(arity=3 if kind in ("gnat", "mtree") else 2))
    assert tightness_errors(g, L2.fresh()) == []


def test_bk_bounds_are_tight():
    words = ["book", "books", "cake", "boo", "cape", "cook", "booking", "hook", "bake", "cakes"]
    g = build("bk", words, LEV)
    assert tightness_errors(g, LEV.fresh()) == []


def test_vp_loose_uses_split_radius(pts300):
    g = build("vp", pts300, L2, BuildParams(tight=False))
    assert validate(g, audit=True, metric=L2.fresh()).passed
    for R in g.regions[:2]:
        assert len(R.ambit.coeffs) == 1


def test_vp_subtree_membership(pts300):
    g = build("vp", pts300, L2)
    m = L2.fresh()
    for rid, R in enumerate(g.regions):
        p, c, r = R.ambit.foci[0], R.ambit.coeffs[0][0], R.ambit.radii[0]
        for u in covered(g, rid):
            d = m(pts300[p], pts300[u])
            assert (d <= r) if c > 0 else (d >= -r)


def test_bk_two_points():
    g = build("bk", ["abc", "xyz"], LEV)
    assert len(g.regions) == 1
    R = g.regions[0]
    assert R.ambit.foci == (0,) and R.ambit.radii == (-3.0, 3.0) and R.pos == [1]


def test_bk_book_books_cake():
    g = build("bk", ["book", "books", "cake"], LEV)
    shells = sorted((R.ambit.radii[1], R.pos) for R in g.regions)
    assert g.roots == [0]
    assert shells == [(1.0, [1]), (4.0, [2])]


def test_bk_needs_discrete_metric():
    with pytest.raises(InvalidInputError):
        build("bk", points(5), L2)


def test_gnat_rows(pts300):
    g = build("gnat", pts300, L2, BuildParams(arity=2))
    assert all(len(R.ambit.coeffs) == 4 and len(R.ambit.foci) == 2 for R in g.regions)


def test_voronoi_node_three_foci():
    cells = build_voronoi_node(["a", "b", "c"], 3)
    assert len(cells) == 3 and all(len(c.coeffs) == 2 for c in cells)
    assert cells[0].coeffs == ((1.0, -1.0, 0.0), (1.0, 0.0, -1.0))
    with pytest.raises(InvalidInputError):
        build_voronoi_node(["a"])


def test_gh_left_is_closer_to_first_focus(pts300):
    g = build("gh", pts300, L2)
    m = L2.fresh()
    for rid, R in enumerate(g.regions):
        (a, b), row = R.ambit.foci, R.ambit.coeffs[0]
        near, far = (a, b) if row[0] > 0 else (b, a)
        for u in covered(g, rid):
            assert m(pts300[near], pts300[u]) <= m(pts300[far], pts300[u])


def test_mtree_two_levels():
    g = build("mtree", points(4), L2, BuildParams(arity=3))
    top = g.roots[0]
    assert len(g.point_children[top]) == 3
    assert all(len(g.regions[r].pos) == 1 for r in g.point_children[top])


def test_laesa_structure(pts300):
    g = build("laesa", pts300, L2, BuildParams(pivot_count=5))
    assert len(g.regions) == 5 * 295 and g.roots[:5] == sorted(g.roots[:5], key=g.roots.index)
    assert len(g.roots) == 300
    d = build("laesa", pts300, L2, BuildParams(pivot_count=5, laesa_mode="discover"))
    assert len(d.regions) == 295 and all(len(R.ambit.foci) == 5 for R in d.regions)
    z = build("laesa", pts300, L2, BuildParams(pivot_count=0))
    assert z.regions == [] and len(z.roots) == 300
    with pytest.raises(InvalidInputError):
        build("laesa", points(3), L2, BuildParams(pivot_count=4))


def test_laesa_counts_below_n(clusters2d):
    g = build("laesa", clusters2d, L2, BuildParams(pivot_count=16))
    rng = random.Random(2)
    counts = [range_search(g, L2.fresh(), clusters2d[rng.randrange(1000)], 0.01).distance_count
              for _ in range(30)]
    assert sum(counts) / len(counts) < 1000


def test_aesa_build_distances():
    g = build("aesa", points(40), L2)
    assert g.build_distances == 40 * 39 // 2


def test_pmtree_without_pivots_is_ball_tree(pts300):
    a = build("pmtree", pts300, L2, BuildParams(pivot_count=0))
    b = build("ball", pts300, L2)
    assert [(R.ambit, R.pos, R.neg) for R in a.regions] == [(R.ambit, R.pos, R.neg) for R in b.regions]
    rng = random.Random(3)
    for _ in range(10):
        q = (rng.random(), rng.random())
        assert range_search(a, L2.fresh(), q, 0.1).summary() == range_search(b, L2.fresh(), q, 0.1).summary()


def test_vp_forest_rho_zero_has_one_tree(pts300):
    g = build("vpforest", pts300, L2, BuildParams(shell_width=0.0))
    assert not any(R.tag == "shell" and R.pos for R in g.regions)
    assert len(g.roots) == 1


def test_vp_forest_later_trees_hold_points(pts300):
    g = build("vpforest", pts300, L2, BuildParams(shell_width=0.05))
    assert any(R.tag == "shell" and R.pos for R in g.regions)
    rng = random.Random(4)
    for _ in range(20):
        q = (rng.random(), rng.random())
        assert range_search(g, L2.fresh(), q, 0.08).ids == [u for u, p in enumerate(pts300)
                                                         if math.dist(q, p) <= 0.08]


def test_vp_forest_depth_cap_falls_back():
    # a huge rho defers nearly everything at every level
    g = build("vpforest", points(200, 5), L2, BuildParams(shell_width=10.0))
    assert validate(g, audit=True, metric=L2.fresh()).passed
    q = (0.3, 0.3)
    assert range_search(g, L2.fresh(), q, 0.2).ids == [u for u, p in enumerate(points(200, 5))
                                                       if math.dist(q, p) <= 0.2]


@pytest.mark.parametrize("kind", VECTOR_KINDS)
def test_complete_valid_deterministic(kind, pts300):
    params = BuildParams(arity=3, shell_width=0.03, pivot_count=6, seed=9)
    g = build(kind, pts300, L2, params)
    assert g.n == 300 and g.payloads == pts300
    assert validate(g, audit=True, metric=L2.fresh()).passed
    assert dumps(g) == dumps(build(kind, pts300, L2, params))
    assert g.build_distances >= 0


@pytest.mark.parametrize("kind", VECTOR_KINDS)
def test_builder_does_not_touch_caller_counter(kind, pts300):
    m = L2.fresh()
    build(kind, pts300, m, BuildParams(pivot_count=4))
    assert m.calls == 0


@pytest.mark.parametrize("kind", VECTOR_KINDS)
@pytest.mark.parametrize("leaf_cap", [1, 4])
def test_exactness(kind, leaf_cap, pts300):
    g = build(kind, pts300, L2, BuildParams(arity=3, leaf_capacity=leaf_cap, pivot_count=6, shell_width=0.03))
    rng = random.Random(leaf_cap)
    for _ in range(25):
        q, s, k = (rng.random(), rng.random()), rng.uniform(0, 0.15), rng.randint(1, 12)
        rep = range_search(g, L2.fresh(), q, s)
        assert rep.ids == [u for u, p in enumerate(pts300) if math.dist(q, p) <= s]
        assert rep.distance_count <= 300
        rep = knn_search(g, L2.fresh(), q, k)
        want = oracle(pts300, L2.fresh(), KnnQuery(q, k))
        assert [d for _, d in rep.results] == [d for _, d in want]


@pytest.mark.parametrize("kind", ["bk", "laesa", "aesa", "bs", "gnat", "vp"])
def test_string_exactness(kind, words500):
    g = build(kind, words500, LEV, BuildParams(pivot_count=8))
    rng = random.Random(6)
    for _ in range(20):
        q, s = words500[rng.randrange(500)] + "x", rng.randint(0, 2)
        assert range_search(g, LEV.fresh(), q, s).ids == [u for u, w in enumerate(words500)
                                                        if LEV(q, w) <= s]


@pytest.mark.parametrize("heuristic", ["lb_sum", "lb_max"])
@pytest.mark.parametrize("switch", [0, 5])
def test_aesa_variants(heuristic, switch, pts300):
    g = build("aesa", pts300, L2, BuildParams(heuristic=heuristic, piaesa_switch=switch))
    rng = random.Random(7)
    for _ in range(15):
        q = (rng.random(), rng.random())
        rep = knn_search(g, L2.fresh(), q, 5)
        assert [d for _, d in rep.results] == sorted(math.dist(q, p) for p in pts300)[:5]
        assert rep.distance_count <= 300


def test_duplicates_everywhere():
    pts = [(0.5, 0.5)] * 20 + [(0.1, 0.1)] * 5
    for kind in VECTOR_KINDS:
        g = build(kind, pts, L2, BuildParams(pivot_count=3, shell_width=0.01))
        assert validate(g, audit=True, metric=L2.fresh()).passed, kind
        assert range_search(g, L2.fresh(), (0.5, 0.5), 0.0).ids == list(range(20)), kind
