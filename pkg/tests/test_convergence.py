"""Graph sampling, chordal distances, and the closure ladder."""

import math
import random

import pytest

from fixfree.catalog import InvalidParameters, closure, example22, limit_of_closure_family
from fixfree.convergence import (
    GraphSample,
    InvalidPoint,
    InvalidSample,
    closure_demo,
    fs_distance,
    graph_residuals,
    hausdorff_estimate,
    ladder,
    sample_graph,
)
from fixfree.poly import MultiPoly
from fixfree.spaces import P2_VARS, ProjMap, SpaceError


def _random_unit(rng):
    while True:
        v = tuple(complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(3))
        n = math.sqrt(sum(abs(c) ** 2 for c in v))
        if n > 1e-6:
            return tuple(c / n for c in v)


def test_fs_distance_examples():
    assert fs_distance((1, 1, 0), (1, 1, 0)) == 0.0
    assert fs_distance((1, 0, 0), (0, 1, 0)) == pytest.approx(1.0)
    assert fs_distance((1, 1, 0), (1, 0, 0)) == pytest.approx(math.sqrt(0.5))
    rng = random.Random(5)
    for _ in range(200):
        a = _random_unit(rng)
        assert fs_distance(a, a) == 0.0


def test_fs_distance_on_product_points():
    a = ((1, 0), (1, 1))
    b = ((1, 0), (1, -1))
    assert fs_distance(a, b) == pytest.approx(1.0)
    assert fs_distance(a, a) == 0.0
    with pytest.raises(InvalidPoint):
        fs_distance(a, (1, 0, 0))


def test_fs_distance_rejects_zero_vectors():
    with pytest.raises(InvalidPoint):
        fs_distance((0, 0, 0), (1, 0, 0))


def test_fs_metric_properties():
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (_random_unit(rng) for _ in range(3))
        assert fs_distance(a, b) == fs_distance(b, a)
        assert fs_distance(a, c) <= fs_distance(a, b) + fs_distance(b, c) + 1e-12


def test_sample_graph_of_the_identity():
    z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
    identity = ProjMap.p2_self_map([z0, z1, z2])
    s = sample_graph(identity, 50, 3)
    assert s.count == 50 and len(s.points) == 50
    for src, img in s.points:
        assert max(abs(x - y) for x, y in zip(src, img)) < 1e-12


def test_sample_graph_residuals_and_margin():
    lim = limit_of_closure_family()
    s = sample_graph(lim, 100, 7)
    assert max(graph_residuals(lim, s)) < 1e-10
    corners = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for src, img in s.points:
        assert abs(sum(abs(c) ** 2 for c in src) - 1.0) < 1e-12
        assert abs(sum(abs(c) ** 2 for c in img) - 1.0) < 1e-12
        assert min(fs_distance(src, e) for e in corners) > 1e-6


def test_sample_graph_determinism():
    f = closure(4)
    assert sample_graph(f, 40, 11) == sample_graph(f, 40, 11)
    assert sample_graph(f, 40, 11) != sample_graph(f, 40, 12)


def test_sample_graph_rejects_degenerate_input():
    one = MultiPoly.constant(P2_VARS, 1)
    constant = ProjMap.p2_self_map([one, one.scale(2), one.scale(3)])
    with pytest.raises(InvalidParameters):
        sample_graph(constant, 10, 0)
    with pytest.raises(SpaceError):
        sample_graph(example22(), 10, 0)
    with pytest.raises(InvalidParameters):
        sample_graph(closure(2), 0, 0)


def test_hausdorff_identity_symmetry_positivity():
    a = sample_graph(limit_of_closure_family(), 150, 11, label="limit")
    b = sample_graph(closure(2), 150, 11)
    assert hausdorff_estimate(a, a) == 0.0
    assert hausdorff_estimate(a, b) == hausdorff_estimate(b, a)
    assert hausdorff_estimate(a, b) > 0.0


def test_hausdorff_rejects_unusable_samples():
    empty = GraphSample(points=(), label="empty", seed=0, count=0)
    full = sample_graph(closure(2), 30, 1)
    with pytest.raises(InvalidSample):
        hausdorff_estimate(empty, full)
    small = sample_graph(closure(2), 10, 1)
    big = sample_graph(closure(2), 30, 1)
    with pytest.raises(InvalidSample):
        hausdorff_estimate(small, big)


def test_halving_the_phase_gap_halves_the_distance():
    lim = sample_graph(limit_of_closure_family(), 500, 42, label="limit")
    dist = {}
    for n in (5, 10, 20, 40):
        dist[n] = hausdorff_estimate(sample_graph(closure(n), 500, 42), lim)
    for n in (5, 10, 20):
        assert dist[2 * n] < dist[n]
    assert dist[5] == pytest.approx(0.196110, abs=1e-3)
    assert dist[10] == pytest.approx(0.099501, abs=1e-3)
    assert dist[20] == pytest.approx(0.049936, abs=1e-3)
    assert dist[40] == pytest.approx(0.024991, abs=1e-3)


def test_ladder_shape():
    assert ladder(2) == [2]
    assert ladder(32) == [2, 4, 8, 16, 32]
    assert ladder(33) == [2, 4, 8, 16, 32]
    with pytest.raises(InvalidParameters):
        ladder(1)


def test_closure_demo_report():
    rep = closure_demo(32, samples=500, seed=42)
    assert [r.n for r in rep.rungs] == [2, 4, 8, 16, 32]
    assert all(r.verdict == "FixedPointFree" for r in rep.rungs)
    assert all(r.algebraic_degree == 2 for r in rep.rungs)
    assert {r.topological_degree for r in rep.rungs} == {1}
    assert rep.limit_verdict == "CurveOfFixedPoints"
    z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
    assert rep.limit_curve == z0 * z2 - z1 ** 2
    assert rep.limit_algebraic_degree == 2
    assert rep.limit_topological_degree == 1
    dists = [r.hausdorff_to_limit for r in rep.rungs]
    assert all(x > y for x, y in zip(dists, dists[1:]))
    assert dists[-1] < 0.05
    assert dists[-1] == pytest.approx(0.031234, abs=1e-3)


def test_closure_demo_verdicts_ignore_sampling():
    a = closure_demo(4, samples=25, seed=9)
    b = closure_demo(4, samples=60, seed=1)
    assert [(r.n, r.verdict, r.algebraic_degree, r.topological_degree)
            for r in a.rungs] == [(r.n, r.verdict, r.algebraic_degree,
                                   r.topological_degree) for r in b.rungs]
    assert a.limit_verdict == b.limit_verdict
    assert a.limit_curve == b.limit_curve
    with pytest.raises(InvalidParameters):
        closure_demo(1)
