"""Floating-point machinery: batched Newton, root finding, chordal distance.

The regression test at the bottom pins the behavior that matters most:
at a tangential (multiplicity two) intersection the iteration used to
converge and then get thrown back out when the normal-equation
determinant sank to rounding noise; the solver must report the
converged iterate regardless.
"""

from fractions import Fraction

import numpy as np
import pytest

from fixfree.numeric import (
    fs_distance_groups,
    fs_distance_vectors,
    gauss_newton,
    newton_polish,
    random_starts,
    residual_at,
    search_systems,
    univariate_roots,
)
from fixfree.poly import AFFINE_VARS, MultiPoly
from fixfree.spaces import SPACE_P1XP1, charts

PAIR_VARS = ("x1", "y1")


def pv(name):
    return MultiPoly.variable(name, PAIR_VARS)


def simple_system():
    # x^2 = 2 on the line y = x: two regular solutions
    x, y = pv("x1"), pv("y1")
    return [x * x - 2, y - x]


def test_gauss_newton_regular_roots():
    starts = np.array([[1.3 + 0j, 1.2 + 0j], [-1.2 + 0j, -1.5 + 0j]])
    pts, res = gauss_newton(simple_system(), PAIR_VARS, starts, iters=60)
    assert res.max() < 1e-12
    root = np.sqrt(2)
    assert abs(pts[0, 0] - root) < 1e-8 and abs(pts[0, 1] - root) < 1e-8
    assert abs(pts[1, 0] + root) < 1e-8 and abs(pts[1, 1] + root) < 1e-8


def test_gauss_newton_divergent_start_flagged():
    x, y = pv("x1"), pv("y1")
    # no finite solutions: x^2 + 1 = 0 together with x^2 - 1 = 0
    polys = [x * x + 1, x * x - 1, y]
    starts = np.array([[0.5 + 0.1j, 0.2 + 0j]])
    pts, res = gauss_newton(polys, PAIR_VARS, starts, iters=80)
    assert res[0] > 1e-3


def test_newton_polish_and_residual():
    pts, res = newton_polish(simple_system(), PAIR_VARS, (1.4 + 0j, 1.4 + 0j))
    assert res < 1e-12
    assert residual_at(simple_system(), PAIR_VARS, pts) < 1e-12
    assert residual_at(simple_system(), PAIR_VARS, (0.0 + 0j, 0.0 + 0j)) > 0.5


def test_residual_is_scale_invariant():
    sys1 = simple_system()
    sys2 = [p.scale(Fraction(10**40)) for p in sys1]
    pt = (1.5 + 0j, 0.5 + 0j)
    assert residual_at(sys1, PAIR_VARS, pt) == pytest.approx(
        residual_at(sys2, PAIR_VARS, pt)
    )


def test_univariate_roots_basic():
    z = MultiPoly.variable("z", ("z",))
    roots = sorted(univariate_roots(z * z - 2, "z").real)
    assert abs(roots[0] + np.sqrt(2)) < 1e-9
    assert abs(roots[1] - np.sqrt(2)) < 1e-9


def test_univariate_roots_huge_coefficients():
    z = MultiPoly.variable("z", ("z",))
    p = (z * z - 2).scale(Fraction(10**300))
    roots = sorted(univariate_roots(p, "z").real)
    assert abs(roots[1] - np.sqrt(2)) < 1e-9


def test_univariate_roots_collapse_multiplicity():
    z = MultiPoly.variable("z", ("z",))
    roots = univariate_roots((z - 1) ** 3, "z")
    assert len(roots) == 1
    assert abs(roots[0] - 1) < 1e-9


def test_random_starts_deterministic():
    a = random_starts(7, 10)
    b = random_starts(7, 10)
    c = random_starts(8, 10)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.shape == (10, 2)


def test_fs_distance():
    assert fs_distance_vectors((1 + 0j, 2 + 0j), (2 + 0j, 4 + 0j)) < 1e-12
    assert fs_distance_vectors((1 + 0j, 0j), (0j, 1 + 0j)) == pytest.approx(1.0)
    # scale invariance, including complex scales; the 1 - |<a,b>|^2 form
    # cancels, so the resolution near zero is about sqrt(machine eps)
    a = (1 + 1j, 2 - 1j)
    b = tuple(3j * x for x in a)
    assert fs_distance_vectors(a, b) < 1e-7
    with pytest.raises(ValueError):
        fs_distance_vectors((0j, 0j), (1 + 0j, 0j))


def test_fs_distance_groups_takes_max():
    same = ((1 + 0j, 1 + 0j), (1 + 0j, 0j))
    other = ((1 + 0j, 1 + 0j), (0j, 1 + 0j))
    assert fs_distance_groups(same, other) == pytest.approx(1.0)
    assert fs_distance_groups(same, same) < 1e-12


def test_search_systems_finds_all_roots():
    chart = charts(SPACE_P1XP1)[0]
    x, y = (MultiPoly.variable(v, chart.affine_vars) for v in chart.affine_vars)
    systems = [(chart, [x * x - 2, y - x])]
    hits = search_systems(systems, restarts=300, seed=5)
    assert len(hits) == 2
    found = sorted(round(c[0].real, 6) for _, c, _ in hits)
    root = round(float(np.sqrt(2)), 6)
    assert found == [-root, root]
    for _, _, res in hits:
        assert res < 1e-8


def test_tangent_intersection_not_ejected():
    # two curves tangent at (-1, 1) and (1, 1): det(J^H J) ~ dist^2 there,
    # so a long run used to catapult converged iterates back out
    x, y = (MultiPoly.variable(v, ("x0", "y1")) for v in ("x0", "y1"))
    gens = [x * x * y - 1, -(x * x) * y * y + x * x * y - x * x + 1]
    start = np.array([[-0.999995786385683 - 5.265962644283757e-06j,
                       1.0000084272286385 - 1.0531925286393559e-05j]])
    for iters in (40, 150, 400, 3000):
        pts, res = gauss_newton(gens, ("x0", "y1"), start, iters=iters)
        dist = abs(pts[0, 0] + 1) + abs(pts[0, 1] - 1)
        assert res[0] < 1e-10, iters
        assert dist < 1e-6, iters
