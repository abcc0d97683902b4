"""End-to-end acceptance sweep of the public surface.

One test per shipped guarantee, twelve in all: the worked examples
classify exactly as documented, every family keeps its degree formula,
the root test and the classifier corroborate each other on random
draws, transfer and the closure demo behave, and the numeric oracle
stays consistent with the exact verdicts.  Each test also holds itself
to a wall-clock budget, so a slowdown fails loudly.  Run with -v to
get one line per guarantee.
"""

import random
import time
from contextlib import contextmanager

from fixfree.analyzer import (
    CURVE_OF_FIXED_POINTS,
    FIXED_POINT_FREE,
    HAS_FIXED_POINTS,
    REASON_ROOT_CONDITION,
    classify,
    lemma_check,
    meromorphic_fixed_nonempty,
    numeric_oracle,
)
from fixfree.catalog import (
    InvalidParameters,
    bidegree,
    closure,
    even,
    example22,
    example23,
    odd,
    power,
    standard_members,
)
from fixfree.convergence import closure_demo
from fixfree.poly import AFFINE_VARS, MultiPoly, P2_VARS
from fixfree.spaces import (
    SPACE_P2,
    ProjMap,
    degree_report,
    normalize_map,
    topological_degree,
)
from fixfree.transfer import find_center, transfer_map

Z1, Z2 = (MultiPoly.variable(v, AFFINE_VARS) for v in AFFINE_VARS)
ONE = MultiPoly.constant(AFFINE_VARS, 1)


@contextmanager
def budget(seconds):
    start = time.monotonic()
    yield
    elapsed = time.monotonic() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, budget {seconds}s"


def indeterminacy_strings(out):
    return {str(p) for p in out.indeterminacy.points}


def test_criterion_01_example22_classification():
    with budget(5):
        f = example22()
        out = classify(f)
        assert out.verdict == FIXED_POINT_FREE
        assert indeterminacy_strings(out) == {
            "(0, 0)", "(inf, inf)", "(1, 1)", "(-1, 1)",
        }
        assert topological_degree(f) == 2


def test_criterion_02_example23_classification():
    with budget(10):
        f = example23()
        out = classify(f)
        assert out.verdict == FIXED_POINT_FREE
        assert indeterminacy_strings(out) == {
            "(0, 0)", "(inf, inf)", "(1, 1)", "(2, 4)", "(2/3, 0)",
        }
        assert topological_degree(f) == 3


def test_criterion_03_even_family_degrees():
    with budget(60):
        for d in (1, 2, 3):
            f = even(d)
            assert classify(f).verdict == FIXED_POINT_FREE, d
            assert topological_degree(f) == 2 * d + 2, d


def test_criterion_04_odd_family_degrees():
    with budget(60):
        for d in (1, 2):
            f = odd(d)
            assert classify(f).verdict == FIXED_POINT_FREE, d
            assert topological_degree(f) == 2 * d + 3, d


def test_criterion_05_power_family_degrees():
    with budget(60):
        for k in (2, 3, 4):
            f = power(k)
            assert classify(f).verdict == FIXED_POINT_FREE, k
            assert topological_degree(f) == k + 1, k


def test_criterion_06_bidegree_family_verdicts():
    with budget(120):
        for k in (2, 3):
            assert classify(bidegree(k)).verdict == FIXED_POINT_FREE, k


# --- random draws for the root-test cross-validation -------------------


def _induced_map(p, q, k):
    return normalize_map(ProjMap.from_affine_pair(Z1 ** k, Z2, q, p))


def _passing_draw(rng):
    """Random (P, Q, k) built to satisfy the root test, plus its map.

    Three shapes, mirroring the catalog families: an even-style pair
    list, an odd-style pair list, and a pure power with optional
    matched extra factors.
    """
    style = rng.random()
    if style < 0.45:
        d = 1 if rng.random() < 0.7 else 2
        while True:
            pairs = [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(d)]
            try:
                f = even(d, pairs)
            except InvalidParameters:
                continue
            p = Z1 * Z1 - ONE
            q = ONE
            for a, b in pairs:
                p = p * (Z1 - a * ONE) * (Z1 - b * ONE)
                q = q * (Z2 - (a + b) * Z1 + (a * b) * ONE)
            return p, q, 1, f
    if style < 0.65:
        while True:
            pairs = [(rng.randint(-6, 6), rng.randint(-6, 6))]
            try:
                f = odd(1, pairs)
            except InvalidParameters:
                continue
            (a, b), = pairs
            p = (Z1 - ONE) * (Z1 - 2 * ONE) * (3 * Z1 - 2 * ONE)
            p = p * (Z1 - a * ONE) * (Z1 - b * ONE)
            q = (Z2 - 3 * Z1 + 2 * ONE) * (Z2 - (a + b) * Z1 + (a * b) * ONE)
            return p, q, 1, f
    k = rng.choice((2, 3))
    extras = rng.sample((-3, -2, 2, 3, 4, 5), rng.randint(0, 1))
    p = Z1 ** (k + 1) - ONE
    q = Z2 - ONE
    for r in extras:
        p = p * (Z1 ** (k + 1) - r * ONE)
        q = q * (Z2 - r * ONE)
    return p, q, k, _induced_map(p, q, k)


def _failing_draw(rng):
    """Random coprime (P, Q, k) whose nonzero roots break the root test."""
    while True:
        k = rng.choice((1, 2))
        roots = rng.sample(range(-5, 6), rng.randint(2, 3))
        p = ONE
        for r in roots:
            p = p * (Z1 - r * ONE)
        q = Z2 - rng.randint(-4, 4) * ONE
        rep = lemma_check(p, q, k)
        if not rep.passed and rep.reason == REASON_ROOT_CONDITION:
            return p, q, k


def test_criterion_07_root_test_cross_validation():
    with budget(180):
        rng = random.Random(1007)
        for j in range(200):
            p, q, k, f = _passing_draw(rng)
            assert lemma_check(p, q, k).passed, j
            assert classify(f).verdict == FIXED_POINT_FREE, j
        rng = random.Random(2013)
        for j in range(200):
            p, q, k = _failing_draw(rng)
            out = classify(_induced_map(p, q, k))
            assert out.verdict == HAS_FIXED_POINTS, j
            assert out.witnesses, j
            best = min(w.residual for w in out.witnesses)
            assert best == 0.0 or best < 1e-10, (j, best)


def test_criterion_08_transfer_to_the_plane():
    with budget(120):
        for f in (example22(), even(1)):
            center = find_center(f, seed=1)
            g = transfer_map(f, center)
            assert g.source == SPACE_P2 and g.target == SPACE_P2
            assert classify(g).verdict == FIXED_POINT_FREE


def _associates(p, q):
    lead_p = p.terms[max(p.terms)]
    lead_q = q.terms[max(q.terms)]
    return p.scale(lead_q) == q.scale(lead_p)


def test_criterion_09_closure_demo():
    with budget(120):
        report = closure_demo(32, samples=500, seed=42)
        assert tuple(r.n for r in report.rungs) == (2, 4, 8, 16, 32)
        assert all(r.verdict == FIXED_POINT_FREE for r in report.rungs)
        assert report.limit_verdict == CURVE_OF_FIXED_POINTS
        z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
        assert _associates(report.limit_curve, z1 * z1 - z0 * z2)
        ladder = [r.hausdorff_to_limit for r in report.rungs]
        assert all(a > b for a, b in zip(ladder, ladder[1:]))
        assert ladder[-1] < 0.05


def _random_plane_map(rng):
    """Random self-map of the plane of algebraic degree at most 3."""
    zs = [MultiPoly.variable(v, P2_VARS) for v in P2_VARS]
    d = rng.randint(1, 3)

    def component():
        out = MultiPoly.constant(P2_VARS, 0)
        hit = False
        for a in range(d + 1):
            for b in range(d + 1 - a):
                c = d - a - b
                if rng.random() < 0.5:
                    coef = rng.randint(-4, 4)
                    if coef:
                        out = out + (zs[0] ** a) * (zs[1] ** b) * (zs[2] ** c) * coef
                        hit = True
        return out if hit else None

    comps = [component() for _ in range(3)]
    if any(c is None for c in comps):
        return None
    try:
        return normalize_map(ProjMap.p2_self_map(comps))
    except ValueError:
        return None


def test_criterion_10_meromorphic_fixed_points_always_exist():
    with budget(180):
        for name, f in standard_members():
            assert meromorphic_fixed_nonempty(f)[0], name
        rng = random.Random(11)
        drawn = 0
        while drawn < 500:
            f = _random_plane_map(rng)
            if f is None:
                continue
            assert f.algebraic_degree() <= 3
            assert meromorphic_fixed_nonempty(f)[0], drawn
            drawn += 1


def test_criterion_11_numeric_oracle_consistency():
    declared_free = (
        [example22(), example23()]
        + [even(d) for d in (1, 2, 3)]
        + [odd(d) for d in (1, 2)]
        + [power(k) for k in (2, 3, 4)]
        + [bidegree(k) for k in (2, 3)]
        + [closure(n) for n in (2, 4, 8, 16, 32)]
    )
    with budget(180):
        for f in declared_free:
            assert numeric_oracle(f, restarts=10 ** 4) == []


def test_criterion_12_graph_volume_identity():
    with budget(5):
        zs = [MultiPoly.variable(v, P2_VARS) for v in P2_VARS]
        squaring = degree_report(ProjMap.p2_self_map([z * z for z in zs]))
        identity = degree_report(ProjMap.identity(SPACE_P2))
        triple = lambda r: (r.topological_degree, r.skew_degree, r.graph_volume)
        assert triple(squaring) == (4, 2, 9)
        assert triple(identity) == (1, 1, 4)
        for r in (squaring, identity):
            assert r.graph_volume == r.topological_degree + 1 + 2 * r.skew_degree
