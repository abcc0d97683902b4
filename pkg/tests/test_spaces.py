"""Points, self-maps, degrees, and line restrictions.

Conventions exercised here and relied on everywhere else:

* a component pair (A, B) is (denominator, numerator): the image point of
  that factor is [A : B] and its affine value is B / A;
* affine coordinates on the product are (x1/x0, y1/y0), so the chart
  x0=1,y0=1 is the finite chart;
* topological degree is a generic fiber count and is independent of the
  sampling seed.
"""

import random
from fractions import Fraction

import pytest

from fixfree.poly import AFFINE_VARS, BI_VARS, MultiPoly, P2_VARS
from fixfree.scalars import GaussianRational, I
from fixfree.spaces import (
    INF,
    AllZeroComponentsError,
    IndeterminatePointError,
    NotDominantError,
    ProjMap,
    ProjPoint,
    SPACE_P1XP1,
    SPACE_P2,
    SpaceError,
    charts,
    compose,
    degree_report,
    evaluate,
    normalize_map,
    restrict_to_line,
    topological_degree,
)

X0, X1, Y0, Y1 = (MultiPoly.variable(v, BI_VARS) for v in BI_VARS)
Z0, Z1, Z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)


def affine(name):
    return MultiPoly.variable(name, AFFINE_VARS)


def hyperbola_pair_map():
    # first factor z2 / z1, second factor (z1^2 - 1) / (z2 - 1)
    z1, z2 = affine("z1"), affine("z2")
    one = MultiPoly.constant(AFFINE_VARS, 1)
    return ProjMap.from_affine_pair(z1, z2, z2 - one, z1 * z1 - one)


def squaring_map():
    return ProjMap.p2_self_map([Z0**2, Z1**2, Z2**2])


# --- points ---------------------------------------------------------


def test_point_canonical_and_equal():
    assert ProjPoint.p2(2, 4, 6) == ProjPoint.p2(1, 2, 3)
    assert str(ProjPoint.p2(2, 4, 6)) == "[1 : 2 : 3]"
    assert hash(ProjPoint.p2(2, 4, 6)) == hash(ProjPoint.p2(1, 2, 3))
    assert ProjPoint.p2(1, 0, 0) != ProjPoint.p2(0, 1, 0)


def test_point_gaussian_scaling():
    assert ProjPoint.p2(GaussianRational(0, 2), 2, 4) == ProjPoint.p2(1, -I, -2 * I)
    assert str(ProjPoint.p2(GaussianRational(0, 2), 2, 4)) == "[1 : -i : -2*i]"


def test_point_zero_rejected():
    with pytest.raises(SpaceError):
        ProjPoint.p2(0, 0, 0)
    with pytest.raises(SpaceError):
        ProjPoint.product((0, 0), (1, 2))


def test_product_point_affine_roundtrip():
    p = ProjPoint.from_affine(SPACE_P1XP1, (INF, Fraction(1, 2)))
    assert str(p) == "(inf, 1/2)"
    assert p.affine_values() == (INF, Fraction(1, 2))
    q = ProjPoint.product((0, 1), (2, 1))
    assert p == q
    finite = ProjPoint.from_affine(SPACE_P1XP1, (Fraction(2), Fraction(3)))
    assert finite.affine_values() == (Fraction(2), Fraction(3))


def test_point_immutable():
    p = ProjPoint.p2(1, 2, 3)
    with pytest.raises(AttributeError):
        p.groups = ()


# --- map construction -----------------------------------------------


def test_affine_pair_bihomogenization():
    f = hyperbola_pair_map()
    a1, b1 = f.pairs[0]
    a2, b2 = f.pairs[1]
    assert (str(a1), str(b1)) == ("x1*y0", "x0*y1")
    assert (str(a2), str(b2)) == ("-x0^2*y0 + x0^2*y1", "-x0^2*y0 + x1^2*y0")
    assert f.bidegree_matrix() == ((1, 1), (2, 1))


def test_group_validation():
    zero = MultiPoly.zero(P2_VARS)
    with pytest.raises(AllZeroComponentsError):
        ProjMap.p2_self_map([zero, zero, zero])
    with pytest.raises(SpaceError):
        ProjMap.p2_self_map([Z0, Z1**2, Z2])


def test_normalize_removes_common_factors():
    f = ProjMap.product_self_map((X0 * X1 * Y0, X0 * X0 * Y1), (Y0 * X0, Y1 * X0))
    g = normalize_map(f)
    assert g == ProjMap.product_self_map((X1 * Y0, X0 * Y1), (Y0, Y1))
    scaled = ProjMap.p2_self_map([2 * Z0, 2 * Z1, 2 * Z2])
    assert scaled != ProjMap.identity(SPACE_P2)
    assert normalize_map(scaled) == ProjMap.identity(SPACE_P2)


def test_degrees_of_groups():
    assert squaring_map().algebraic_degree() == 2
    assert squaring_map().group_degrees() == (2,)
    f = hyperbola_pair_map()
    assert f.group_degrees() == ((1, 1), (2, 1))


# --- evaluation -----------------------------------------------------


def test_evaluate_pinned():
    f = hyperbola_pair_map()
    pt = ProjPoint.from_affine(SPACE_P1XP1, (Fraction(2), Fraction(3)))
    image = evaluate(f, pt)
    assert image.affine_values() == (Fraction(3, 2), Fraction(3, 2))
    assert str(image) == "(3/2, 3/2)"


def test_evaluate_identity():
    p = ProjPoint.p2(1, 2, 3)
    assert evaluate(ProjMap.identity(SPACE_P2), p) == p


def test_evaluate_at_indeterminate_point():
    f = hyperbola_pair_map()
    with pytest.raises(IndeterminatePointError):
        evaluate(f, ProjPoint.from_affine(SPACE_P1XP1, (Fraction(1), Fraction(1))))


def test_evaluate_cross_space():
    comps = (X1 * Y0, X0 * Y1, X1 * Y1)
    f = ProjMap(SPACE_P1XP1, SPACE_P2, (comps,))
    pt = ProjPoint.from_affine(SPACE_P1XP1, (Fraction(5), Fraction(4)))
    assert str(evaluate(f, pt)) == "[1 : 4/5 : 4]"


def test_compose_matches_pointwise():
    f = hyperbola_pair_map()
    z1, z2 = affine("z1"), affine("z2")
    one = MultiPoly.constant(AFFINE_VARS, 1)
    swap = ProjMap.from_affine_pair(one, z2, one, z1)
    h = compose(swap, f)
    rng = random.Random(41)
    checked = 0
    while checked < 20:
        vals = (
            Fraction(rng.randrange(-20, 21), rng.randrange(1, 9)),
            Fraction(rng.randrange(-20, 21), rng.randrange(1, 9)),
        )
        pt = ProjPoint.from_affine(SPACE_P1XP1, vals)
        try:
            direct = evaluate(swap, evaluate(f, pt))
            composed = evaluate(h, pt)
        except IndeterminatePointError:
            continue
        assert composed == direct
        checked += 1


def test_compose_identity_neutral():
    f = hyperbola_pair_map()
    ident = ProjMap.identity(SPACE_P1XP1)
    assert normalize_map(compose(ident, f)) == normalize_map(f)
    assert normalize_map(compose(f, ident)) == normalize_map(f)


# --- charts ---------------------------------------------------------


def test_chart_labels():
    assert [c.label for c in charts(SPACE_P2)] == ["z0=1", "z1=1", "z2=1"]
    assert [c.label for c in charts(SPACE_P1XP1)] == [
        "x0=1,y0=1",
        "x0=1,y1=1",
        "x1=1,y0=1",
        "x1=1,y1=1",
    ]


def test_chart_restrict_and_point():
    ch = charts(SPACE_P1XP1)[0]
    assert ch.fixed == (("x0", 1), ("y0", 1))
    assert ch.affine_vars == ("x1", "y1")
    assert str(ch.restrict(X0 * X1 * Y0 + Y1 * X0**2)) == "x1 + y1"
    assert str(ch.point((Fraction(2), Fraction(3)))) == "(2, 3)"


# --- topological degree ---------------------------------------------


def test_topological_degree_pinned():
    assert topological_degree(squaring_map()) == 4
    assert topological_degree(ProjMap.identity(SPACE_P1XP1)) == 1
    assert topological_degree(ProjMap.identity(SPACE_P2)) == 1
    assert topological_degree(hyperbola_pair_map()) == 2


def test_topological_degree_seed_independent():
    f = hyperbola_pair_map()
    assert topological_degree(f, seed=5) == 2
    assert topological_degree(f, seed=17) == 2


def test_topological_degree_gaussian_coefficients():
    # [z0 z1 : z0 z2 : q z1 z2] is birational whenever q avoids roots of unity
    q = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    f = ProjMap.p2_self_map([Z0 * Z1, Z0 * Z2, (Z1 * Z2).scale(q)])
    assert topological_degree(f) == 1


def test_not_dominant():
    z1 = affine("z1")
    one = MultiPoly.constant(AFFINE_VARS, 1)
    diagonal = ProjMap.from_affine_pair(one, z1, one, z1)
    with pytest.raises(NotDominantError):
        topological_degree(diagonal)


def test_degree_report_p2():
    rep = degree_report(squaring_map())
    assert rep.space == SPACE_P2
    assert rep.topological_degree == 4
    assert rep.algebraic_degree == 2
    assert rep.skew_degree == 2
    assert rep.graph_volume == 9
    limit = ProjMap.p2_self_map([Z0 * Z1, Z0 * Z2, Z1 * Z2])
    assert degree_report(limit).topological_degree == 1
    assert degree_report(limit).graph_volume == 6


def test_degree_report_product():
    rep = degree_report(hyperbola_pair_map())
    assert rep.space == SPACE_P1XP1
    assert rep.topological_degree == 2
    assert rep.bidegree_matrix == ((1, 1), (2, 1))
    assert rep.bidegree_is_extension
    assert rep.algebraic_degree is None


# --- line restrictions ----------------------------------------------


def test_restrict_to_line_generic():
    f = hyperbola_pair_map()
    r = restrict_to_line(f, 1, Fraction(3))
    assert [(str(a), str(b)) for a, b in r.pairs] == [
        ("3*y0", "y1"),
        ("-y0 + y1", "8*y0"),
    ]
    assert not r.contracted
    assert r.image_point is None


def test_restrict_to_line_contracted():
    f = hyperbola_pair_map()
    r = restrict_to_line(f, 1, INF)
    assert r.contracted
    assert str(r.image_point) == "(0, inf)"


def test_restrict_to_line_partial_vanishing():
    f = hyperbola_pair_map()
    r = restrict_to_line(f, 2, Fraction(1))
    assert [(str(a), str(b)) for a, b in r.pairs] == [
        ("x1", "x0"),
        ("0", "-x0^2 + x1^2"),
    ]
    assert not r.contracted


def test_restrict_to_line_validation():
    with pytest.raises(SpaceError):
        restrict_to_line(squaring_map(), 1, Fraction(0))
    with pytest.raises(SpaceError):
        restrict_to_line(hyperbola_pair_map(), 3, Fraction(0))
