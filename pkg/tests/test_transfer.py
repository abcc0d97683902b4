"""The product-to-plane exchange: transform, conditions, transfer."""

from fractions import Fraction
from random import Random

import pytest

from fixfree import catalog
from fixfree.analyzer import classify, FIXED_POINT_FREE
from fixfree.scalars import I
from fixfree.spaces import (
    INF,
    IndeterminatePointError,
    ProjMap,
    ProjPoint,
    SPACE_P1XP1,
    SPACE_P2,
    SpaceError,
    compose,
    evaluate,
    topological_degree,
)
from fixfree.transfer import (
    CONDITION_NAMES,
    HypothesesFailed,
    SearchExhausted,
    check_hypotheses,
    elementary_transform,
    find_center,
    transfer_map,
)


def product_point(u, v):
    return ProjPoint.from_affine(SPACE_P1XP1, (u, v))


def test_standard_transform_shape():
    t = elementary_transform((0, 0))
    assert [str(p) for p in t.forward.p2_components] == [
        "x1*y0",
        "x0*y1",
        "x1*y1",
    ]
    assert [[str(p) for p in pair] for pair in t.inverse.pairs] == [
        ["z1", "z2"],
        ["z0", "z2"],
    ]


@pytest.mark.parametrize(
    "center", [(0, 0), (3, 5), (Fraction(-3, 2), Fraction(6, 5)), (INF, 2), (INF, INF)]
)
def test_transform_round_trips(center):
    t = elementary_transform(center)
    assert compose(t.forward, t.inverse) == ProjMap.identity(SPACE_P2)
    assert compose(t.inverse, t.forward) == ProjMap.identity(SPACE_P1XP1)


def test_transform_contracts_the_rulings():
    t = elementary_transform((0, 0))
    for v in (5, Fraction(-1, 3), INF):
        assert str(evaluate(t.forward, product_point(0, v))) == "[0 : 1 : 0]"
        assert str(evaluate(t.forward, product_point(v, 0))) == "[1 : 0 : 0]"
    with pytest.raises(IndeterminatePointError):
        evaluate(t.forward, product_point(0, 0))


def test_transform_round_trip_on_points():
    t = elementary_transform((2, -1))
    rng = Random(5)
    hits = 0
    for _ in range(200):
        pt = product_point(
            Fraction(rng.randint(-30, 30), rng.randint(1, 5)),
            Fraction(rng.randint(-30, 30), rng.randint(1, 5)),
        )
        try:
            back = evaluate(t.inverse, evaluate(t.forward, pt))
        except IndeterminatePointError:
            continue
        assert back == pt
        hits += 1
    assert hits > 150


def test_hypotheses_pass_at_a_generic_center():
    rep = check_hypotheses(catalog.example22(), (3, 5))
    assert rep.all_pass
    assert tuple(c.name for c in rep.conditions) == CONDITION_NAMES
    assert rep.condition("center_regular").facts == ("f(center) = (5/3, 2)",)


@pytest.mark.parametrize("center", [(0, 0), (1, 1), (-1, 1), (INF, INF)])
def test_hypotheses_fail_at_indeterminacy_points(center):
    rep = check_hypotheses(catalog.example22(), center)
    assert not rep.condition("center_regular").passed
    assert not rep.all_pass


def test_hypotheses_fail_when_a_line_hits_indeterminacy():
    # the vertical line through (1, 5) passes through (1, 1)
    rep = check_hypotheses(catalog.example22(), (1, 5))
    assert not rep.condition("lines_avoid_indeterminacy").passed


def test_find_center_is_deterministic():
    f = catalog.example22()
    center = find_center(f, seed=1)
    assert center == product_point(Fraction(-3, 2), Fraction(6, 5))
    assert find_center(f, seed=1) == center


def test_find_center_budget():
    with pytest.raises(SearchExhausted):
        find_center(catalog.example22(), seed=0, budget=0)


def test_transfer_rejects_a_failing_center():
    with pytest.raises(HypothesesFailed) as err:
        transfer_map(catalog.example22(), (0, 0))
    failed = [c.name for c in err.value.report.conditions if not c.passed]
    assert "center_regular" in failed


def test_transfer_rejects_plane_maps():
    with pytest.raises(SpaceError):
        find_center(catalog.closure(2), seed=0)
    with pytest.raises(SpaceError):
        check_hypotheses(catalog.closure(2), (3, 5))


def test_transfer_of_the_first_example():
    f = catalog.example22()
    g = transfer_map(f, find_center(f, seed=1))
    assert g.source == g.target == SPACE_P2
    assert g.algebraic_degree() == 5
    assert topological_degree(g) == 2
    assert classify(g).verdict == FIXED_POINT_FREE


def test_transfer_of_the_second_example():
    f = catalog.example23()
    g = transfer_map(f, find_center(f, seed=1))
    assert g.algebraic_degree() == 6
    assert topological_degree(g) == 3
    assert classify(g).verdict == FIXED_POINT_FREE


def test_transfer_of_the_even_family():
    f = catalog.even(1)
    g = transfer_map(f, find_center(f, seed=1))
    assert g.algebraic_degree() == 7
    assert topological_degree(g) == 4
    assert classify(g).verdict == FIXED_POINT_FREE


def test_transfer_over_the_gaussian_field():
    f = catalog.even(1, [(I, -I)])
    center = find_center(f, seed=3)
    g = transfer_map(f, center)
    assert g.algebraic_degree() == 7


def test_conjugation_identity_off_the_bad_sets():
    f = catalog.example22()
    center = (-3, 7)
    assert check_hypotheses(f, center).all_pass
    t = elementary_transform(center)
    g = transfer_map(f, center)
    rng = Random(5)
    hits = 0
    while hits < 40:
        pt = product_point(
            Fraction(rng.randint(-40, 40), rng.randint(1, 7)),
            Fraction(rng.randint(-40, 40), rng.randint(1, 7)),
        )
        try:
            lhs = evaluate(g, evaluate(t.forward, pt))
            rhs = evaluate(t.forward, evaluate(f, pt))
        except IndeterminatePointError:
            continue
        assert lhs == rhs
        hits += 1
