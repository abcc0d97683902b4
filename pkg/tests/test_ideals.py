"""Groebner bases, radical membership, zero counting.

Reduced bases are cross-checked against sympy's groebner on the same
systems; counting and membership answers are pinned by hand.
"""

import random
from fractions import Fraction

import pytest
import sympy

from fixfree.ideals import (
    NotZeroDimensionalError,
    PolyIdeal,
    count_distinct_zeros,
    groebner_basis,
    quotient_dimension,
    radical_membership,
    reduce_poly,
    univariate_eliminant,
)
from fixfree.poly import AFFINE_VARS, MultiPoly, grlex_key
from fixfree.scalars import I

from helpers import random_poly, to_sympy


def var(name):
    return MultiPoly.variable(name, AFFINE_VARS)


def one():
    return MultiPoly.constant(AFFINE_VARS, 1)


# circle of radius 2 meeting the parabola z2 = z1^2, four transverse points
def circle_parabola():
    z1, z2 = var("z1"), var("z2")
    return PolyIdeal([z1**2 + z2**2 - 4 * one(), z2 - z1**2])


def test_groebner_pinned():
    z1, z2 = var("z1"), var("z2")
    gb = circle_parabola().groebner_basis()
    assert set(gb) == {z2**2 + z2 - 4 * one(), z1**2 - z2}


def test_groebner_deterministic_under_permutation():
    ideal = circle_parabola()
    gens = list(ideal.generators)
    forward = groebner_basis(gens)
    backward = groebner_basis(list(reversed(gens)))
    assert forward == backward


def test_groebner_against_sympy():
    rng = random.Random(31)
    syms = [sympy.Symbol(v) for v in AFFINE_VARS]
    table = dict(zip(AFFINE_VARS, syms))
    for _ in range(10):
        gens = [random_poly(rng, AFFINE_VARS, max_deg=2, terms=3) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        mine = groebner_basis(gens, order="lex")
        theirs = sympy.groebner(
            [to_sympy(g, table) for g in gens], *syms, order="lex"
        )
        mine_set = {to_sympy(g, table) for g in mine}
        theirs_set = {sympy.expand(sympy.monic(p, *syms).as_expr()) for p in theirs.polys}
        assert mine_set == theirs_set


def test_membership():
    z1, z2 = var("z1"), var("z2")
    ideal = circle_parabola()
    g1, g2 = ideal.generators
    assert ideal.contains(g1 + g2 * z1)
    assert ideal.contains(g1 * z2 - g2)
    assert not ideal.contains(one())
    assert not ideal.contains(z1)


def test_reduction_properties():
    ideal = circle_parabola()
    basis = ideal.groebner_basis()
    z1, z2 = var("z1"), var("z2")
    p = z1**3 * z2 - 2 * z1 + 1
    r = reduce_poly(p, basis, grlex_key)
    assert reduce_poly(r, basis, grlex_key) == r
    assert ideal.contains(p - r)


def test_radical_membership():
    z1, z2 = var("z1"), var("z2")
    square = PolyIdeal([z1**2])
    assert radical_membership(z1, square)
    assert not radical_membership(z2, square)
    assert not square.contains(z1)
    # the whole ring is its own radical
    assert radical_membership(one(), PolyIdeal([one()]))


def test_eliminants():
    z1, z2 = var("z1"), var("z2")
    ideal = circle_parabola()
    # eliminants come back over the single surviving variable
    t1 = MultiPoly.variable("z1", ("z1",))
    t2 = MultiPoly.variable("z2", ("z2",))
    assert univariate_eliminant(ideal, "z1") == t1**4 + t1**2 - 4
    assert univariate_eliminant(ideal, "z2") == t2**2 + t2 - 4
    # a positive-dimensional ideal has no univariate eliminant
    assert univariate_eliminant(PolyIdeal([z1 - z2]), "z1") is None


def test_quotient_dimension_and_zero_count():
    ideal = circle_parabola()
    assert quotient_dimension(ideal) == 4
    assert count_distinct_zeros(ideal) == 4


def test_distinct_zeros_sees_through_multiplicity():
    z1, z2 = var("z1"), var("z2")
    fat = PolyIdeal([z1**2, z2 - one()])
    assert quotient_dimension(fat) == 2
    assert count_distinct_zeros(fat) == 1


def test_zero_count_degenerate_cases():
    z1, z2 = var("z1"), var("z2")
    assert count_distinct_zeros(PolyIdeal([z1, z1 - one()])) == 0
    with pytest.raises(NotZeroDimensionalError):
        count_distinct_zeros(PolyIdeal([z1**2 - z2**2]))


def test_zero_count_accepts_precomputed_eliminants():
    ideal = circle_parabola()
    elim = {v: univariate_eliminant(ideal, v) for v in AFFINE_VARS}
    assert count_distinct_zeros(ideal, eliminants=elim) == 4


def test_inconsistency():
    z1 = var("z1")
    assert PolyIdeal([z1, z1 - one()]).is_inconsistent()
    assert not PolyIdeal([z1]).is_inconsistent()


def test_gaussian_coefficients():
    z1, z2 = var("z1"), var("z2")
    # z1^2 + 1 splits over Q(i); the ideal cuts out two points
    ideal = PolyIdeal([z1**2 + one(), z2])
    assert count_distinct_zeros(ideal) == 2
    assert radical_membership(z1 - MultiPoly.constant(AFFINE_VARS, I), ideal) is False
    product = (z1 - MultiPoly.constant(AFFINE_VARS, I)) * (
        z1 + MultiPoly.constant(AFFINE_VARS, I)
    )
    assert ideal.contains(product)


def test_membership_random_combinations():
    rng = random.Random(32)
    ideal = circle_parabola()
    g1, g2 = ideal.generators
    for _ in range(20):
        a = random_poly(rng, AFFINE_VARS, max_deg=2, terms=2)
        b = random_poly(rng, AFFINE_VARS, max_deg=2, terms=2)
        assert ideal.contains(g1 * a + g2 * b)
