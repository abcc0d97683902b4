"""Shared test utilities: random polynomial draws and sympy conversion."""

from fractions import Fraction

import sympy

from fixfree.poly import MultiPoly


def random_poly(rng, vars, max_deg=3, terms=4):
    out = MultiPoly.zero(vars)
    for _ in range(terms):
        e = tuple(rng.randrange(0, max_deg + 1) for _ in vars)
        c = Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
        out = out + MultiPoly(vars, {e: c})
    return out


def to_sympy(p, syms):
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, k in zip(p.vars, e):
            term *= syms[v] ** k
        expr += term
    return sympy.expand(expr)
