"""Constructors for the fixed-point-free families and their limit.

The product-space families share one skeleton: the first factor is
z2 / z1^k and the second is P / Q with P, Q chosen so that the
root-coincidence test passes (see analyzer.lemma_check).  The plane
family realizes the closure phenomenon: a sequence of fixed-point-free
maps [z0 z1 : z0 z2 : q_n z1 z2] whose phases q_n approach 1, with
limit a map carrying a whole conic of fixed points.

Phases live in Q(i): q_n = ((n^2 - 1) + 2n i) / (n^2 + 1) is exactly
unimodular (Pythagorean triples), tends to 1, and is never a root of
unity for n >= 2 because the only roots of unity in Q(i) are the
fourth ones.  n = 1 would give q = i and is rejected.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import AFFINE_VARS, MultiPoly, P2_VARS, gcd_poly
from .scalars import GaussianRational, Scalar, is_root_of_unity_q_i
from .spaces import ProjMap, normalize_map

#: Largest exponent the bidegree family accepts without the explicit
#: opt-in flag; elimination cost grows quickly with k.
BIDEGREE_DEFAULT_CAP = 6


class InvalidParameters(ValueError):
    """A family precondition failed; the map was not constructed."""


def _z():
    z1 = MultiPoly.variable("z1", AFFINE_VARS)
    z2 = MultiPoly.variable("z2", AFFINE_VARS)
    return z1, z2


def _univar(value):
    z = MultiPoly.variable("z", ("z",))
    return z - MultiPoly.constant(("z",), value)


def _coerce_scalar(value) -> Scalar:
    if isinstance(value, (int, Fraction, GaussianRational)):
        return Fraction(value) if isinstance(value, int) else value
    raise InvalidParameters(f"parameters must be exact scalars, got {value!r}")


def default_pairs(d: int) -> tuple:
    """The documented fallback parameters: (a_j, b_j) = (j+2, j+2+d)."""
    return tuple((Fraction(j + 2), Fraction(j + 2 + d)) for j in range(1, d + 1))


def _checked_pairs(d, pairs, exclude_roots=()):
    if not isinstance(d, int) or d < 1:
        raise InvalidParameters("d must be a positive integer")
    if pairs is None:
        pairs = default_pairs(d)
    pairs = tuple((_coerce_scalar(a), _coerce_scalar(b)) for a, b in pairs)
    if len(pairs) != d:
        raise InvalidParameters(f"expected {d} parameter pairs, got {len(pairs)}")
    quadratics = [_univar(a) * _univar(b) for a, b in pairs]
    for i in range(len(quadratics)):
        for j in range(i + 1, len(quadratics)):
            if not gcd_poly(quadratics[i], quadratics[j]).is_constant():
                raise InvalidParameters(
                    f"quadratics for pairs {i + 1} and {j + 1} share a root"
                )
    if exclude_roots:
        guard = MultiPoly.constant(("z",), 1)
        for r in exclude_roots:
            guard = guard * _univar(r)
        for i, q in enumerate(quadratics):
            if not gcd_poly(q, guard).is_constant():
                raise InvalidParameters(
                    f"pair {i + 1} shares a root with the fixed factor"
                )
    return pairs


def example22() -> ProjMap:
    """(z2 / z1, (z1^2 - 1) / (z2 - 1)): degree 2, four indeterminacy points."""
    z1, z2 = _z()
    one = MultiPoly.constant(AFFINE_VARS, 1)
    return normalize_map(ProjMap.from_affine_pair(z1, z2, z2 - one, z1 * z1 - one))


def example23() -> ProjMap:
    """(z2 / z1, (z1-1)(z1-2)(3 z1 - 2) / (z2 - 3 z1 + 2)): degree 3."""
    z1, z2 = _z()
    one = MultiPoly.constant(AFFINE_VARS, 1)
    num = (z1 - one) * (z1 - 2 * one) * (3 * z1 - 2 * one)
    den = z2 - 3 * z1 + 2 * one
    return normalize_map(ProjMap.from_affine_pair(z1, z2, den, num))


def even(d: int, pairs=None) -> ProjMap:
    """The even-degree family: degree 2d + 2.

    Numerator (z1^2 - 1) prod (z1 - a_j)(z1 - b_j) over denominator
    prod (z2 - (a_j + b_j) z1 + a_j b_j); the quadratics
    (z - a_j)(z - b_j) must be pairwise coprime.
    """
    pairs = _checked_pairs(d, pairs)
    z1, z2 = _z()
    one = MultiPoly.constant(AFFINE_VARS, 1)
    num = z1 * z1 - one
    den = one
    for a, b in pairs:
        num = num * (z1 - a * one) * (z1 - b * one)
        den = den * (z2 - (a + b) * z1 + (a * b) * one)
    return normalize_map(ProjMap.from_affine_pair(z1, z2, den, num))


def odd(d: int, pairs=None) -> ProjMap:
    """The odd-degree family: degree 2d + 3.

    Same shape as the even family with the extra factor
    (z1-1)(z1-2)(3 z1 - 2) / (z2 - 3 z1 + 2), so the quadratics must
    additionally avoid the roots 1 and 2.
    """
    pairs = _checked_pairs(d, pairs, exclude_roots=(Fraction(1), Fraction(2)))
    z1, z2 = _z()
    one = MultiPoly.constant(AFFINE_VARS, 1)
    num = (z1 - one) * (z1 - 2 * one) * (3 * z1 - 2 * one)
    den = z2 - 3 * z1 + 2 * one
    for a, b in pairs:
        num = num * (z1 - a * one) * (z1 - b * one)
        den = den * (z2 - (a + b) * z1 + (a * b) * one)
    return normalize_map(ProjMap.from_affine_pair(z1, z2, den, num))


def power(k: int) -> ProjMap:
    """(z2 / z1^k, (z1^(k+1) - 1) / (z2 - 1)): degree k + 1."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParameters("k must be a positive integer")
    z1, z2 = _z()
    one = MultiPoly.constant(AFFINE_VARS, 1)
    return normalize_map(
        ProjMap.from_affine_pair(z1**k, z2, z2 - one, z1 ** (k + 1) - one)
    )


def bidegree(k: int, allow_large: bool = False) -> ProjMap:
    """(z2^k / z1^(k-1), (z1^k - 1) / (z2^k - 1)).

    The certification cost climbs steeply with k, so k is capped at
    BIDEGREE_DEFAULT_CAP unless allow_large is set.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParameters("k must be a positive integer")
    if k > BIDEGREE_DEFAULT_CAP and not allow_large:
        raise InvalidParameters(
            f"k > {BIDEGREE_DEFAULT_CAP} needs allow_large=True"
        )
    z1, z2 = _z()
    one = MultiPoly.constant(AFFINE_VARS, 1)
    return normalize_map(
        ProjMap.from_affine_pair(z1 ** (k - 1), z2**k, z2**k - one, z1**k - one)
    )


def closure_phase(n: int) -> GaussianRational:
    """The exactly unimodular phase q_n = ((n^2 - 1) + 2n i) / (n^2 + 1)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameters("n must be a positive integer")
    q = GaussianRational(
        Fraction(n * n - 1, n * n + 1), Fraction(2 * n, n * n + 1)
    )
    if is_root_of_unity_q_i(q):
        raise InvalidParameters(
            f"phase for n={n} is a root of unity; the family needs n >= 2"
        )
    return q


def closure(n: int) -> ProjMap:
    """[z0 z1 : z0 z2 : q_n z1 z2] on P^2, over Q(i)."""
    q = closure_phase(n)
    z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
    return normalize_map(
        ProjMap.p2_self_map([z0 * z1, z0 * z2, (z1 * z2).scale(q)])
    )


def limit_of_closure_family() -> ProjMap:
    """[z0 z1 : z0 z2 : z1 z2]: the phase-1 limit, with a conic of fixed points."""
    z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
    return normalize_map(ProjMap.p2_self_map([z0 * z1, z0 * z2, z1 * z2]))


@dataclass(frozen=True)
class FamilySpec:
    """A family name with its parameters, the CLI `generate` vocabulary."""

    family: str
    d: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    pairs: Optional[tuple] = None
    allow_large: bool = False


def build(spec: FamilySpec) -> ProjMap:
    name = spec.family
    if name == "example22":
        return example22()
    if name == "example23":
        return example23()
    if name == "even":
        if spec.d is None:
            raise InvalidParameters("the even family needs d")
        return even(spec.d, spec.pairs)
    if name == "odd":
        if spec.d is None:
            raise InvalidParameters("the odd family needs d")
        return odd(spec.d, spec.pairs)
    if name == "power":
        if spec.k is None:
            raise InvalidParameters("the power family needs k")
        return power(spec.k)
    if name == "bidegree":
        if spec.k is None:
            raise InvalidParameters("the bidegree family needs k")
        return bidegree(spec.k, allow_large=spec.allow_large)
    if name == "closure":
        if spec.n is None:
            raise InvalidParameters("the closure family needs n")
        return closure(spec.n)
    raise InvalidParameters(f"unknown family {name!r}")


def standard_members():
    """The named fixtures exercised by tests and demos, one per family knob."""
    return (
        ("example22", example22()),
        ("example23", example23()),
        ("even(1)", even(1)),
        ("even(2)", even(2)),
        ("even(3)", even(3)),
        ("odd(1)", odd(1)),
        ("odd(2)", odd(2)),
        ("power(2)", power(2)),
        ("power(3)", power(3)),
        ("power(4)", power(4)),
        ("bidegree(2)", bidegree(2)),
        ("bidegree(3)", bidegree(3)),
        ("closure(2)", closure(2)),
        ("closure(3)", closure(3)),
    )
