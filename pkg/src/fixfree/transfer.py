"""Carrying self-maps of the product surface over to the plane.

Blowing up one point of P^1 x P^1 and blowing down the two ruling
lines through it yields P^2, so a self-map of the product conjugates
to a self-map of the plane.  Freedom from fixed points survives the
move whenever the center stays clear of a short list of bad sets: the
center, its image and its preimages must all be regular points, and
the two ruling lines through the center must avoid the image, the
preimages and the indeterminacy locus, and must not be contracted.

This module builds the exchange for an arbitrary center, decides the
conditions above exactly, and searches small rational centers for one
that passes.  Whether the input actually is fixed point free is the
caller's business; the conditions themselves make sense for any map.
"""

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .ideals import PolyIdeal, radical_membership
from .poly import BI_VARS, MultiPoly, P2_VARS
from .scalars import scalar_is_zero
from .spaces import (
    INF,
    IndeterminatePointError,
    Infinity,
    LineInsideIndeterminacyError,
    ProjMap,
    ProjPoint,
    SPACE_P1XP1,
    SPACE_P2,
    SpaceError,
    charts,
    compose,
    evaluate,
    normalize_map,
    restrict_to_line,
)

CONDITION_NAMES = (
    "center_regular",
    "image_regular",
    "preimages_regular",
    "lines_avoid_critical_points",
    "lines_avoid_indeterminacy",
    "lines_not_contracted",
)


class SearchExhausted(RuntimeError):
    """No acceptable center inside the candidate budget."""


class HypothesesFailed(RuntimeError):
    """Transfer attempted at a center that fails a condition."""

    def __init__(self, report):
        failed = ", ".join(c.name for c in report.conditions if not c.passed)
        super().__init__(f"the center {report.center} fails: {failed}")
        self.report = report


@dataclass(frozen=True)
class ConditionVerdict:
    """One transfer condition with the exact facts behind the verdict."""

    name: str
    passed: bool
    facts: tuple


@dataclass(frozen=True)
class HypothesisReport:
    center: ProjPoint
    conditions: tuple

    @property
    def all_pass(self):
        return all(c.passed for c in self.conditions)

    def condition(self, name):
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)


@dataclass(frozen=True)
class ElementaryTransform:
    """The birational exchange and its center.

    forward goes from P^1 x P^1 to P^2 and is undefined exactly at the
    center; inverse goes back.  The two compositions normalize to the
    identity of the respective space.
    """

    center: ProjPoint
    forward: ProjMap
    inverse: ProjMap


def _bi_gens():
    return tuple(MultiPoly.variable(v, BI_VARS) for v in BI_VARS)


def _coerce_center(center):
    if isinstance(center, ProjPoint):
        if center.space != SPACE_P1XP1:
            raise SpaceError("the center must be a point of P^1 x P^1")
        return center
    return ProjPoint.from_affine(SPACE_P1XP1, tuple(center))


def _recentering(center):
    """Product automorphisms moving the center to (0, 0) and back."""
    x0, x1, y0, y1 = _bi_gens()
    move, back = [], []
    for value, (u0, u1) in zip(center.affine_values(), ((x0, x1), (y0, y1))):
        if isinstance(value, Infinity):
            move.append((u1, u0))
            back.append((u1, u0))
        else:
            move.append((u0, u1 - u0.scale(value)))
            back.append((u0, u1 + u0.scale(value)))
    return ProjMap.product_self_map(*move), ProjMap.product_self_map(*back)


def elementary_transform(center) -> ElementaryTransform:
    """Blow up the center, blow down the two rulings through it.

    For the center (0, 0) the forward map sends (z1, z2) to
    [z1 : z2 : z1*z2] and the inverse sends [u0 : u1 : u2] to
    (u2/u1, u2/u0).  Any other center is first moved to (0, 0) by
    factorwise Moebius maps, z - c for finite c and 1/z for infinity.

    The center may be a ProjPoint or a pair of affine factor values
    with INF marking the point at infinity.
    """
    center = _coerce_center(center)
    x0, x1, y0, y1 = _bi_gens()
    z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
    standard_forward = ProjMap(
        SPACE_P1XP1, SPACE_P2, ((x1 * y0, x0 * y1, x1 * y1),)
    )
    standard_inverse = ProjMap(SPACE_P2, SPACE_P1XP1, ((z1, z2), (z0, z2)))
    move, back = _recentering(center)
    return ElementaryTransform(
        center=center,
        forward=compose(standard_forward, move),
        inverse=compose(back, standard_inverse),
    )


# === the transfer conditions ========================================


def _fiber_equations_over(f, center):
    """Equations cutting out the preimage of the center."""
    eqs = []
    for (a, b), (w0, w1) in zip(f.pairs, center.groups):
        eqs.append(a.scale(w1) - b.scale(w0))
    return eqs


def _line_polys(center):
    """Bihomogeneous equations of the two ruling lines through the center."""
    x0, x1, y0, y1 = _bi_gens()
    (c0, c1), (d0, d1) = center.groups
    vertical = x0.scale(c1) - x1.scale(c0)
    horizontal = y0.scale(d1) - y1.scale(d0)
    return vertical, horizontal


def _on_line(point, line_poly):
    values = {
        "x0": point.groups[0][0],
        "x1": point.groups[0][1],
        "y0": point.groups[1][0],
        "y1": point.groups[1][1],
    }
    return scalar_is_zero(line_poly.evaluate(values))


def _empty_on_every_chart(polys):
    """Whether bihomogeneous equations share no zero on the surface.

    Returns (True, None) or (False, label of a chart with a solution).
    """
    for chart in charts(SPACE_P1XP1):
        gens = [chart.restrict(p) for p in polys]
        gens = [g for g in gens if not g.is_zero()]
        if not gens or not PolyIdeal(gens).is_inconsistent():
            return False, chart.label
    return True, None


def _zeros_confined(polys, confining):
    """Whether every surface zero of polys also kills every confining poly.

    Fiber equations vanish identically wherever a whole component pair
    does, so their zero set picks up the indeterminacy points no matter
    what the target point is.  Conditions on the honest preimages must
    therefore allow zeros that are confined to the indeterminacy locus
    instead of demanding an empty set.  Decided per chart: the ideal of
    the restricted equations is either inconsistent or contains each
    confining polynomial in its radical.
    """
    for chart in charts(SPACE_P1XP1):
        gens = [chart.restrict(p) for p in polys]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            return False, chart.label
        ideal = PolyIdeal(gens)
        if ideal.is_inconsistent():
            continue
        for c in confining:
            rc = chart.restrict(c)
            if rc.is_zero():
                continue
            if not radical_membership(rc, ideal):
                return False, chart.label
    return True, None


def _iter_conditions(f, center):
    """Yield the six condition verdicts in their canonical order.

    Lazy on purpose: a consumer that stops at the first failure skips
    the Groebner work of the remaining conditions.
    """
    image = None
    try:
        image = evaluate(f, center)
        yield ConditionVerdict(
            "center_regular", True, (f"f(center) = {image}",)
        )
    except IndeterminatePointError:
        yield ConditionVerdict(
            "center_regular", False, ("the center is an indeterminacy point",)
        )

    if image is None:
        yield ConditionVerdict("image_regular", False, ("no image to test",))
    elif image == center:
        yield ConditionVerdict(
            "image_regular", False, ("the center is a fixed point",)
        )
    else:
        try:
            evaluate(f, image)
            yield ConditionVerdict(
                "image_regular", True, (f"f is defined at {image}",)
            )
        except IndeterminatePointError:
            yield ConditionVerdict(
                "image_regular",
                False,
                (f"the image {image} is an indeterminacy point",),
            )

    fiber = _fiber_equations_over(f, center)
    (a1, b1), (a2, b2) = f.pairs
    other = {1: (a2, b2), 2: (a1, b1)}
    products = (a1 * a2, a1 * b2, b1 * a2, b1 * b2)

    # A preimage branch of the center that ends at a point where only
    # one pair vanishes makes that point a meromorphic preimage and it
    # is not regular.  Points where both pairs vanish stay indeterminate
    # under conjugation, so zeros confined there are harmless.
    facts, ok = [], True
    for j, pair in enumerate(f.pairs, start=1):
        confined, where = _zeros_confined(
            list(fiber) + list(pair), other[j]
        )
        if confined:
            facts.append(
                f"no preimage of the center degenerates to a zero of pair {j}"
            )
        else:
            ok = False
            facts.append(
                f"a preimage of the center ends at a zero of pair {j}"
                f" alone (chart {where})"
            )
    yield ConditionVerdict("preimages_regular", ok, tuple(facts))

    vertical, horizontal = _line_polys(center)
    lines = (("vertical line", vertical), ("horizontal line", horizontal))

    facts, ok = [], True
    if image is None:
        ok = False
        facts.append("no image to keep off the lines")
    for label, line in lines:
        if image is not None and _on_line(image, line):
            ok = False
            facts.append(f"the image of the center lies on the {label}")
        confined, where = _zeros_confined(list(fiber) + [line], products)
        if confined:
            facts.append(f"no honest preimage of the center on the {label}")
        else:
            ok = False
            facts.append(
                f"a preimage of the center meets the {label} on chart {where}"
            )
    yield ConditionVerdict("lines_avoid_critical_points", ok, tuple(facts))

    facts, ok = [], True
    for label, line in lines:
        for j, pair in enumerate(f.pairs, start=1):
            empty, where = _empty_on_every_chart(list(pair) + [line])
            if empty:
                facts.append(f"pair {j} has no zero on the {label}")
            else:
                ok = False
                facts.append(
                    f"pair {j} vanishes on the {label} (chart {where})"
                )
    yield ConditionVerdict("lines_avoid_indeterminacy", ok, tuple(facts))

    facts, ok = [], True
    values = center.affine_values()
    for axis, label in ((1, "vertical line"), (2, "horizontal line")):
        try:
            restriction = restrict_to_line(f, axis, values[axis - 1])
        except LineInsideIndeterminacyError:
            ok = False
            facts.append(f"the {label} lies inside the indeterminacy locus")
            continue
        if restriction.contracted:
            ok = False
            facts.append(
                f"the {label} is contracted to {restriction.image_point}"
            )
        else:
            facts.append(f"the image of the {label} moves")
    yield ConditionVerdict("lines_not_contracted", ok, tuple(facts))


def check_hypotheses(f: ProjMap, center) -> HypothesisReport:
    """Decide the six transfer conditions exactly.

    Regularity of single points is decided by evaluation; emptiness of
    the fiber-line and indeterminacy-line intersections by Groebner
    bases on the four affine charts; contraction by restriction to the
    line.  The report carries every verdict, failures included.
    """
    if f.source != SPACE_P1XP1 or f.target != SPACE_P1XP1:
        raise SpaceError("transfer starts from a self-map of P^1 x P^1")
    f = normalize_map(f)
    center = _coerce_center(center)
    return HypothesisReport(
        center=center, conditions=tuple(_iter_conditions(f, center))
    )


def find_center(f: ProjMap, seed: int, budget: int = 500) -> ProjPoint:
    """First center in a seeded enumeration that passes every condition.

    Candidates are the points whose coordinates are fractions a/b with
    |a| <= 10 and 1 <= b <= 5, in an order shuffled by the seed, then
    four points with an infinite coordinate.  Only `budget` candidates
    are tried; after that SearchExhausted.
    """
    if f.source != SPACE_P1XP1 or f.target != SPACE_P1XP1:
        raise SpaceError("transfer starts from a self-map of P^1 x P^1")
    f = normalize_map(f)
    values = sorted(
        {Fraction(a, b) for a in range(-10, 11) for b in range(1, 6)}
    )
    grid = [(u, v) for u in values for v in values]
    Random(seed).shuffle(grid)
    grid.extend(((INF, 0), (0, INF), (INF, 1), (INF, INF)))
    tried = 0
    for pair in grid:
        if tried >= budget:
            break
        tried += 1
        center = ProjPoint.from_affine(SPACE_P1XP1, pair)
        if all(c.passed for c in _iter_conditions(f, center)):
            return center
    raise SearchExhausted(f"no passing center among {tried} candidates")


def transfer_map(f: ProjMap, center) -> ProjMap:
    """Conjugate a self-map of P^1 x P^1 into a self-map of P^2.

    The center must pass check_hypotheses, else HypothesesFailed with
    the report attached.  The conditions are what keeps a fixed-point
    free input fixed point free after the move.
    """
    report = check_hypotheses(f, center)
    if not report.all_pass:
        raise HypothesesFailed(report)
    t = elementary_transform(report.center)
    return compose(t.forward, compose(f, t.inverse))
