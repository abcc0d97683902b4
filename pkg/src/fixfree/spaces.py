"""Points, charts, and rational self-maps of P^2 and P^1 x P^1.

A map is stored through its component polynomials, grouped by target
factor: a map into P^2 carries one group of three forms, a map into
P^1 x P^1 carries two groups of two.  Within a pair (A, B) the image
point of the factor is [A : B], so the affine value of that factor is
B / A.  An affine rational function N / D therefore enters as the pair
(D, N), with infinity at the zeros of D.

Source space dictates the variables: self-maps of P^2 use z0, z1, z2
and their components are homogeneous of a common degree per group;
maps out of P^1 x P^1 use x0, x1, y0, y1 and their components are
bihomogeneous of a common bidegree per group.  Cross-space maps are
allowed and composition threads through them.

The topological degree is computed by exact fiber counting: pick a
random rational target point, write down the fiber equations, count
distinct complex solutions chart by chart (splitting each space into
disjoint affine strata so nothing is counted twice), subtract the
points that are actually indeterminate, and take a majority vote over
three target points.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ideals import (
    NotZeroDimensionalError,
    PolyIdeal,
    count_distinct_zeros,
)
from .poly import (
    AFFINE_VARS,
    BI_VARS,
    P2_VARS,
    MultiPoly,
    bidegree_of,
    bihomogenize,
    exact_divide,
    gcd_bihomogeneous,
    gcd_poly,
    homogeneous_degree,
    resultant,
    squarefree_part,
)
from .scalars import format_scalar, scalar_inverse, scalar_is_zero

SPACE_P2 = "P2"
SPACE_P1XP1 = "P1xP1"

SPACES = (SPACE_P2, SPACE_P1XP1)


class SpaceError(ValueError):
    """A point or map does not fit the space it claims to live in."""


class IndeterminatePointError(ValueError):
    """Evaluation was attempted at a point where the map is undefined."""


class AllZeroComponentsError(ValueError):
    """A component group vanished identically."""


class NotDominantError(ValueError):
    """Fiber counting found empty generic fibers."""


class DegreeUndeterminedError(RuntimeError):
    """Fiber counts refused to stabilise within the sampling budget."""


class LineInsideIndeterminacyError(ValueError):
    """The requested line lies inside the indeterminacy locus."""


class _DegenerateSample(Exception):
    # internal: the sampled target point produced a positive dimensional
    # fiber, so the sample must be redrawn
    pass


class Infinity:
    """The point at infinity of an affine coordinate line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"


INF = Infinity()


# === points =========================================================


def _canonical_group(coords):
    coords = tuple(coords)
    pivot = None
    for c in coords:
        if not scalar_is_zero(c):
            pivot = c
            break
    if pivot is None:
        raise SpaceError("projective coordinates cannot all vanish")
    if pivot == 1:
        return coords
    inv = scalar_inverse(pivot)
    out = []
    for c in coords:
        v = c * inv
        if not isinstance(v, Fraction) and v.im == 0:
            v = v.re
        out.append(v)
    return tuple(out)


class ProjPoint:
    """A point of P^2 or P^1 x P^1 with canonical coordinates.

    Each coordinate group is scaled so that its first nonzero entry is
    one, which makes equality and hashing plain tuple comparisons.
    """

    __slots__ = ("space", "groups")

    def __init__(self, space, groups):
        if space not in SPACES:
            raise SpaceError(f"unknown space {space!r}")
        groups = tuple(_canonical_group(g) for g in groups)
        if space == SPACE_P2:
            if len(groups) != 1 or len(groups[0]) != 3:
                raise SpaceError("a point of P^2 needs three coordinates")
        else:
            if len(groups) != 2 or any(len(g) != 2 for g in groups):
                raise SpaceError("a point of P^1 x P^1 needs two coordinate pairs")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "groups", groups)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @classmethod
    def p2(cls, c0, c1, c2):
        return cls(SPACE_P2, ((c0, c1, c2),))

    @classmethod
    def product(cls, first, second):
        return cls(SPACE_P1XP1, (tuple(first), tuple(second)))

    @classmethod
    def from_affine(cls, space, values):
        """Build a point from affine values, INF marking u0 = 0.

        For P^1 x P^1 the values are the two factor values; a factor
        with value v becomes [1 : v] and INF becomes [0 : 1].  For P^2
        the values are (z1, z2) in the chart z0 = 1 and INF is not
        allowed.
        """
        values = tuple(values)
        if len(values) != 2:
            raise SpaceError("expected two affine values")
        if space == SPACE_P2:
            if any(isinstance(v, Infinity) for v in values):
                raise SpaceError("points at infinity of P^2 need projective coordinates")
            return cls.p2(1, values[0], values[1])
        groups = []
        for v in values:
            groups.append((0, 1) if isinstance(v, Infinity) else (1, v))
        return cls(SPACE_P1XP1, tuple(groups))

    def affine_values(self):
        """Per-factor affine values of a product point, INF where u0 = 0."""
        if self.space != SPACE_P1XP1:
            raise SpaceError("affine factor values only exist on P^1 x P^1")
        out = []
        for a, b in self.groups:
            if scalar_is_zero(a):
                out.append(INF)
            else:
                out.append(b)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.space == other.space and self.groups == other.groups

    def __hash__(self):
        return hash((self.space, self.groups))

    def __repr__(self):
        return f"ProjPoint({self})"

    def __str__(self):
        if self.space == SPACE_P2:
            inner = " : ".join(format_scalar(c) for c in self.groups[0])
            return f"[{inner}]"
        parts = []
        for v in self.affine_values():
            parts.append("inf" if isinstance(v, Infinity) else format_scalar(v))
        return "(" + ", ".join(parts) + ")"


# === charts and strata ==============================================


@dataclass(frozen=True)
class Chart:
    """An affine chart, given by setting one variable per factor to 1."""

    space: str
    fixed: tuple
    affine_vars: tuple

    @property
    def label(self):
        return ",".join(f"{v}=1" for v, _ in self.fixed)

    def restrict(self, poly):
        return poly.assign({v: 1 for v, _ in self.fixed})

    def point(self, values):
        """Lift affine coordinates of this chart to a projective point."""
        coords = dict(self.fixed)
        coords.update(zip(self.affine_vars, values))
        if self.space == SPACE_P2:
            return ProjPoint.p2(*(coords[v] for v in P2_VARS))
        return ProjPoint.product(
            (coords["x0"], coords["x1"]), (coords["y0"], coords["y1"])
        )


def charts(space):
    """All standard affine charts covering the space."""
    if space == SPACE_P2:
        out = []
        for k, v in enumerate(P2_VARS):
            avars = tuple(w for w in P2_VARS if w != v)
            out.append(Chart(SPACE_P2, ((v, 1),), avars))
        return out
    if space == SPACE_P1XP1:
        out = []
        for xv in ("x0", "x1"):
            for yv in ("y0", "y1"):
                avars = tuple(
                    w for w in BI_VARS if w not in (xv, yv)
                )
                out.append(Chart(SPACE_P1XP1, ((xv, 1), (yv, 1)), avars))
        return out
    raise SpaceError(f"unknown space {space!r}")


def _strata(space):
    """Disjoint affine strata covering the space.

    Unlike the charts, which overlap, these partition the point set, so
    summing counts over them never counts a point twice.
    """
    if space == SPACE_P2:
        return (
            ({"z0": 1}, ("z1", "z2")),
            ({"z0": 0, "z1": 1}, ("z2",)),
            ({"z0": 0, "z1": 0, "z2": 1}, ()),
        )
    return (
        ({"x0": 1, "y0": 1}, ("x1", "y1")),
        ({"x0": 0, "x1": 1, "y0": 1}, ("y1",)),
        ({"x0": 1, "y0": 0, "y1": 1}, ("x1",)),
        ({"x0": 0, "x1": 1, "y0": 0, "y1": 1}, ()),
    )


# === maps ===========================================================


def _space_vars(space):
    return P2_VARS if space == SPACE_P2 else BI_VARS


def _check_group(space, group):
    degs = []
    for p in group:
        if p.vars != _space_vars(space):
            raise SpaceError("component variables do not match the source space")
    if all(p.is_zero() for p in group):
        raise AllZeroComponentsError("a component group is identically zero")
    for p in group:
        if p.is_zero():
            degs.append(None)
            continue
        if space == SPACE_P2:
            d = homogeneous_degree(p)
            if d is None:
                raise SpaceError("components of a map from P^2 must be homogeneous")
        else:
            d = bidegree_of(p)
            if d is None:
                raise SpaceError("components of a map from P^1 x P^1 must be bihomogeneous")
        degs.append(d)
    seen = {d for d in degs if d is not None}
    if len(seen) > 1:
        raise SpaceError("components of one group must share their degree")
    return seen.pop()


class ProjMap:
    """A rational map between products of projective spaces."""

    __slots__ = ("source", "target", "groups")

    def __init__(self, source, target, groups):
        if source not in SPACES or target not in SPACES:
            raise SpaceError("unknown source or target space")
        groups = tuple(tuple(g) for g in groups)
        if target == SPACE_P2:
            if len(groups) != 1 or len(groups[0]) != 3:
                raise SpaceError("a map into P^2 needs one group of three components")
        else:
            if len(groups) != 2 or any(len(g) != 2 for g in groups):
                raise SpaceError("a map into P^1 x P^1 needs two component pairs")
        for g in groups:
            _check_group(source, g)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "groups", groups)

    def __setattr__(self, name, value):
        raise AttributeError("ProjMap is immutable")

    # --- constructors ---

    @classmethod
    def p2_self_map(cls, components):
        return cls(SPACE_P2, SPACE_P2, (tuple(components),))

    @classmethod
    def product_self_map(cls, first_pair, second_pair):
        return cls(SPACE_P1XP1, SPACE_P1XP1, (tuple(first_pair), tuple(second_pair)))

    @classmethod
    def from_affine_pair(cls, den1, num1, den2, num2):
        """Self-map of P^1 x P^1 from two affine rational functions.

        The inputs are polynomials in z1, z2.  Factor j of the image
        has affine value num_j / den_j; each pair is bihomogenized at
        the smallest common bidegree.
        """
        pairs = []
        for den, num in ((den1, num1), (den2, num2)):
            d1 = bidegree_of_affine(den)
            d2 = bidegree_of_affine(num)
            d = (max(d1[0], d2[0]), max(d1[1], d2[1]))
            pairs.append((bihomogenize(den, d), bihomogenize(num, d)))
        return cls.product_self_map(pairs[0], pairs[1])

    @classmethod
    def identity(cls, space):
        if space == SPACE_P2:
            comps = tuple(MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
            return cls.p2_self_map(comps)
        x0, x1, y0, y1 = (MultiPoly.variable(v, BI_VARS) for v in BI_VARS)
        return cls.product_self_map((x0, x1), (y0, y1))

    # --- accessors ---

    @property
    def source_vars(self):
        return _space_vars(self.source)

    @property
    def p2_components(self):
        if self.target != SPACE_P2:
            raise SpaceError("the map does not land in P^2")
        return self.groups[0]

    @property
    def pairs(self):
        if self.target != SPACE_P1XP1:
            raise SpaceError("the map does not land in P^1 x P^1")
        return self.groups

    def group_degrees(self):
        """Per-group common degree: an int from P^2, a bidegree pair else."""
        return tuple(_check_group(self.source, g) for g in self.groups)

    def algebraic_degree(self):
        if self.source != SPACE_P2 or self.target != SPACE_P2:
            raise SpaceError("algebraic degree is defined for self-maps of P^2")
        return self.group_degrees()[0]

    def bidegree_matrix(self):
        if self.source != SPACE_P1XP1 or self.target != SPACE_P1XP1:
            raise SpaceError("the bidegree matrix needs a self-map of P^1 x P^1")
        return self.group_degrees()

    def components_flat(self):
        return tuple(p for g in self.groups for p in g)

    def __eq__(self, other):
        if not isinstance(other, ProjMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.groups == other.groups
        )

    def __hash__(self):
        return hash((self.source, self.target, self.groups))

    def __repr__(self):
        body = "; ".join(
            "[" + " : ".join(str(p) for p in g) + "]" for g in self.groups
        )
        return f"ProjMap({self.source} -> {self.target}, {body})"


def bidegree_of_affine(p):
    """Bidegree bound (deg in z1, deg in z2) of a polynomial in z1, z2."""
    if p.vars != AFFINE_VARS:
        raise SpaceError("expected a polynomial in z1, z2")
    if p.is_zero():
        return (0, 0)
    d1 = max(e[0] for e in p.terms)
    d2 = max(e[1] for e in p.terms)
    return (d1, d2)


# === normalization, evaluation, composition ========================


def _group_gcd(source, group):
    nonzero = [p for p in group if not p.is_zero()]
    g = None
    for p in nonzero:
        if g is None:
            g = p
        elif source == SPACE_P2:
            g = gcd_poly(g, p)
        else:
            g = gcd_bihomogeneous(g, p)
        if g.is_constant():
            return None
    if g is None or g.is_constant():
        return None
    return g


def normalize_map(f):
    """Canonical form: common factors removed, groups made monic.

    Each component group is divided by the gcd of its members and then
    scaled so the first nonzero component has leading coefficient one.
    Normalizing twice changes nothing, and evaluation commutes with it.
    """
    new_groups = []
    for group in f.groups:
        g = _group_gcd(f.source, group)
        if g is not None:
            group = tuple(
                p if p.is_zero() else exact_divide(p, g) for p in group
            )
        lead = None
        for p in group:
            if not p.is_zero():
                lead = p.leading_coeff()
                break
        if lead != 1:
            inv = scalar_inverse(lead)
            group = tuple(p.scale(inv) for p in group)
        new_groups.append(group)
    return ProjMap(f.source, f.target, new_groups)


def evaluate(f, point):
    """Image of a point, or IndeterminatePointError where undefined."""
    if point.space != f.source:
        raise SpaceError("the point does not live in the source space")
    if f.source == SPACE_P2:
        values = dict(zip(P2_VARS, point.groups[0]))
    else:
        values = {
            "x0": point.groups[0][0],
            "x1": point.groups[0][1],
            "y0": point.groups[1][0],
            "y1": point.groups[1][1],
        }
    out_groups = []
    for group in f.groups:
        vals = tuple(p.evaluate(values) for p in group)
        if all(scalar_is_zero(v) for v in vals):
            raise IndeterminatePointError(
                f"the map is undefined at {point}"
            )
        out_groups.append(vals)
    return ProjPoint(f.target, out_groups)


def compose(g, f):
    """The composite g after f.

    Undefined when f maps the whole source into the indeterminacy locus
    of g; that surfaces as AllZeroComponentsError.
    """
    if f.target != g.source:
        raise SpaceError("composition needs the target of f to match the source of g")
    if g.source == SPACE_P2:
        images = dict(zip(P2_VARS, f.groups[0]))
    else:
        images = {
            "x0": f.groups[0][0],
            "x1": f.groups[0][1],
            "y0": f.groups[1][0],
            "y1": f.groups[1][1],
        }
    new_groups = []
    for group in g.groups:
        new_groups.append(tuple(p.substitute(images) for p in group))
    return normalize_map(ProjMap(f.source, g.target, new_groups))


# === fiber counting and the topological degree ======================


def _count_zeros_affine(polys, avars):
    """Distinct complex solutions of a polynomial system on a stratum.

    Raises _DegenerateSample when the solution set has positive
    dimension.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        if not avars:
            return 1
        raise _DegenerateSample("the system vanishes on the whole stratum")
    if not avars:
        # all generators are constants, at least one of them nonzero
        return 0
    if len(avars) == 1:
        g = None
        for p in polys:
            g = p if g is None else gcd_poly(g, p)
            if g.is_constant():
                return 0
        return squarefree_part(g, avars[0]).degree_in(avars[0])
    ideal = PolyIdeal(polys)
    elims = _resultant_eliminants(polys, avars)
    try:
        return count_distinct_zeros(ideal, eliminants=elims)
    except NotZeroDimensionalError:
        raise _DegenerateSample("positive dimensional fiber") from None


def _resultant_eliminants(polys, avars):
    """Cheap univariate eliminants for a bivariate system, when available.

    For each variable this looks for a generator already free of the
    other variable, then for a resultant of two generators with honest
    degree in it.  Returning None falls back to the lex Groebner route.
    """
    if len(avars) != 2:
        return None
    out = {}
    for keep, drop in ((avars[0], avars[1]), (avars[1], avars[0])):
        pure = [p for p in polys if p.degree_in(drop) == 0]
        if pure:
            out[keep] = pure[0]
            continue
        pos = [p for p in polys if p.degree_in(drop) > 0]
        found = None
        if len(pos) >= 2:
            r = resultant(pos[0], pos[1], drop)
            if not r.is_zero():
                found = r
        if found is None:
            return None
        out[keep] = found
    return out


def _fiber_equations(f, w):
    """Equations cutting out the fiber over an affine target point w."""
    eqs = []
    if f.target == SPACE_P2:
        f0, f1, f2 = f.groups[0]
        w1, w2 = w
        eqs.append(f0.scale(w1) - f1)
        eqs.append(f0.scale(w2) - f2)
    else:
        for (a, b), wj in zip(f.groups, w):
            eqs.append(a.scale(wj) - b)
    return eqs


def _fiber_count(f, w, cache):
    """Distinct preimages of w, with indeterminate points excluded.

    Points where every component of a group vanishes solve the fiber
    equations vacuously; inclusion and exclusion over the groups
    removes them.  The parts that do not depend on w are cached.
    """
    fiber = _fiber_equations(f, w)
    total = 0
    for subs, avars in _strata(f.source):
        key = tuple(sorted(subs.items()))
        rf = [e.assign(subs) for e in fiber]
        cnt = _count_zeros_affine(rf, avars)
        if f.target == SPACE_P2:
            if key not in cache:
                comps = [p.assign(subs) for p in f.groups[0]]
                cache[key] = _count_zeros_affine(comps, avars)
            overlap = cache[key]
        else:
            (a1, b1), (a2, b2) = f.groups
            e1, e2 = fiber
            r = lambda p: p.assign(subs)
            c1 = _count_zeros_affine([r(a1), r(b1), r(e2)], avars)
            c2 = _count_zeros_affine([r(a2), r(b2), r(e1)], avars)
            if key not in cache:
                cache[key] = _count_zeros_affine(
                    [r(a1), r(b1), r(a2), r(b2)], avars
                )
            overlap = c1 + c2 - cache[key]
        total += cnt - overlap
    return total


def _draw_target(rng):
    def q():
        n = rng.randint(-97, 97)
        d = rng.randint(1, 97)
        return Fraction(n, d)

    return (q(), q())


def topological_degree(f, seed=0, max_draws=12):
    """Number of preimages of a generic point, by exact counting.

    Three random rational target points are tried and the count
    attained at least twice wins; disagreement triggers further
    samples.  A winning count of zero means the map is not dominant.
    """
    f = normalize_map(f)
    rng = random.Random(seed)
    cache = {}
    counts = []
    draws = 0
    while draws < max_draws:
        w = _draw_target(rng)
        draws += 1
        try:
            counts.append(_fiber_count(f, w, cache))
        except _DegenerateSample:
            continue
        if len(counts) < 3:
            continue
        for v in set(counts):
            if counts.count(v) >= 2:
                if v == 0:
                    raise NotDominantError(
                        "generic fibers are empty, the map is not dominant"
                    )
                return v
    raise DegreeUndeterminedError(
        f"no stable fiber count after {max_draws} samples: {counts}"
    )


# === degree report ==================================================


@dataclass(frozen=True)
class DegreeReport:
    """Degree data of a self-map, with fields that do not apply left None.

    For P^1 x P^1 the bidegree matrix generalises the single algebraic
    degree of the P^2 case, which is recorded in bidegree_is_extension.
    """

    space: str
    topological_degree: int
    algebraic_degree: Optional[int] = None
    bidegree_matrix: Optional[tuple] = None
    skew_degree: Optional[int] = None
    graph_volume: Optional[int] = None
    bidegree_is_extension: bool = False


def degree_report(f, seed=0):
    if f.source != f.target:
        raise SpaceError("degree reports are for self-maps")
    f = normalize_map(f)
    top = topological_degree(f, seed=seed)
    if f.source == SPACE_P2:
        alg = f.algebraic_degree()
        skew = alg
        return DegreeReport(
            space=SPACE_P2,
            topological_degree=top,
            algebraic_degree=alg,
            skew_degree=skew,
            graph_volume=top + 1 + 2 * skew,
        )
    return DegreeReport(
        space=SPACE_P1XP1,
        topological_degree=top,
        bidegree_matrix=f.bidegree_matrix(),
        bidegree_is_extension=True,
    )


# === restriction to lines ===========================================


@dataclass(frozen=True)
class LineRestriction:
    """What a self-map of P^1 x P^1 does to one line of a ruling.

    The pairs are the component pairs with the line substituted in,
    polynomials in the variables of the other factor.  When the line is
    contracted, image_point is the single image.
    """

    axis: int
    value: object
    pairs: tuple
    contracted: bool
    image_point: Optional[ProjPoint]


def _line_coords(value):
    if isinstance(value, Infinity):
        return (0, 1)
    return (1, value)


def _pair_rank_one(a, b):
    """Whether the binary-form pair (a, b) has a constant image point."""
    monos = sorted(set(a.terms) | set(b.terms))
    rows = [(a.terms.get(m, 0), b.terms.get(m, 0)) for m in monos]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            d = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
            if not scalar_is_zero(d):
                return None
    # rank at most one: every row is proportional to any nonzero row
    for ra, rb in rows:
        if not scalar_is_zero(ra) or not scalar_is_zero(rb):
            return (ra, rb)
    return None


def restrict_to_line(f, axis, value):
    """Restrict a self-map of P^1 x P^1 to a line of one ruling.

    axis 1 picks the line {first factor = value}, axis 2 the line
    {second factor = value}; value may be INF.  A line along which both
    members of some component pair vanish identically lies inside the
    indeterminacy locus and is rejected.
    """
    if f.source != SPACE_P1XP1 or f.target != SPACE_P1XP1:
        raise SpaceError("line restriction needs a self-map of P^1 x P^1")
    if axis not in (1, 2):
        raise SpaceError("axis must be 1 or 2")
    c0, c1 = _line_coords(value)
    if axis == 1:
        subs = {"x0": c0, "x1": c1}
    else:
        subs = {"y0": c0, "y1": c1}
    restricted = []
    for a, b in f.groups:
        ra, rb = a.assign(subs), b.assign(subs)
        if ra.is_zero() and rb.is_zero():
            raise LineInsideIndeterminacyError(
                "the line lies inside the indeterminacy locus"
            )
        restricted.append((ra, rb))
    images = [_pair_rank_one(a, b) for a, b in restricted]
    contracted = all(v is not None for v in images)
    point = None
    if contracted:
        point = ProjPoint(SPACE_P1XP1, tuple(images))
    return LineRestriction(
        axis=axis,
        value=value,
        pairs=tuple(restricted),
        contracted=contracted,
        image_point=point,
    )
