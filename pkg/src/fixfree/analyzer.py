"""Fixed point certification for rational self-maps.

The fixed locus is cut out by cross products: on P^1 x P^1 the two
conditions f_j(p) = p_j give H_1 = x0*num1 - x1*den1 and H_2 likewise
in y, and on P^2 the 2 x 2 minors of the matrix with rows f(z) and z.
Honest fixed points are common zeros of these generators that are not
indeterminacy points, so the map has no fixed points at all exactly
when, chart by chart, the fixed ideal's zero set sits inside the zero
set of the indeterminacy products.  That containment is a radical
membership question, decided by Groebner bases over the coefficient
field; a basis stays a basis under field extension, so the answers are
statements about complex zeros even though every computation runs in
Q or Q(i).

A common factor of the generators is detected first: it means a whole
curve of fixed points and short-circuits the chart analysis, since a
curve always escapes the finitely many indeterminacy points of a
normalized map.

Witness points and all numerics are presentation only; no verdict
depends on floating point.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ideals import (
    PolyIdeal,
    radical_membership,
    univariate_eliminant,
)
from .numeric import (
    chart_complex_groups,
    fs_distance_groups,
    newton_polish,
    point_complex_groups,
    residual_at,
    search_systems,
    univariate_roots,
)
from .poly import (
    AFFINE_VARS,
    BI_VARS,
    P2_VARS,
    MultiPoly,
    divides,
    exact_divide,
    gcd_bihomogeneous,
    gcd_homogeneous_p2,
    gcd_poly,
    squarefree_part,
)
from .scalars import GaussianRational
from .spaces import (
    SPACE_P1XP1,
    SPACE_P2,
    IndeterminatePointError,
    ProjMap,
    ProjPoint,
    SpaceError,
    _strata,
    charts,
    evaluate,
    normalize_map,
)

FIXED_POINT_FREE = "FixedPointFree"
HAS_FIXED_POINTS = "HasFixedPoints"
CURVE_OF_FIXED_POINTS = "CurveOfFixedPoints"

REASON_COMMON_FACTOR = "CommonFactor"
REASON_DEGENERATE_DIFFERENCE = "DegenerateDifference"
REASON_ROOT_CONDITION = "RootConditionFails"


def worker_count() -> Optional[int]:
    """Parallelism cap from FIXFREE_THREADS; None means sequential."""
    raw = os.environ.get("FIXFREE_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        return None
    return n if n > 1 else None


# === fixed locus ====================================================


@dataclass(frozen=True)
class FixedLocus:
    """Cross-product generators of the fixed locus, zeros recorded."""

    space: str
    entries: tuple

    @property
    def generators(self):
        return tuple(p for _, p in self.entries if not p.is_zero())

    @property
    def dropped(self):
        return tuple(name for name, p in self.entries if p.is_zero())


def fixed_locus(f: ProjMap) -> FixedLocus:
    """Equations satisfied by every fixed point of a self-map."""
    if f.source != f.target:
        raise SpaceError("fixed points need a self-map")
    if f.source == SPACE_P1XP1:
        (a1, b1), (a2, b2) = f.pairs
        x0, x1, y0, y1 = (MultiPoly.variable(v, BI_VARS) for v in BI_VARS)
        h1 = b1 * x0 - a1 * x1
        h2 = b2 * y0 - a2 * y1
        return FixedLocus(SPACE_P1XP1, (("H1", h1), ("H2", h2)))
    f0, f1, f2 = f.p2_components
    z0, z1, z2 = (MultiPoly.variable(v, P2_VARS) for v in P2_VARS)
    m01 = f0 * z1 - f1 * z0
    m02 = f0 * z2 - f2 * z0
    m12 = f1 * z2 - f2 * z1
    return FixedLocus(SPACE_P2, (("M01", m01), ("M02", m02), ("M12", m12)))


def _generator_gcd(space, gens):
    if space == SPACE_P2:
        return gcd_homogeneous_p2(list(gens))
    g = None
    for p in gens:
        g = p if g is None else gcd_bihomogeneous(g, p)
        if g.is_constant():
            return g
    return g


def _indeterminacy_products(f: ProjMap):
    """The polynomials whose common vanishing marks indeterminacy.

    Fixed-locus zeros are spurious exactly where every component of
    some group vanishes, so a chartwise certificate needs one product
    per choice of a member from each group.
    """
    if f.source == SPACE_P1XP1:
        (a1, b1), (a2, b2) = f.pairs
        return (
            ("den1*den2", a1 * a2),
            ("den1*num2", a1 * b2),
            ("num1*den2", b1 * a2),
            ("num1*num2", b1 * b2),
        )
    f0, f1, f2 = f.p2_components
    return (("F0", f0), ("F1", f1), ("F2", f2))


# === indeterminacy locus ============================================


@dataclass(frozen=True)
class AlgebraicCluster:
    """Solutions in one stratum that have no exact coordinates.

    They are described exactly by the leftover eliminant factors and
    approximately by polished floating-point coordinates.
    """

    stratum: str
    eliminants: tuple
    approximations: tuple
    groups: tuple


@dataclass(frozen=True)
class IndeterminacyLocus:
    space: str
    points: tuple
    residual: tuple

    def complex_groups(self):
        """All locus points as complex coordinate groups, approximations included."""
        out = [point_complex_groups(p) for p in self.points]
        for cluster in self.residual:
            out.extend(cluster.groups)
        return out


def _stratum_label(subs):
    return ",".join(f"{v}={subs[v]}" for v in sorted(subs))


def _stratum_point(space, subs, values) -> ProjPoint:
    coords = dict(subs)
    coords.update(values)
    if space == SPACE_P2:
        return ProjPoint.p2(*(coords[v] for v in P2_VARS))
    return ProjPoint.product(
        (coords["x0"], coords["x1"]), (coords["y0"], coords["y1"])
    )


def _reconstruction_candidates(c: complex, tol=1e-9):
    """Exact scalars that a floating root could plausibly be."""
    seen = []
    bound = max(1.0, abs(c))
    for den in (1, 4, 16, 128, 1024, 10**5, 10**7, 10**9):
        re = Fraction(c.real).limit_denominator(den)
        im = Fraction(c.imag).limit_denominator(den)
        if abs(float(re) - c.real) > tol * bound or abs(float(im) - c.imag) > tol * bound:
            continue
        cand = re if im == 0 else GaussianRational(re, im)
        if cand not in seen:
            seen.append(cand)
    return seen


def _solve_univariate_exact(p: MultiPoly, var: str):
    """Split the distinct roots of p into exact scalars and a leftover.

    Returns (exact_roots, leftover_factor_or_None, leftover_numeric_roots).
    Exactness is decided by substitution into the squarefree part, never
    by the size of a floating residue.
    """
    extra = [v for v in p.vars if v != var]
    q = squarefree_part(p.drop_vars(extra) if extra else p, var)
    exact = []
    remaining = q
    for r in univariate_roots(q, var):
        for cand in _reconstruction_candidates(complex(r)):
            if remaining.degree_in(var) == 0:
                break
            if remaining.evaluate({var: cand}) == 0:
                exact.append(cand)
                lin = MultiPoly.variable(var, remaining.vars) - MultiPoly.constant(
                    remaining.vars, cand
                )
                remaining = exact_divide(remaining, lin)
                break
    if remaining.degree_in(var) == 0:
        return exact, None, ()
    approx = tuple(complex(r) for r in univariate_roots(remaining, var))
    return exact, remaining.monic(), approx


def _bivariate_eliminants(gens, avars):
    """Exact univariate eliminants of a bivariate system, one per variable."""
    ideal = PolyIdeal(gens)
    out = {}
    for keep in avars:
        elim = univariate_eliminant(ideal, keep)
        if elim is None:
            return None
        out[keep] = elim
    return out


def _solve_bivariate_exact(gens, avars):
    """Exact points plus algebraic leftovers of a zero-dimensional system.

    Candidate coordinates come from the per-variable eliminants; a pair
    is accepted as exact only when every generator vanishes at it under
    exact substitution.  Leftover eliminant factors are paired with
    polished numeric approximations.
    """
    elims = _bivariate_eliminants(gens, avars)
    if elims is None:
        raise SpaceError("the system is not zero dimensional")
    v1, v2 = avars
    e1, e2 = elims[v1], elims[v2]
    if e1.is_nonzero_constant() or e2.is_nonzero_constant():
        return [], (), ()
    ex1, rem1, app1 = _solve_univariate_exact(e1, v1)
    ex2, rem2, app2 = _solve_univariate_exact(e2, v2)
    points = []
    for r1 in ex1:
        for r2 in ex2:
            if all(g.evaluate({v1: r1, v2: r2}) == 0 for g in gens):
                points.append({v1: r1, v2: r2})
    leftovers = tuple(
        (v, rem) for v, rem in ((v1, rem1), (v2, rem2)) if rem is not None
    )
    if not leftovers:
        return points, (), ()
    # pair every candidate coordinate combination and keep the ones that
    # actually solve the system numerically
    cand1 = [complex(r) for r in app1] + [_to_complex_scalar(r) for r in ex1]
    cand2 = [complex(r) for r in app2] + [_to_complex_scalar(r) for r in ex2]
    exact_keys = {
        (round(_to_complex_scalar(p[v1]).real, 7), round(_to_complex_scalar(p[v1]).imag, 7),
         round(_to_complex_scalar(p[v2]).real, 7), round(_to_complex_scalar(p[v2]).imag, 7))
        for p in points
    }
    approx = []
    for c1 in cand1:
        for c2 in cand2:
            if residual_at(gens, avars, (c1, c2)) > 1e-4:
                continue
            pt, res = newton_polish(gens, avars, (c1, c2))
            if res > 1e-8:
                continue
            key = (round(pt[0].real, 7), round(pt[0].imag, 7),
                   round(pt[1].real, 7), round(pt[1].imag, 7))
            if key in exact_keys or any(
                abs(pt[0] - a[0]) < 1e-6 and abs(pt[1] - a[1]) < 1e-6 for a in approx
            ):
                continue
            approx.append((complex(pt[0]), complex(pt[1])))
    return points, leftovers, tuple(approx)


def _to_complex_scalar(s) -> complex:
    if isinstance(s, GaussianRational):
        return complex(float(s.re), float(s.im))
    return complex(float(s))


def indeterminacy_locus(f: ProjMap) -> IndeterminacyLocus:
    """Solve for the points where the map is undefined.

    The space is swept in disjoint affine strata, so no point is found
    twice.  Coordinates in Q or Q(i) are recovered exactly; conjugate
    algebraic points stay described by their eliminant factors together
    with numeric approximations.
    """
    f = normalize_map(f)
    if f.target == SPACE_P1XP1:
        groups = f.pairs
    else:
        groups = (f.p2_components,)
    points = []
    clusters = []
    for group in groups:
        for subs, avars in _strata(f.source):
            gens = [p.assign(subs) for p in group]
            gens = [p for p in gens if not p.is_zero()]
            if not gens:
                # every equation vanishes on the stratum; for a
                # normalized map this only happens at a single corner
                if avars:
                    raise SpaceError("indeterminacy is not a finite set of points")
                pt = _stratum_point(f.source, subs, {})
                if pt not in points:
                    points.append(pt)
                continue
            if not avars:
                continue
            if len(avars) == 1:
                var = avars[0]
                g = None
                for p in gens:
                    g = p if g is None else gcd_poly(g, p)
                    if g.is_constant():
                        break
                if g.is_constant():
                    continue
                exact, rem, app = _solve_univariate_exact(g, var)
                for r in exact:
                    pt = _stratum_point(f.source, subs, {var: r})
                    if pt not in points:
                        points.append(pt)
                if rem is not None:
                    groups_c = tuple(
                        chart_groups_for_stratum(f.source, subs, {var: c})
                        for c in app
                    )
                    clusters.append(
                        AlgebraicCluster(
                            stratum=_stratum_label(subs),
                            eliminants=((var, rem),),
                            approximations=tuple((c,) for c in app),
                            groups=groups_c,
                        )
                    )
                continue
            ideal = PolyIdeal(gens)
            if ideal.is_inconsistent():
                continue
            sols, leftovers, approx = _solve_bivariate_exact(gens, avars)
            for values in sols:
                pt = _stratum_point(f.source, subs, values)
                if pt not in points:
                    points.append(pt)
            if leftovers:
                groups_c = tuple(
                    chart_groups_for_stratum(
                        f.source, subs, dict(zip(avars, pair))
                    )
                    for pair in approx
                )
                clusters.append(
                    AlgebraicCluster(
                        stratum=_stratum_label(subs),
                        eliminants=leftovers,
                        approximations=approx,
                        groups=groups_c,
                    )
                )
    return IndeterminacyLocus(f.source, tuple(points), tuple(clusters))


def chart_groups_for_stratum(space, subs, values):
    """Complex coordinate groups of an approximate stratum point."""
    coords = {v: complex(c) for v, c in subs.items()}
    for v, c in values.items():
        coords[v] = complex(c)
    if space == SPACE_P2:
        return ((coords["z0"], coords["z1"], coords["z2"]),)
    return (
        (coords["x0"], coords["x1"]),
        (coords["y0"], coords["y1"]),
    )


# === classification ================================================


@dataclass(frozen=True)
class CertificateRow:
    """One radical-membership fact: product, chart, and the outcome."""

    chart: str
    product: str
    holds: bool


@dataclass(frozen=True)
class Witness:
    """A fixed point exhibited for a HasFixedPoints verdict.

    Either exact (a projective point verified by substitution) or
    approximate (chart coordinates with the stated residual).
    """

    chart: str
    exact_point: Optional[ProjPoint]
    approx: tuple
    residual: float


@dataclass(frozen=True)
class FixClassification:
    verdict: str
    witnesses: tuple
    curve: Optional[MultiPoly]
    indeterminacy: IndeterminacyLocus
    certificate: tuple
    notes: tuple = ()


def _chart_tasks(f, loc, products, chart_list):
    """Radical membership of every product in every chart's fixed ideal."""
    def run_chart(chart):
        gens = [g.assign({v: val for v, val in chart.fixed}) for g in loc.generators]
        gens = [g for g in gens if not g.is_zero()]
        ideal = PolyIdeal(gens)
        rows = []
        for label, prod in products:
            restricted = prod.assign({v: val for v, val in chart.fixed})
            rows.append(
                CertificateRow(
                    chart=chart.label,
                    product=label,
                    holds=radical_membership(restricted, ideal),
                )
            )
        return rows

    workers = worker_count()
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run_chart, chart_list))
    else:
        chunks = [run_chart(c) for c in chart_list]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.chart, r.product))
    return rows


def classify(f: ProjMap) -> FixClassification:
    """Certify a self-map as fixed point free, or exhibit what it has.

    Curve detection runs first: a common factor of the fixed-locus
    generators is a curve of fixed points.  Otherwise every chart is
    checked: the map is fixed point free exactly when each
    indeterminacy product vanishes on the chart's fixed locus, a
    radical membership fact recorded in the certificate.  Failing
    charts yield witness points, extracted by lex elimination, exact
    whenever the coordinates lie in the ground field.
    """
    f = normalize_map(f)
    loc = fixed_locus(f)
    ind = indeterminacy_locus(f)
    gens = loc.generators
    if not gens:
        return FixClassification(
            verdict=CURVE_OF_FIXED_POINTS,
            witnesses=(),
            curve=MultiPoly.zero(f.source_vars),
            indeterminacy=ind,
            certificate=(),
            notes=(
                "identity-like map: every fixed-locus generator vanishes, "
                "every point is fixed",
            ),
        )
    common = _generator_gcd(f.source, gens)
    if not common.is_constant():
        notes = ()
        if loc.dropped:
            notes = (f"dropped identically zero generators: {', '.join(loc.dropped)}",)
        return FixClassification(
            verdict=CURVE_OF_FIXED_POINTS,
            witnesses=(),
            curve=common,
            indeterminacy=ind,
            certificate=(),
            notes=notes,
        )
    products = _indeterminacy_products(f)
    chart_list = charts(f.source)
    rows = _chart_tasks(f, loc, products, chart_list)
    notes = ()
    if loc.dropped:
        notes = (f"dropped identically zero generators: {', '.join(loc.dropped)}",)
    if all(r.holds for r in rows):
        return FixClassification(
            verdict=FIXED_POINT_FREE,
            witnesses=(),
            curve=None,
            indeterminacy=ind,
            certificate=tuple(rows),
            notes=notes,
        )
    failing = sorted({r.chart for r in rows if not r.holds})
    witnesses = _extract_witnesses(f, loc, chart_list, failing)
    return FixClassification(
        verdict=HAS_FIXED_POINTS,
        witnesses=witnesses,
        curve=None,
        indeterminacy=ind,
        certificate=tuple(rows),
        notes=notes,
    )


def _witness_key(chart, values):
    groups = chart_complex_groups(chart, values)
    out = []
    for g in groups:
        pivot = max(g, key=abs)
        out.append(tuple((round((c / pivot).real, 6), round((c / pivot).imag, 6)) for c in g))
    return tuple(out)


def _extract_witnesses(f, loc, chart_list, failing_labels):
    """Fixed points of failing charts, for presentation with the verdict."""
    witnesses = []
    seen_exact = set()
    seen_keys = set()
    for chart in chart_list:
        if chart.label not in failing_labels:
            continue
        subs = {v: val for v, val in chart.fixed}
        gens = [g.assign(subs) for g in loc.generators]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        try:
            sols, leftovers, approx = _solve_bivariate_exact(gens, chart.affine_vars)
        except SpaceError:
            continue
        for values in sols:
            pt = chart.point([values[v] for v in chart.affine_vars])
            if pt in seen_exact:
                continue
            try:
                image = evaluate(f, pt)
            except IndeterminatePointError:
                continue
            if image != pt:
                continue
            seen_exact.add(pt)
            witnesses.append(
                Witness(
                    chart=chart.label,
                    exact_point=pt,
                    approx=tuple(
                        _to_complex_scalar(values[v]) for v in chart.affine_vars
                    ),
                    residual=0.0,
                )
            )
        for pair in approx:
            pt, res = newton_polish(gens, chart.affine_vars, pair)
            if res > 1e-10:
                continue
            if _near_indeterminate(f, chart, pt):
                continue
            key = _witness_key(chart, pt)
            if key in seen_keys:
                continue
            if any(
                w.exact_point is not None
                and fs_distance_groups(
                    point_complex_groups(w.exact_point),
                    chart_complex_groups(chart, pt),
                )
                < 1e-8
                for w in witnesses
            ):
                continue
            seen_keys.add(key)
            witnesses.append(
                Witness(
                    chart=chart.label,
                    exact_point=None,
                    approx=tuple(complex(c) for c in pt),
                    residual=res,
                )
            )
    return tuple(witnesses)


def _near_indeterminate(f, chart, values, tol=1e-8):
    """Whether some component group nearly vanishes at a chart point."""
    groups = chart_complex_groups(chart, values)
    if f.source == SPACE_P2:
        point = {v: c for v, c in zip(P2_VARS, groups[0])}
    else:
        point = {
            "x0": groups[0][0],
            "x1": groups[0][1],
            "y0": groups[1][0],
            "y1": groups[1][1],
        }
    for group in f.groups:
        vals = []
        for p in group:
            total = 0j
            for e, c in p.terms.items():
                term = _to_complex_scalar(c)
                for v, k in zip(p.vars, e):
                    if k:
                        term *= point[v] ** k
                total += term
            vals.append(total)
        scale = max(1.0, max((abs(v) for v in vals), default=0.0))
        if all(abs(v) < tol * scale for v in vals):
            return True
    return False


# === meromorphic fixed points ======================================


def meromorphic_fixed_nonempty(f: ProjMap):
    """Whether the fixed locus meets some chart, indeterminacy allowed.

    Returns (True, chart label) for the first chart whose fixed ideal
    is consistent.  Every self-map is expected to answer True; the
    point of exposing it is that the claim is checked, not assumed.
    """
    f = normalize_map(f)
    loc = fixed_locus(f)
    gens = loc.generators
    for chart in charts(f.source):
        restricted = [g.assign({v: val for v, val in chart.fixed}) for g in gens]
        restricted = [g for g in restricted if not g.is_zero()]
        if not restricted:
            return True, chart.label
        if not PolyIdeal(restricted).is_inconsistent():
            return True, chart.label
    return False, None


# === the root-coincidence test =====================================


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of the coprime-pair root test for (z2 / z1^k, P / Q)."""

    passed: bool
    reason: Optional[str]
    difference: Optional[MultiPoly]


def lemma_check(p: MultiPoly, q: MultiPoly, k: int) -> LemmaReport:
    """Decide the criterion that makes (z2 / z1^k, P / Q) fixed point free.

    Pass requires gcd(P, Q) constant and, with u(z) = P(z, z^(k+1)) -
    z^(k+1) Q(z, z^(k+1)), that every nonzero root of u is a common
    root of P(z, z^(k+1)) and Q(z, z^(k+1)); the root condition is the
    divisibility of their gcd by the squarefree part of u with its
    z-power stripped.  An identically zero u is degenerate: the fixed
    point equation holds everywhere it is defined.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    p = p if p.vars == AFFINE_VARS else p.embed(AFFINE_VARS)
    q = q if q.vars == AFFINE_VARS else q.embed(AFFINE_VARS)
    if p.is_zero() and q.is_zero():
        return LemmaReport(False, REASON_COMMON_FACTOR, None)
    if not gcd_poly(p, q).is_constant():
        return LemmaReport(False, REASON_COMMON_FACTOR, None)
    zvars = ("z",)
    z = MultiPoly.variable("z", zvars)
    images = {"z1": z, "z2": z ** (k + 1)}
    p1 = p.substitute(images)
    q1 = q.substitute(images)
    u = p1 - z ** (k + 1) * q1
    if u.is_zero():
        return LemmaReport(False, REASON_DEGENERATE_DIFFERENCE, u)
    shift = min(e[0] for e in u.terms)
    v = u
    if shift:
        v = exact_divide(u, z**shift)
    g = gcd_poly(p1, q1)
    if divides(squarefree_part(v, "z"), g):
        return LemmaReport(True, None, u)
    return LemmaReport(False, REASON_ROOT_CONDITION, u)


# === numeric cross-examination =====================================


def numeric_oracle(f: ProjMap, restarts=10000, seed=0, residual_tol=1e-8,
                   exclusion_radius=1e-6):
    """Search for fixed points in floating point, minus indeterminacy.

    Newton iterations from random starts in every chart hunt for
    solutions of the fixed-locus system; hits within the exclusion
    radius of an indeterminacy point are discarded.  For a map
    certified FixedPointFree the returned list must be empty; a
    nonempty list is a concrete lead that something is wrong.
    """
    f = normalize_map(f)
    loc = fixed_locus(f)
    ind = indeterminacy_locus(f)
    exclusion = ind.complex_groups()
    systems = []
    for chart in charts(f.source):
        gens = [g.assign({v: val for v, val in chart.fixed}) for g in loc.generators]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            systems.append((chart, gens))
    hits = search_systems(systems, restarts=restarts, seed=seed,
                          residual_tol=residual_tol)
    violations = []
    for chart, coords, res in hits:
        groups = chart_complex_groups(chart, coords)
        dist = min(
            (fs_distance_groups(groups, e) for e in exclusion), default=float("inf")
        )
        if dist > exclusion_radius:
            violations.append((chart.label, coords, res, dist))
    return violations
