"""Floating-point companions to the exact machinery.

Nothing in here ever decides a verdict.  The exact layer certifies;
these routines hunt for approximate solutions (to cross-examine a
FixedPointFree certificate), polish witness candidates, and measure
Fubini-Study distances for the sampling experiments.

Polynomials arrive exact and are converted once into flat coefficient
arrays; evaluation and Gauss-Newton iteration are vectorised over
batches of points with numpy.
"""

import cmath

import numpy as np

from fractions import Fraction

from .poly import MultiPoly, squarefree_part, univariate_coeffs
from .scalars import GaussianRational, scalar_is_zero, scalar_to_complex
from .spaces import SPACE_P2, Chart, ProjPoint

# === conversion =====================================================


def complex_coefficient(c) -> complex:
    return scalar_to_complex(c)


def poly_scale(p: MultiPoly) -> float:
    """Magnitude of the largest coefficient, for residual normalisation."""
    if p.is_zero():
        return 1.0
    return max(abs(complex_coefficient(c)) for c in p.terms.values())


def _prep(polys, vars):
    """Exponent and coefficient arrays for batched evaluation."""
    out = []
    for p in polys:
        if p.vars != vars:
            raise ValueError("polynomial variables disagree with the system")
        if not p.terms:
            out.append(
                (np.zeros((0, len(vars)), dtype=np.int64),
                 np.zeros(0, dtype=np.complex128))
            )
            continue
        exps = np.array(sorted(p.terms), dtype=np.int64).reshape(len(p.terms), len(vars))
        coeffs = np.array(
            [complex_coefficient(p.terms[tuple(e)]) for e in exps], dtype=np.complex128
        )
        out.append((exps, coeffs))
    return out


def _eval_batch(prep, pts):
    """Evaluate prepared polynomials at pts of shape (n, nvars)."""
    n = pts.shape[0]
    nvars = pts.shape[1]
    top = [0] * nvars
    for exps, _ in prep:
        if exps.shape[0]:
            m = exps.max(axis=0)
            for i in range(nvars):
                top[i] = max(top[i], int(m[i]))
    # tables of pts[:, i] ** k, built by repeated multiplication; the
    # monomial loop then reads them instead of calling pow each time
    pows = []
    for i in range(nvars):
        table = np.empty((top[i] + 1, n), dtype=np.complex128)
        table[0] = 1.0
        for k in range(1, top[i] + 1):
            table[k] = table[k - 1] * pts[:, i]
        pows.append(table)
    vals = np.empty((n, len(prep)), dtype=np.complex128)
    for j, (exps, coeffs) in enumerate(prep):
        acc = np.zeros(n, dtype=np.complex128)
        for e, c in zip(exps, coeffs):
            term = pows[0][e[0]] * pows[1][e[1]] if nvars == 2 else None
            if term is None:
                term = np.ones(n, dtype=np.complex128)
                for i, k in enumerate(e):
                    if k:
                        term = term * pows[i][k]
            acc = acc + c * term
        vals[:, j] = acc
    return vals


# === batched Gauss-Newton ==========================================


SETTLE_WINDOW = 10
SETTLE_TOL = 1e-9


def gauss_newton(polys, vars, starts, iters=40, full=False):
    """Run Gauss-Newton from every start point at once.

    The systems here have two unknowns and at most a handful of
    equations, so the normal equations are solved with the explicit
    2 x 2 inverse.  Returns, for every start, the iterate with the
    smallest normalised residual (max over equations of |value| /
    coefficient scale) seen along its trajectory.

    Tracking the best iterate instead of the last one matters at
    multiple roots: there det(J^H J) shrinks like dist^2 and, once it
    reaches the rounding noise of its own evaluation, the next step is
    garbage and can throw an already converged point back out.  The
    minimum-residual iterate is immune to that.

    With full=True the result carries a third array: whether each
    trajectory settled, meaning every step in the last SETTLE_WINDOW
    iterations stayed below SETTLE_TOL.  Regular roots settle (the
    steps fall to rounding level); trajectories wandering the flat
    residual basin of a multiple root never do, because their steps
    are noise divided by a nearly singular normal matrix.
    """
    if len(vars) != 2:
        raise ValueError("the batched solver expects two unknowns")
    prep = _prep(polys, vars)
    jac = [
        _prep([p.derivative(v) for v in vars], vars) for p in polys
    ]
    scales = np.array([poly_scale(p) for p in polys])
    pts = np.array(starts, dtype=np.complex128)
    count = pts.shape[0]
    best = pts.copy()
    best_res = np.full(count, np.inf)
    recent = np.zeros((SETTLE_WINDOW, count))

    def record():
        f = _eval_batch(prep, pts)
        r = np.max(np.abs(f) / scales, axis=1)
        r[np.isnan(r)] = np.inf
        better = r < best_res
        best[better] = pts[better]
        best_res[better] = r[better]
        return f

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for it in range(iters):
            f = record()
            jm = np.empty((count, len(polys), 2), dtype=np.complex128)
            for r, jp in enumerate(jac):
                jm[:, r, :] = _eval_batch(jp, pts)
            jh = np.conjugate(np.transpose(jm, (0, 2, 1)))
            a = jh @ jm
            b = np.einsum("nij,nj->ni", jh, f)
            det = a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0]
            ok = np.abs(det) > 1e-280
            step = np.zeros_like(pts)
            step[ok, 0] = (a[ok, 1, 1] * b[ok, 0] - a[ok, 0, 1] * b[ok, 1]) / det[ok]
            step[ok, 1] = (a[ok, 0, 0] * b[ok, 1] - a[ok, 1, 0] * b[ok, 0]) / det[ok]
            pts = pts - step
            far = np.max(np.abs(pts), axis=1) > 1e10
            pts[far] = np.nan
            size = np.max(np.abs(step), axis=1)
            size[np.isnan(size)] = np.inf
            size[np.isnan(pts[:, 0])] = np.inf
            recent[it % SETTLE_WINDOW] = size
            moved = size[np.isfinite(size)]
            if moved.size == 0 or moved.max() < 1e-13:
                break
        record()
    if not full:
        return best, best_res
    settled = recent.max(axis=0) < SETTLE_TOL
    return best, best_res, settled


def newton_polish(polys, vars, start, iters=60):
    """Polish a single candidate; returns (point tuple, residual)."""
    pts, res = gauss_newton(polys, vars, np.array([start]), iters=iters)
    return tuple(pts[0]), float(res[0])


def residual_at(polys, vars, point) -> float:
    prep = _prep(polys, vars)
    scales = np.array([poly_scale(p) for p in polys])
    vals = _eval_batch(prep, np.array([point], dtype=np.complex128))
    return float(np.max(np.abs(vals[0]) / scales))


# === univariate roots ==============================================


def univariate_roots(p: MultiPoly, var: str):
    """Approximate complex roots of the squarefree part of p."""
    q = squarefree_part(p, var)
    coeffs = []
    for cp in univariate_coeffs(q, var):
        if not cp.is_constant():
            raise ValueError("root finding needs a univariate polynomial")
        coeffs.append(cp.constant_value())
    if len(coeffs) <= 1:
        return np.array([], dtype=np.complex128)

    def norm_sq(c):
        if isinstance(c, GaussianRational):
            return c.norm_sq()
        return Fraction(c) * Fraction(c)

    # divide by the largest coefficient exactly, so the float
    # conversions cannot overflow no matter how big the integers got
    cmax = max((c for c in coeffs if not scalar_is_zero(c)), key=norm_sq)
    vals = [
        0j if scalar_is_zero(c) else complex_coefficient(c / cmax) for c in coeffs
    ]
    arr = np.array(vals, dtype=np.complex128)
    return np.roots(arr[::-1])


# === random starts and fixed point search ==========================


def random_starts(seed, count, spread=2.0):
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, 2)) + 1j * rng.standard_normal((count, 2))
    return (z * spread).astype(np.complex128)


def newton_step_sizes(polys, vars, pts):
    """Least-squares Newton step size at each point, solved via SVD.

    The iteration itself uses the explicit normal equations, which
    square the conditioning: where two generators are nearly tangent
    the squared system cancels to rounding noise and reports a still
    point even though the honest step is orders of magnitude larger.
    This diagnostic recomputes the step without squaring.
    """
    prep = _prep(polys, vars)
    jac = [_prep([p.derivative(v) for v in vars], vars) for p in polys]
    f = _eval_batch(prep, pts)
    jm = np.empty((pts.shape[0], len(polys), 2), dtype=np.complex128)
    for r, jp in enumerate(jac):
        jm[:, r, :] = _eval_batch(jp, pts)
    out = np.empty(pts.shape[0])
    for i in range(pts.shape[0]):
        if not (np.all(np.isfinite(jm[i])) and np.all(np.isfinite(f[i]))):
            out[i] = np.inf
            continue
        step = np.linalg.lstsq(jm[i], f[i], rcond=None)[0]
        out[i] = float(np.max(np.abs(step)))
    return out


def search_systems(systems, restarts=10000, seed=0, residual_tol=1e-8, iters=150):
    """Hunt for solutions of several chart systems numerically.

    systems is a list of (chart, generators); the restart budget is
    split evenly.  Returns one entry per converged basin
    representative: (chart, affine coordinates, residual).

    A candidate counts as found only when its second, longer run
    settles (see gauss_newton) and its honest Newton step is at
    rounding level.  Around a root of multiplicity m the residual
    sits at rounding level on a whole disc of radius about
    eps^(1/m), so a small residual alone pins down nothing there;
    the step criterion accepts a point only when a genuine zero of
    the system lies within a comparable distance of it.
    """
    hits = []
    if not systems:
        return hits
    per = max(1, restarts // len(systems))
    for idx, (chart, gens) in enumerate(systems):
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        starts = random_starts(np.random.SeedSequence([seed, idx]), per)
        pts, res = gauss_newton(gens, chart.affine_vars, starts, iters=iters)
        good = res < residual_tol
        if not np.any(good):
            continue
        pts, res, settled = gauss_newton(
            gens, chart.affine_vars, pts[good], iters=400, full=True
        )
        good = settled & (res < residual_tol)
        if not np.any(good):
            continue
        pts, res = pts[good], res[good]
        scale = 1.0 + np.max(np.abs(pts), axis=1)
        sizes = newton_step_sizes(gens, chart.affine_vars, pts)
        certified = sizes < 1e-8 * scale
        seen = set()
        for p, r in zip(pts[certified], res[certified]):
            key = (round(p[0].real, 6), round(p[0].imag, 6),
                   round(p[1].real, 6), round(p[1].imag, 6))
            if key in seen:
                continue
            seen.add(key)
            hits.append((chart, (complex(p[0]), complex(p[1])), float(r)))
    return hits


# === Fubini-Study geometry =========================================


def fs_distance_vectors(a, b) -> float:
    """Chordal distance between two points of projective space.

    a and b are coordinate tuples of complex numbers; the value is
    sqrt(1 - |<a,b>|^2 / (|a|^2 |b|^2)), which is 0 exactly at equal
    points and at most 1.
    """
    # norms via the same complex products as ip, so that equal inputs
    # give exactly zero instead of a rounding-path mismatch
    ip = sum(x * y.conjugate() for x, y in zip(a, b))
    na = sum((x * x.conjugate()).real for x in a)
    nb = sum((y * y.conjugate()).real for y in b)
    if na == 0 or nb == 0:
        raise ValueError("zero vector has no projective meaning")
    val = 1.0 - (abs(ip) ** 2) / (na * nb)
    if val < 0:
        val = 0.0
    return cmath.sqrt(val).real


def fs_distance_groups(a, b) -> float:
    """Distance between points given as tuples of coordinate groups.

    Product spaces take the max over their factors, so convergence in
    this metric is exactly factor-wise convergence.
    """
    return max(fs_distance_vectors(x, y) for x, y in zip(a, b))


def point_complex_groups(point: ProjPoint):
    return tuple(
        tuple(scalar_to_complex(c) for c in g) for g in point.groups
    )


def chart_complex_groups(chart: Chart, values):
    """Projective complex coordinates of an affine chart point."""
    coords = {v: complex(1) for v, _ in chart.fixed}
    for v, c in zip(chart.affine_vars, values):
        coords[v] = complex(c)
    if chart.space == SPACE_P2:
        return ((coords["z0"], coords["z1"], coords["z2"]),)
    return (
        (coords["x0"], coords["x1"]),
        (coords["y0"], coords["y1"]),
    )
