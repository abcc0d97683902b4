"""Sampled graphs and the Hausdorff geometry of map families.

Everything else in the package is exact; this module is the floating
point counterpart.  A self-map of the plane is turned into a point
cloud on its graph, clouds are compared in the chordal Fubini-Study
metric, and `closure_demo` walks a family of fixed-point-free maps
whose graphs approach the graph of a map fixing a whole conic.  The
exact classifier certifies every verdict along the way, so the float
side only ever measures distances, it never decides anything.

Graphs are sampled over the source only.  A meromorphic map also
carries vertical components over its indeterminacy points; those are
invisible to this sampling scheme, which is fine for watching the
Hausdorff trend but would not do for a complete model of the graph.
"""

import math
import random

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .analyzer import classify, indeterminacy_locus
from .catalog import InvalidParameters, closure, limit_of_closure_family
from .numeric import _eval_batch, _prep, fs_distance_vectors
from .poly import MultiPoly
from .scalars import GaussianRational, scalar_to_complex
from .spaces import (
    SPACE_P2,
    IndeterminatePointError,
    P2_VARS,
    ProjPoint,
    SpaceError,
    degree_report,
    evaluate,
    normalize_map,
)

# Sources closer than this to an indeterminacy point are resampled.
INDETERMINACY_MARGIN = 1e-6

# Largest acceptable disagreement between the stored image and a fresh
# floating evaluation, measured in the affine chart of the image's
# largest coordinate.
RESIDUAL_TOL = 1e-10


class InvalidPoint(ValueError):
    """A coordinate vector with no projective meaning."""


class InvalidSample(ValueError):
    """A graph sample unusable for distance estimation."""


# === chordal metric =================================================


def _is_grouped(p):
    return len(p) > 0 and isinstance(p[0], (tuple, list))


def fs_distance(a, b) -> float:
    """Chordal Fubini-Study distance, in [0, 1].

    a and b are tuples of complex coordinates of projective points;
    the value is sqrt(1 - |<a,b>|^2 / (|a|^2 |b|^2)).  Points of a
    product space are given as tuples of factor tuples and get the max
    of the factor distances, so convergence means factor-wise
    convergence.
    """
    if _is_grouped(a) or _is_grouped(b):
        if not (_is_grouped(a) and _is_grouped(b)) or len(a) != len(b):
            raise InvalidPoint("the points live in different spaces")
        return max(fs_distance(x, y) for x, y in zip(a, b))
    try:
        return fs_distance_vectors(
            tuple(complex(c) for c in a), tuple(complex(c) for c in b)
        )
    except ValueError as exc:
        raise InvalidPoint(str(exc)) from None


# === graph sampling =================================================


@dataclass(frozen=True)
class GraphSample:
    """A cloud of (source, image) pairs on the graph of a plane map.

    Coordinates are complex homogeneous 3-vectors of unit norm.  No
    source lies within INDETERMINACY_MARGIN of an indeterminacy point,
    and every image was computed by exact evaluation before the float
    conversion, so the stored pairs satisfy the map equations to
    RESIDUAL_TOL in chart coordinates.
    """

    points: tuple
    label: str
    seed: int
    count: int


def _unit(v):
    # unit norm plus a phase convention (largest coordinate real and
    # positive), so projectively equal vectors get equal coordinates
    norm = math.sqrt(sum(abs(c) ** 2 for c in v))
    if norm == 0.0:
        return None
    scaled = [c / norm for c in v]
    k = max(range(len(scaled)), key=lambda i: abs(scaled[i]))
    phase = scaled[k] / abs(scaled[k])
    return tuple(c / phase for c in scaled)


def _exact_scalar(c: complex) -> GaussianRational:
    # floats are dyadic rationals, so this conversion loses nothing
    return GaussianRational(Fraction(c.real), Fraction(c.imag))


def _chart_residual(prep, source, image) -> float:
    w = _eval_batch(prep, np.array([source], dtype=np.complex128))[0]
    k = max(range(len(image)), key=lambda i: abs(image[i]))
    if w[k] == 0:
        return math.inf
    return max(
        abs(w[i] / w[k] - image[i] / image[k]) for i in range(len(image))
    )


def sample_graph(f, n: int, seed: int, label: Optional[str] = None) -> GraphSample:
    """n pseudo-random points on the graph of a plane self-map.

    Sources are uniform with respect to Fubini-Study volume, drawn as
    normalized complex Gaussian coordinate vectors.  Images come from
    exact evaluation at the exact dyadic source, converted to floats
    afterwards; draws that land too close to an indeterminacy point
    are rejected and redrawn.  Same seed, same sample.
    """
    f = normalize_map(f)
    if f.source != f.target or f.source != SPACE_P2:
        raise SpaceError("graph sampling is for self-maps of the plane")
    if f.algebraic_degree() == 0:
        raise InvalidParameters("a constant map has a trivial graph")
    if n < 1:
        raise InvalidParameters("a sample needs at least one point")
    bad = [entry[0] for entry in indeterminacy_locus(f).complex_groups()]
    prep = _prep(list(f.groups[0]), P2_VARS)
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < n:
        draw = [complex(rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)) for _ in range(3)]
        src = _unit(draw)
        if src is None:
            continue
        if any(fs_distance_vectors(src, b) < INDETERMINACY_MARGIN for b in bad):
            continue
        exact = ProjPoint.p2(*(_exact_scalar(c) for c in src))
        try:
            value = evaluate(f, exact)
        except IndeterminatePointError:
            continue
        img = _unit([scalar_to_complex(c) for c in value.groups[0]])
        if img is None or _chart_residual(prep, src, img) >= RESIDUAL_TOL:
            continue
        pairs.append((src, img))
    name = label if label is not None else f"plane map of degree {f.algebraic_degree()}"
    return GraphSample(points=tuple(pairs), label=name, seed=seed, count=n)


def graph_residuals(f, sample: GraphSample):
    """Fresh chart-coordinate residuals of every stored pair."""
    f = normalize_map(f)
    prep = _prep(list(f.groups[0]), P2_VARS)
    return [_chart_residual(prep, s, m) for s, m in sample.points]


# === Hausdorff distance between sampled graphs ======================


def _stacks(sample):
    src = np.array([p[0] for p in sample.points], dtype=np.complex128)
    img = np.array([p[1] for p in sample.points], dtype=np.complex128)
    return src, img


def _chordal_matrix(x, y):
    # einsum everywhere: identical product and summation order for the
    # inner products and the norms makes dist(a, a) exactly zero and
    # the matrix of a swapped call exactly the transpose
    ip = np.einsum("ik,jk->ij", x, np.conj(y))
    nx = np.real(np.einsum("ik,ik->i", x, np.conj(x)))
    ny = np.real(np.einsum("ik,ik->i", y, np.conj(y)))
    val = 1.0 - (np.abs(ip) ** 2) / np.outer(nx, ny)
    np.clip(val, 0.0, None, out=val)
    return np.sqrt(val)


def hausdorff_estimate(a: GraphSample, b: GraphSample) -> float:
    """Sampled Hausdorff distance between two graph clouds.

    Pairs are compared in the product metric, the max of the chordal
    distances of the source and image factors; the estimate is the
    symmetric max(sup inf, sup inf).  Sample sizes must agree within a
    factor of two, otherwise the one-sided infima are too lopsided to
    mean anything.
    """
    if not a.points or not b.points:
        raise InvalidSample("an empty sample has no Hausdorff distance")
    na, nb = len(a.points), len(b.points)
    if na > 2 * nb or nb > 2 * na:
        raise InvalidSample(
            f"sample counts {na} and {nb} differ by more than a factor of two"
        )
    a_src, a_img = _stacks(a)
    b_src, b_img = _stacks(b)
    dist = np.maximum(
        _chordal_matrix(a_src, b_src), _chordal_matrix(a_img, b_img)
    )
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


# === the closure demonstration ======================================


@dataclass(frozen=True)
class LadderRung:
    """One family member: exact certificates plus its distance to the limit."""

    n: int
    verdict: str
    algebraic_degree: int
    topological_degree: int
    hausdorff_to_limit: float


@dataclass(frozen=True)
class ClosureReport:
    """What the demo saw along the ladder.

    Every verdict and degree is exact and independent of `samples` and
    `seed`; only the Hausdorff column is an estimate.  Vertical graph
    components over indeterminacy points are not sampled, so the
    distances compare graph closures minus those fibers.
    """

    rungs: tuple
    limit_verdict: str
    limit_curve: Optional[MultiPoly]
    limit_algebraic_degree: int
    limit_topological_degree: int
    samples: int
    seed: int
    note: str = "graph components over indeterminacy points are not sampled"


def ladder(n_max: int):
    """The geometric ladder 2, 4, 8, ... capped at n_max."""
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidParameters("the ladder starts at 2")
    out = []
    n = 2
    while n <= n_max:
        out.append(n)
        n *= 2
    return out


def closure_demo(n_max: int, samples: int = 500, seed: int = 42) -> ClosureReport:
    """Walk the closure family and measure its approach to the limit.

    Each rung carries the exact verdict of the classifier (expected
    FixedPointFree on every rung, CurveOfFixedPoints at the limit) and
    the exact degree data, plus the estimated Hausdorff distance from
    the rung's sampled graph to the limit's.  All rungs share the seed
    so their source clouds coincide.
    """
    steps = ladder(n_max)
    limit = limit_of_closure_family()
    limit_cls = classify(limit)
    limit_deg = degree_report(limit)
    limit_cloud = sample_graph(limit, samples, seed, label="limit")
    rungs = []
    for n in steps:
        f = closure(n)
        cls = classify(f)
        deg = degree_report(f)
        cloud = sample_graph(f, samples, seed, label=f"closure({n})")
        rungs.append(
            LadderRung(
                n=n,
                verdict=cls.verdict,
                algebraic_degree=deg.algebraic_degree,
                topological_degree=deg.topological_degree,
                hausdorff_to_limit=hausdorff_estimate(cloud, limit_cloud),
            )
        )
    return ClosureReport(
        rungs=tuple(rungs),
        limit_verdict=limit_cls.verdict,
        limit_curve=limit_cls.curve,
        limit_algebraic_degree=limit_deg.algebraic_degree,
        limit_topological_degree=limit_deg.topological_degree,
        samples=samples,
        seed=seed,
    )
