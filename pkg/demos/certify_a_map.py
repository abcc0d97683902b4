"""
Certifying that a self-map of P1 x P1 has no fixed points
=========================================================

The running example is the pair map

    (z1, z2)  ->  (z2 / z1, (z1^2 - 1) / (z2 - 1))

Every naive fixed-point search finds solutions for it; all of them sit
at indeterminacy points, where the map is not actually defined.  The
classifier decides this exactly, over the rationals.
"""

from fixfree import classify, evaluate, topological_degree
from fixfree.catalog import example22

f = example22()
out = classify(f)

print("verdict:", out.verdict)
print("topological degree:", topological_degree(f))
print("indeterminacy points:")
for p in out.indeterminacy.points:
    print("   ", p)

# the certificate rows say, chart by chart, that the fixed locus is
# contained in the indeterminacy locus: every product of one member
# from each defining pair lies in the radical of the fixed ideal
print("certificate:")
for row in out.certificate:
    print(f"    chart {row.chart}: {row.product}  in radical: {row.holds}")

# tamper with the map and fixed points appear; the witnesses come with
# exact coordinates whenever they live in the ground field
from fixfree import ProjMap, normalize_map
from fixfree.poly import AFFINE_VARS, MultiPoly

z1, z2 = (MultiPoly.variable(v, AFFINE_VARS) for v in AFFINE_VARS)
one = MultiPoly.constant(AFFINE_VARS, 1)
g = normalize_map(ProjMap.from_affine_pair(z1, z2, z2 - 2 * one, z1 * z1 - one))
broken = classify(g)

print()
print("after changing the divisor to z2 - 2:", broken.verdict)
for w in broken.witnesses:
    if w.exact_point is not None:
        print(f"    exact witness in chart {w.chart}: {w.exact_point}")
        print("        image under the map:", evaluate(g, w.exact_point))
    else:
        coords = ", ".join(f"{c:.6f}" for c in w.approx)
        print(f"    numeric witness in chart {w.chart}: ({coords})")
        print(f"        residual {w.residual:.2e}")
