"""
Carrying a map from P1 x P1 to the projective plane
===================================================

Blowing up one point of P1 x P1 and blowing down the two rulings
through it lands on P2.  Conjugating a self-map by that elementary
transformation gives a plane rational map, and when the center is
chosen so that six regularity conditions hold, no fixed points are
created on the way.
"""

from fixfree import classify, poly_to_string, transfer_map
from fixfree.catalog import example22
from fixfree.transfer import check_hypotheses, find_center

f = example22()

# the conditions are decided exactly; (0, 0) is an indeterminacy point
# of this map, so it is no good as a center
report = check_hypotheses(f, (0, 0))
print("center (0, 0) passes:", report.all_pass)
for cond in report.conditions:
    mark = "ok" if cond.passed else "FAILS"
    print(f"    {cond.name}: {mark}")

# a seeded enumeration of small-fraction candidates finds a center
center = find_center(f, seed=1)
print()
print("found center:", center)

g = transfer_map(f, center)
print("transferred map, components in the plane:")
for p in g.p2_components():
    print("   ", poly_to_string(p))
print("algebraic degree:", g.algebraic_degree())
print("verdict:", classify(g).verdict)
