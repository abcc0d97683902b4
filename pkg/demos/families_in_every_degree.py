"""
Fixed-point-free maps of every topological degree
=================================================

The catalog builds families covering every degree d >= 2: the even
family hits 2d+2, the odd family 2d+3, and the power family fills in
k+1, starting from the smallest cases.  Each member is certified here
from scratch; nothing is taken on faith from the construction.
"""

from fixfree import classify, topological_degree
from fixfree.catalog import bidegree, even, odd, power

print(f"{'member':>14}   degree   verdict")
for name, f in (
    [(f"even({d})", even(d)) for d in (1, 2, 3)]
    + [(f"odd({d})", odd(d)) for d in (1, 2)]
    + [(f"power({k})", power(k)) for k in (2, 3, 4)]
):
    out = classify(f)
    print(f"{name:>14}   {topological_degree(f):>6}   {out.verdict}")

# the even and odd constructions accept custom divisor pairs; the root
# test still has to pass, so not every choice is allowed
custom = even(2, [(3, 7), (4, 9)])
print()
print("even(2) with pairs (3,7), (4,9):", classify(custom).verdict)

# the bidegree family trades the single degree number for a bidegree
# matrix, one row per factor of the product
f = bidegree(2)
print()
print("bidegree(2):", classify(f).verdict)
print("bidegree matrix:", f.bidegree_matrix())
