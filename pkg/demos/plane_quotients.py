"""Quotients of the affine plane by one-parameter subgroups.

The subgroup with weights (a, b) corresponds to the sublattice spanned by
(a, b).  When a and b have opposite signs the quotient is the affine line;
otherwise everything collapses to a point.
"""
from torquot import Fan, quotient_fan, sublattice

plane = Fan.from_rays(2, [(1, 0), (0, 1)], [[0, 1]])

for a, b in [(1, 0), (1, -1), (2, -3), (1, -2), (1, 1), (2, 3)]:
    q = quotient_fan(plane, sublattice(2, [(a, b)]))
    maximal = [list(map(list, c.rays)) for c in q.fan.maximal_cones]
    print(f"weights ({a:2d}, {b:2d}): projection {q.projection}, "
          f"quotient rank {q.rank}, maximal cones {maximal}")

# (1, -2) gives P = [2, 1]: the invariant monomial is z^2 w.
