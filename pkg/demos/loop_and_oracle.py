"""The merging loop on a small example in Z^3, and a cross-check.

Two 2-dimensional cones project to overlapping cones in the plane.
One loop step merges them into the quadrant.  Because the quotient lattice
has rank 2, the chain-of-overlaps construction gives a second, independent
route to the same answer.
"""
from torquot import Fan, codim2_quotient_oracle, quotient_fan, sublattice

fan = Fan.from_rays(3, [(1, 0, 0), (1, 2, 0), (1, 1, 1), (0, 1, 0)], [[0, 1], [2, 3]])
L = sublattice(3, [(0, 0, 1)])

q = quotient_fan(fan, L)
for step in q.trace:
    print(step.as_dict())
print("quotient maximal cones:", [list(map(list, c.rays)) for c in q.fan.maximal_cones])

oracle = codim2_quotient_oracle(fan, L)
print("oracle agrees:", oracle.key() == q.key())
