"""Good models of three small surfaces under the action with weights (1, -1).

The punctured plane has no good quotient for this action; its good model
puts the missing origin back.  The blow-up of the plane has none either;
its good model blows the exceptional curve back down.
"""
from torquot import Fan, check_good_quotient, good_model, quotient_fan, sublattice

L = sublattice(2, [(1, -1)])
surfaces = {
    "plane": Fan.from_rays(2, [(1, 0), (0, 1)], [[0, 1]]),
    "punctured plane": Fan.from_rays(2, [(1, 0), (0, 1)], [[0], [1]]),
    "blow-up": Fan.from_rays(2, [(1, 0), (0, 1), (1, 1)], [[0, 2], [2, 1]]),
}

for name, fan in surfaces.items():
    report = check_good_quotient(fan, quotient_fan(fan, L))
    gm = good_model(fan, L)
    reasons = [m.failure for m in report.per_maximal_cone if m.failure]
    print(f"{name}: good={report.is_good} geometric={report.is_geometric} {reasons}")
    print(f"  good model maximal cones: {[list(map(list, c.rays)) for c in gm.fan.maximal_cones]}")
    print(f"  G = {gm.G}, P_bar = {gm.P_bar}")
