"""
Jet schemes of the nilpotent cone
=================================

Replacing each coordinate by a truncated series x_lvl0 + x_lvl1 t + ... and
expanding the equations up to t^m gives the m-th jet scheme. For the
nilpotent cone of sl2 its dimension grows as 2(m + 1).
"""

from nilbicone import Kind, variety
from nilbicone.jets import arc_criterion, build_jet_ideal, check_mustata_dimension
from nilbicone.varieties import PairPoint, remark_sl3_pair

cone = variety(Kind.NILPOTENT_CONE, 2)
for m in range(4):
    jet = build_jet_ideal(cone, m)
    r = check_mustata_dimension(jet)
    print(f"m={m}: {len(jet.ideal)} equations in {jet.ideal.ring.nvars} variables, dim {r.computed}")

print(build_jet_ideal(cone, 1).ideal.to_text())

###############################################################################
# A pair lies in the nilpotent bicone when the whole line x + t y stays in the
# nilpotent cone.
cone3 = variety(Kind.NILPOTENT_CONE, 3)
g = cone3.algebra
print("fixture line nilpotent:", arc_criterion(remark_sl3_pair(), cone3))
print("(h, h) line nilpotent:", arc_criterion(PairPoint(g.h, g.h), cone3))
