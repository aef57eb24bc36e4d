"""
Counting components through Levi subalgebras
============================================

Each proper subset of simple roots gives a Levi subalgebra; the recursion
over these subsets produces a lower bound for the number of irreducible
components of the nilpotent bicone.
"""

from nilbicone.rootsys import (
    SUPPORTED,
    build_root_datum,
    component_lower_bound,
    levi_decompose,
    scan_highest_root_conditions,
)

for r in range(1, 6):
    print(f"A{r}: lower bound {component_lower_bound(build_root_datum('A', r))}")

###############################################################################
# The Levi factors for two subsets of D4 simple roots.
D4 = build_root_datum("D", 4)
print(levi_decompose(D4, {0, 2, 3}).simple_factors, levi_decompose(D4, {0, 1, 2}).simple_factors)

###############################################################################
# No simple root satisfies both highest-root conditions, in any supported type.
for t, ranks in SUPPORTED.items():
    for r in ranks:
        d = build_root_datum(t, r)
        print(d.name, "highest root", d.highest_root, "scan", scan_highest_root_conditions(d))
