"""
Dimensions of the bicones by Groebner bases
===========================================

Each bicone is given by an explicit ideal in the coordinates of g x g. A
reduced degrevlex Groebner basis yields the Krull dimension as the size of a
largest set of variables containing no leading monomial.
"""

import time

from nilbicone import Kind, dimension_report, variety
from nilbicone.dimension import Budget

###############################################################################
# sl2 over the rationals: every ideal is small.
for kind in Kind:
    res = dimension_report(variety(kind, 2))
    print(f"sl2 {kind.value:16s} dim {res.krull_dimension} (expected {res.expected})")

###############################################################################
# sl3 has 16 variables for the bicones. The nilpotent bicone still finishes
# over Q in about a second; over F_65521 it is faster still. Results over a
# prime field are flagged as modular.
for field in ("q", "p:65521"):
    t0 = time.perf_counter()
    res = dimension_report(variety(Kind.NILPOTENT_BICONE, 3), field)
    print(f"sl3 NilpotentBicone over {field}: dim {res.krull_dimension}, "
          f"{res.basis_size} basis elements, {time.perf_counter() - t0:.2f} s, modular={res.modular_heuristic}")

###############################################################################
# A deliberately tiny budget shows how an unfinished computation is reported.
res = dimension_report(variety(Kind.NILPOTENT_BICONE, 3), "p:65521", Budget(spairs=5))
print("with a 5 S-pair budget:", res.status, res.krull_dimension)
