"""
Smooth points, the nullcone and a non-reducedness witness
=========================================================

A pair (x, y) is a smooth point of the nilpotent bicone exactly when the
b_g vectors eps_{i,m,d_i-m}(x, y) span a space of dimension b_g. Pairs in a
common Borel nilradical never are, which is what makes the bicone
non-reduced.
"""

import random

from nilbicone import Kind, polarized_family, variety
from nilbicone.varieties import (
    PairPoint,
    is_in_bicone,
    is_in_nullcone,
    is_in_omega,
    is_smooth_point_of_N,
    jacobian_rank,
    random_nullcone_pair,
    remark_sl3_pair,
    witness_polind,
)

P = polarized_family(3)
g = P.algebra
N = variety(Kind.NILPOTENT_BICONE, 3)

###############################################################################
# The principal pair (h, e) is a smooth point; (e, 2e) spans only a line.
for name, pair in [("(h, e)", PairPoint(g.h, g.e)), ("(e, 2e)", PairPoint(g.e, g.scale(2, g.e)))]:
    print(name, "smooth:", is_smooth_point_of_N(pair, P), "Jacobian rank:", jacobian_rank(pair, P))

###############################################################################
# The explicit sl3 pair x = E21 - E32, e = E12 + E23 lies in the bicone, is a
# smooth point, and is not in the nullcone.
pt = remark_sl3_pair()
print("fixture in N:", is_in_bicone(pt, N), " in Omega:", is_in_omega(pt, P),
      " in nullcone:", is_in_nullcone(pt, g))

###############################################################################
# Random pairs of strictly upper triangular matrices lie in the nullcone and
# never in Omega.
rng = random.Random(0)
pairs = [random_nullcone_pair(g, rng) for _ in range(50)]
print("u x u pairs in Omega:", sum(is_in_omega(p, P) for p in pairs), "of", len(pairs))

###############################################################################
# The pair (e, [v, e]) with v the lowest-weight vector is in N but outside the
# nullcone, in sl3 and in sl4.
for n in (3, 4):
    w = witness_polind(n)
    print(f"sl{n} witness: in N {is_in_bicone(w, variety(Kind.NILPOTENT_BICONE, n))}, "
          f"in nullcone {is_in_nullcone(w, polarized_family(n).algebra)}")
