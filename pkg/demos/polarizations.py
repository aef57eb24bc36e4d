"""
Invariants and their polarizations in sl3
=========================================

The invariant polynomials of sl_n are the power traces tr(x^k). Substituting
``a x + b y`` and collecting powers of ``a`` and ``b`` gives the polarizations
p_{i,m,n}, whose common zero set is the nilpotent bicone.
"""

import random

from nilbicone import polarized_family
from nilbicone.invariants import epsilon_identity_check

P = polarized_family(3)
fam, g = P.family, P.algebra
print(g, "dimension", g.dimension, "rank", g.rank, "Borel dimension", g.borel_dimension)
print("degrees of the invariants:", fam.degrees)

# p_1 is the trace form tr(x^2); in the basis E12, E13, E23, H1, H2, E21, E31, E32
print("p_1 =", fam.p(1))

###############################################################################
# The polarization table has b + rk entries, one per bidegree.
for key in sorted(P.p):
    print(key, "terms:", len(P.p[key].terms))
print("count:", len(P.p), "= b + rk =", g.borel_dimension + g.rank)

###############################################################################
# The gradient fields eps_i, read through the trace form, satisfy an exact
# expansion along every pencil a x + b y.
report = epsilon_identity_check(P, trials=10, rng=random.Random(0))
print(report.claim_id, report.status, report.computed, "/", report.expected)

###############################################################################
# The principal cone is cut out by q_2 = p_2 here (odd degree), and q_2
# vanishes at the principal semisimple element h.
print("q_2(h) =", P.q[2].evaluate(g.h), " p_1(h) =", fam.p(1).evaluate(g.h))
