"""Ideals and exact point-membership tests for the cones and bicones of sl_n.

All membership tests evaluate polynomials or compute ranks over Q; there is
no numerical tolerance anywhere.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .invariants import PolarizedFamily, polarized_family, random_element, random_rational
from .liealg import LieAlgebra
from .polyring import Ideal, differentiate

__all__ = [
    "Kind",
    "VarietyKind",
    "VarietySpec",
    "PairPoint",
    "build_variety",
    "variety",
    "is_in_omega",
    "jacobian_rank",
    "is_smooth_point_of_N",
    "is_in_nullcone",
    "is_in_bicone",
    "witness_li3",
    "witness_polind",
    "principal_cone_membership",
    "p1_nilpotency_check",
    "remark_sl3_pair",
    "random_nullcone_pair",
    "random_pair_mix",
    "WitnessRejected",
]


class Kind(enum.Enum):
    """The six cones and bicones with a built-in defining ideal."""

    NILPOTENT_BICONE = "NilpotentBicone"
    PRINCIPAL_BICONE = "PrincipalBicone"
    Y_BICONE = "Ybicone"
    Z_BICONE = "Zbicone"
    NILPOTENT_CONE = "NilpotentCone"
    PRINCIPAL_CONE = "PrincipalCone"

    @property
    def is_cone(self) -> bool:
        return self in (Kind.NILPOTENT_CONE, Kind.PRINCIPAL_CONE)


@dataclass(frozen=True)
class PairPoint:
    x: tuple
    y: tuple

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must belong to the same algebra")
        object.__setattr__(self, "x", tuple(Fraction(c) for c in self.x))
        object.__setattr__(self, "y", tuple(Fraction(c) for c in self.y))

    @property
    def coords(self) -> tuple:
        return self.x + self.y

    def to_json(self) -> dict:
        return {"x": [str(c) for c in self.x], "y": [str(c) for c in self.y]}

    @classmethod
    def from_json(cls, d: dict) -> "PairPoint":
        return cls(tuple(Fraction(c) for c in d["x"]), tuple(Fraction(c) for c in d["y"]))


@dataclass(frozen=True)
class VarietySpec:
    kind: Kind
    algebra: LieAlgebra
    ideal: Ideal
    expected_dimension: int
    expected_codim_generators: int


def _p_labels(keys):
    return [f"p_{{{i},{m},{n}}}" for i, m, n in keys]


def _q_labels(keys):
    return [f"q_{{{i},{m},{n}}}" for i, m, n in keys]


def build_variety(kind: Kind | str, polarized: PolarizedFamily) -> VarietySpec:
    """Assemble the labelled defining ideal of ``kind`` and its expected dimension."""
    kind = Kind(kind)
    fam = polarized.family
    g = fam.algebra
    b, rk, d = g.borel_dimension, g.rank, g.dimension
    pk = sorted(polarized.p, key=lambda k: (k[0], -k[1]))
    qk = sorted(polarized.q_pol, key=lambda k: (k[0], -k[1]))
    ring = polarized.ring
    q_gens = [polarized.q_pol[k] for k in qk]
    if kind is Kind.NILPOTENT_BICONE:
        ideal = Ideal(ring, [polarized.p[k] for k in pk], _p_labels(pk))
        expected, count = 3 * (b - rk), b + rk
    elif kind is Kind.PRINCIPAL_BICONE:
        ideal = Ideal(ring, q_gens, _q_labels(qk))
        expected, count = 3 * (b - rk + 1), b + rk - 3
    elif kind is Kind.Y_BICONE:
        ideal = Ideal(ring, q_gens + [polarized.p[(1, 1, 1)]], _q_labels(qk) + ["p_{1,1,1}"])
        expected, count = 3 * (b - rk) + 2, b + rk - 2
    elif kind is Kind.Z_BICONE:
        ideal = Ideal(ring, q_gens + [polarized.p[(1, 1, 1)], polarized.p[(1, 0, 2)]],
                      _q_labels(qk) + ["p_{1,1,1}", "p_{1,0,2}"])
        expected, count = 3 * (b - rk) + 1, b + rk - 1
    elif kind is Kind.NILPOTENT_CONE:
        ideal = Ideal(fam.ring, fam.generators, [f"p_{i}" for i in range(1, rk + 1)])
        expected, count = d - rk, rk
    else:
        ideal = Ideal(fam.ring, [polarized.q[i] for i in sorted(polarized.q)],
                      [f"q_{i}" for i in sorted(polarized.q)])
        expected, count = d - rk + 1, rk - 1
    if len(ideal) != count:
        raise ArithmeticError(f"{kind.value}: {len(ideal)} generators, expected {count}")
    return VarietySpec(kind, g, ideal, expected, count)


def variety(kind: Kind | str, n: int) -> VarietySpec:
    return build_variety(kind, polarized_family(n))


# -- Omega and smoothness ----------------------------------------------------------

def is_in_omega(p: PairPoint, polarized: PolarizedFamily) -> bool:
    """Rank of V(x, y) = span(x, y, eps_{i,m,d_i-m}(x, y)) equals b_g."""
    vecs = [p.x, p.y] + polarized.epsilon_vectors(p.x, p.y)
    return linalg.rank(vecs) == polarized.algebra.borel_dimension


_JACOBIANS: dict[int, list] = {}


def _jacobian_polys(polarized: PolarizedFamily):
    key = id(polarized)
    if key not in _JACOBIANS:
        ring = polarized.ring
        _JACOBIANS[key] = [[differentiate(f, v) for v in ring.variables] for f in polarized.p.values()]
    return _JACOBIANS[key]


def jacobian_rank(p: PairPoint, polarized: PolarizedFamily) -> int:
    """Rank of the differential of (x, y) -> (p_{i,m,n}(x, y)) at p."""
    point = p.coords
    rows = [[df.evaluate(point) if df else 0 for df in row] for row in _jacobian_polys(polarized)]
    return linalg.rank(rows)


def is_smooth_point_of_N(p: PairPoint, polarized: PolarizedFamily) -> bool:
    """Full-rank Jacobian of all polarizations; asserted equal to the Omega test."""
    g = polarized.algebra
    smooth = jacobian_rank(p, polarized) == g.borel_dimension + g.rank
    omega = is_in_omega(p, polarized)
    if smooth != omega:
        raise AssertionError(f"Jacobian test ({smooth}) disagrees with Omega test ({omega}) at {p}")
    return smooth


# -- nullcone and bicone membership --------------------------------------------------

def is_in_nullcone(p: PairPoint, g: LieAlgebra) -> bool:
    """x and y lie in the nilradical of a common Borel subalgebra.

    For sl_n this holds iff x and y are simultaneously strictly triangularizable,
    i.e. the associative algebra they generate is nilpotent: every product of
    n factors from {x, y} vanishes. The span of words is closed level by level.
    """
    X, Y = g.to_matrix(p.x), g.to_matrix(p.y)
    n = g.n

    def flat(m):
        return [c for row in m for c in row]

    def unflat(v):
        return [list(v[i * n:(i + 1) * n]) for i in range(n)]

    level = [flat(X), flat(Y)]
    for _ in range(n - 1):
        red, _ = linalg.row_echelon([v for v in level if any(v)])
        if not red:
            return True
        level = [flat(g._matmul(unflat(v), M)) for v in red for M in (X, Y)]
    return not any(any(v) for v in level)


def is_in_bicone(p: PairPoint, spec: VarietySpec) -> bool:
    """Every generator of ``spec.ideal`` vanishes at p."""
    point = p.x if spec.kind.is_cone else p.coords
    return all(f.evaluate(point) == 0 for f in spec.ideal.generators)


# -- witnesses ----------------------------------------------------------------------

class WitnessRejected(ValueError):
    """The element does not satisfy the hypothesis of the construction."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


def witness_li3(x: Sequence, g: LieAlgebra) -> PairPoint:
    """(e, [x, e]) when (ad x)^2(e) = 0; such a pair lies in the nilpotent bicone."""
    e = g.e
    xe = g.bracket(x, e)
    sq = g.bracket(x, xe)
    if any(sq):
        raise WitnessRejected("(ad x)^2(e) is nonzero", sq)
    return PairPoint(e, xe)


def witness_polind(n: int) -> PairPoint:
    """(e, [v, e]) with v a lowest-weight vector: in N_g but not in the nullcone."""
    if n < 3:
        raise WitnessRejected("sl2 has no such witness (polarization index is infinite)")
    P = polarized_family(n)
    g = P.algebra
    v = g.lowest_weight_vector()
    sq = g.bracket(v, g.bracket(v, g.e))
    if any(sq):
        raise ArithmeticError("(ad v)^2(e) should vanish for the lowest-weight vector")
    pair = PairPoint(g.e, g.bracket(v, g.e))
    if not is_in_bicone(pair, build_variety(Kind.NILPOTENT_BICONE, P)):
        raise ArithmeticError("witness is not in the nilpotent bicone")
    if is_in_nullcone(pair, g):
        raise ArithmeticError("witness unexpectedly lies in the nullcone")
    return pair


def principal_cone_membership(x: Sequence, polarized: PolarizedFamily) -> bool:
    """All q_i vanish at x."""
    return all(q.evaluate(x) == 0 for q in polarized.q.values())


def p1_nilpotency_check(x: Sequence, polarized: PolarizedFamily) -> bool | None:
    """For x in the principal cone: p_1(x) = 0 iff x is nilpotent.

    Returns None when x is not in the principal cone (check not applicable).
    """
    if not principal_cone_membership(x, polarized):
        return None
    g = polarized.algebra
    return (polarized.family.p(1).evaluate(x) == 0) == g.is_nilpotent(x)


# -- fixtures and samplers -------------------------------------------------------------

def remark_sl3_pair() -> PairPoint:
    """The explicit sl3 pair (x, e) with x = E21 - E32 and e = E12 + E23."""
    g = polarized_family(3).algebra
    x = g.from_matrix([[0, 0, 0], [1, 0, 0], [0, -1, 0]])
    e = g.from_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    return PairPoint(x, e)


def random_nullcone_pair(g: LieAlgebra, rng: random.Random) -> PairPoint:
    """Random pair in u x u."""
    return PairPoint(random_element(g, rng, g.upper_indices), random_element(g, rng, g.upper_indices))


def _random_gl2(rng):
    while True:
        a, b, c, d = (random_rational(rng) for _ in range(4))
        if a * d - b * c:
            return a, b, c, d


def gl2_act(p: PairPoint, g: LieAlgebra, m) -> PairPoint:
    a, b, c, d = m
    return PairPoint(g.combine(a, p.x, b, p.y), g.combine(c, p.x, d, p.y))


def random_pair_mix(g: LieAlgebra, rng: random.Random, count: int) -> list[PairPoint]:
    """A spread of pairs: generic, Borel, nilradical, degenerate, commuting and
    principal-triple fixtures, so that both outcomes of rank tests occur."""
    out = []
    e, h, f = g.principal_triple
    fixtures = [(e, h), (f, h), (e, f), (h, e), (e, g.scale(2, e)), (g.zero(), g.zero()), (h, h)]
    b_idx = list(g.upper_indices) + list(g.cartan_indices)
    for k in range(count):
        kind = k % 6
        if kind == 0:
            x, y = random_element(g, rng), random_element(g, rng)
        elif kind == 1:
            x, y = random_element(g, rng, b_idx), random_element(g, rng, b_idx)
        elif kind == 2:
            x, y = random_element(g, rng, g.upper_indices), random_element(g, rng, g.upper_indices)
        elif kind == 3:
            x = random_element(g, rng)
            y = g.scale(random_rational(rng), x)
        elif kind == 4:
            x = random_element(g, rng, g.cartan_indices)
            y = random_element(g, rng, g.cartan_indices)
        else:
            fx, fy = fixtures[(k // 6) % len(fixtures)]
            x, y = gl2_act(PairPoint(fx, fy), g, _random_gl2(rng)).x, gl2_act(PairPoint(fx, fy), g, _random_gl2(rng)).y
        out.append(PairPoint(x, y))
    return out


VarietyKind = Kind
