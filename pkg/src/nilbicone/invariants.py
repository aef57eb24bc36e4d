"""Fundamental invariants of sl_n, their two-variable polarizations, and the
gradient fields built from them.

Coordinates on g are named ``x0 .. x{d-1}`` (and ``y0 .. y{d-1}`` for the
second factor of g x g), following the basis order of
:class:`~nilbicone.liealg.LieAlgebra`. Invariants are indexed from 1, as
``p[1] = tr(x^2)``, ``p[k] = tr(x^{k+1})``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import linalg
from .liealg import LieAlgebra, build_sl
from .polyring import Poly, Ring, collect_bidegree, gradient, substitute
from .report import FAIL, INCONCLUSIVE, PASS, Report

__all__ = [
    "InvariantFamily",
    "PolarizedFamily",
    "x_ring",
    "xy_ring",
    "build_invariants_sl",
    "polarize",
    "build_q",
    "polarized_family",
    "epsilon_identity_check",
    "characteristic_submodule_check",
    "omega_fixtures",
    "PENCIL_SAMPLES",
]

# pairwise non-proportional (a, b) used to sample the pencil a x + b y
PENCIL_SAMPLES = (
    (1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1),
    (1, -2), (2, -1), (1, 3), (3, 1), (1, 4), (4, 1),
)


def x_ring(g: LieAlgebra, modulus=None) -> Ring:
    return Ring(tuple(f"x{i}" for i in range(g.dimension)), modulus)


def xy_ring(g: LieAlgebra, modulus=None) -> Ring:
    d = g.dimension
    return Ring(tuple(f"x{i}" for i in range(d)) + tuple(f"y{i}" for i in range(d)), modulus)


def _through_form(g: LieAlgebra, grad: Sequence[Poly]) -> list[Poly]:
    """Apply the inverse form matrix so that <eps, v> = dp(v)."""
    ring = grad[0].ring
    out = []
    for row in g.form_inverse:
        acc = ring.zero
        for c, gp in zip(row, grad):
            if c and gp:
                acc = acc + gp.scale(c)
        out.append(acc)
    return out


def _point_vector(g: LieAlgebra, polys: Sequence[Poly], point) -> tuple:
    return tuple(p.evaluate(point) for p in polys)


@dataclass(frozen=True)
class InvariantFamily:
    """Homogeneous generators p_1..p_rk of the invariant algebra."""

    algebra: LieAlgebra
    ring: Ring
    generators: tuple[Poly, ...]
    degrees: tuple[int, ...]

    def p(self, i: int) -> Poly:
        return self.generators[i - 1]

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def _epsilon_fields(self) -> list[list[Poly]]:
        return [_through_form(self.algebra, gradient(p)) for p in self.generators]

    def epsilon(self, i: int) -> list[Poly]:
        """eps_i as a vector of polynomials: <eps_i(x), v> = dp_i(x)(v)."""
        return self._epsilon_fields[i - 1]

    def epsilon_at(self, i: int, x) -> tuple:
        return _point_vector(self.algebra, self.epsilon(i), x)

    def evaluate(self, i: int, x) -> Fraction:
        return self.p(i).evaluate(x)


def _generic_matrix(g: LieAlgebra, ring: Ring, prefix: str = "x") -> list[list[Poly]]:
    n = g.n
    m = [[ring.zero for _ in range(n)] for _ in range(n)]
    for a in range(g.dimension):
        var = ring.gen(f"{prefix}{a}")
        bm = g._basis_matrix(a)
        for i in range(n):
            for j in range(n):
                if bm[i][j]:
                    m[i][j] = m[i][j] + var.scale(bm[i][j])
    return m


def _poly_matmul(a, b, ring):
    n = len(a)
    out = [[ring.zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k]:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _bracket_polys(g: LieAlgebra, v: Sequence, ring: Ring) -> list[Poly]:
    """Coordinates of [v, x] as linear polynomials in the x-variables."""
    out = [ring.zero] * g.dimension
    for a in range(g.dimension):
        col = g.bracket(v, g.basis_element(a))
        xa = ring.gen(f"x{a}")
        for k, c in enumerate(col):
            if c:
                out[k] = out[k] + xa.scale(c)
    return out


def check_ad_invariance(g: LieAlgebra, p: Poly) -> bool:
    """dp(x)([v, x]) vanishes identically in x, for every basis vector v."""
    grad = gradient(p)
    for b in range(g.dimension):
        br = _bracket_polys(g, g.basis_element(b), p.ring)
        total = p.ring.zero
        for dp, c in zip(grad, br):
            if dp and c:
                total = total + dp * c
        if total:
            return False
    return True


def build_invariants_sl(n: int) -> InvariantFamily:
    """Power traces ``tr(x^2), .., tr(x^n)`` of sl_n, checked for ad-invariance."""
    return _build_invariants_sl(n)


@lru_cache(maxsize=None)
def _build_invariants_sl(n: int) -> InvariantFamily:
    if not 2 <= n <= 4:
        raise ValueError("symbolic invariants are built for 2 <= n <= 4")
    g = build_sl(n)
    ring = x_ring(g)
    X = _generic_matrix(g, ring)
    power = X
    gens = []
    for k in range(2, n + 1):
        power = _poly_matmul(power, X, ring)
        tr = ring.zero
        for i in range(n):
            tr = tr + power[i][i]
        if not check_ad_invariance(g, tr):
            raise ArithmeticError(f"tr(x^{k}) failed the ad-invariance check")
        gens.append(tr)
    return InvariantFamily(g, ring, tuple(gens), tuple(range(2, n + 1)))


def _polarize_poly(f: Poly, g: LieAlgebra, degree: int) -> dict[tuple[int, int], Poly]:
    """Bidegree components of f(a x + b y)."""
    r2 = xy_ring(g, f.ring.modulus)
    r3 = r2.extend(("a", "b"))
    a, b = r3.gen("a"), r3.gen("b")
    assign = {f"x{i}": a * r3.gen(f"x{i}") + b * r3.gen(f"y{i}") for i in range(g.dimension)}
    comps = collect_bidegree(substitute(f, assign, r3), "a", "b")
    return {(m, degree - m): comps.get((m, degree - m), r2.zero) for m in range(degree, -1, -1)}


@dataclass(frozen=True)
class PolarizedFamily:
    """Polarizations ``p[(i, m, n)]`` with ``m + n = d_i`` and their gradient
    fields ``eps[(i, m, n)]``; ``q``/``q_pol`` hold the principal-cone
    generators once :func:`build_q` has run."""

    family: InvariantFamily
    ring: Ring
    p: dict[tuple[int, int, int], Poly]
    eps: dict[tuple[int, int, int], list[Poly]]
    q: dict[int, Poly] = field(default_factory=dict)
    q_pol: dict[tuple[int, int, int], Poly] = field(default_factory=dict)

    @property
    def algebra(self) -> LieAlgebra:
        return self.family.algebra

    def epsilon_vectors(self, x, y) -> list[tuple]:
        """The b_g vectors eps_{i,m,d_i-m}(x, y) for 1 <= m <= d_i."""
        point = tuple(x) + tuple(y)
        out = []
        for i, d in enumerate(self.family.degrees, start=1):
            for m in range(1, d + 1):
                out.append(_point_vector(self.algebra, self.eps[(i, m, d - m)], point))
        return out

    def evaluate_p(self, x, y) -> dict[tuple[int, int, int], Fraction]:
        point = tuple(x) + tuple(y)
        return {k: f.evaluate(point) for k, f in self.p.items()}


def polarize(family: InvariantFamily) -> PolarizedFamily:
    """Expand each p_i(a x + b y) and collect the coefficient of a^m b^n."""
    g = family.algebra
    ptab, etab = {}, {}
    xs = [f"x{i}" for i in range(g.dimension)]
    for i, (f, d) in enumerate(zip(family.generators, family.degrees), start=1):
        for (m, n), comp in _polarize_poly(f, g, d).items():
            ptab[(i, m, n)] = comp
            etab[(i, m, n)] = _through_form(g, gradient(comp, xs)) if comp else [comp] * g.dimension
    return PolarizedFamily(family, xy_ring(g), ptab, etab)


def build_q(polarized: PolarizedFamily) -> PolarizedFamily:
    """Principal-cone generators q_2..q_rk and their polarizations.

    ``q_i = p_i`` for odd ``d_i``; otherwise
    ``q_i = p_1(h)^{d_i/2} p_i - p_i(h) p_1^{d_i/2}``, so that ``q_i(h) = 0``.
    """
    fam = polarized.family
    g = fam.algebra
    h = g.h
    p1 = fam.p(1)
    p1h = p1.evaluate(h)
    q, qpol = {}, {}
    for i in range(2, fam.rank + 1):
        d = fam.degrees[i - 1]
        pi = fam.p(i)
        if d % 2:
            qi = pi
        else:
            qi = pi.scale(p1h ** (d // 2)) - (p1 ** (d // 2)).scale(pi.evaluate(h))
        if qi.evaluate(h) != 0:
            raise ArithmeticError(f"q_{i}(h) != 0")
        q[i] = qi
        for (m, n), comp in _polarize_poly(qi, g, d).items():
            qpol[(i, m, n)] = comp
    return replace(polarized, q=q, q_pol=qpol)


@lru_cache(maxsize=None)
def polarized_family(n: int) -> PolarizedFamily:
    """Invariants, polarizations and q-tables of sl_n, built once."""
    return build_q(polarize(build_invariants_sl(n)))


# -- checks -----------------------------------------------------------------------

def random_rational(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, 3))


def random_element(g: LieAlgebra, rng: random.Random, indices=None, size: int = 5) -> tuple:
    idx = set(range(g.dimension) if indices is None else indices)
    return tuple(random_rational(rng, size) if a in idx else Fraction(0) for a in range(g.dimension))


def epsilon_identity_check(polarized: PolarizedFamily, trials: int, rng: random.Random | None = None,
                           fixed: Sequence[tuple] = ((1, 0), (0, 1))) -> Report:
    """eps_i(a x + b y) == sum_m a^{m-1} b^{d_i-m} eps_{i,m,d_i-m}(x, y), exactly.

    The ``fixed`` (a, b) values are tried first, then ``trials`` random ones.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = rng or random.Random(0)
    fam = polarized.family
    g = fam.algebra
    t0 = time.perf_counter()
    outcomes = []
    ab_values = list(fixed) + [(random_rational(rng), random_rational(rng)) for _ in range(trials)]
    for a, b in ab_values:
        a, b = Fraction(a), Fraction(b)
        x, y = random_element(g, rng), random_element(g, rng)
        z = g.combine(a, x, b, y)
        ok = True
        for i, d in enumerate(fam.degrees, start=1):
            lhs = fam.epsilon_at(i, z)
            rhs = [Fraction(0)] * g.dimension
            for m in range(1, d + 1):
                coef = a ** (m - 1) * b ** (d - m)
                if coef:
                    vec = _point_vector(g, polarized.eps[(i, m, d - m)], x + y)
                    rhs = [r + coef * v for r, v in zip(rhs, vec)]
            ok = ok and tuple(rhs) == lhs
        outcomes.append(ok)
    status = PASS if all(outcomes) else FAIL
    return Report(f"eps-identity-{g.name}", status, sum(outcomes), len(outcomes), "PAPER",
                  (time.perf_counter() - t0) * 1000, {"per_trial": outcomes})


def omega_fixtures(g: LieAlgebra, rng: random.Random, count: int) -> list[tuple[tuple, tuple]]:
    """Pairs known to lie in Omega by construction.

    Alternates between (h' + u) x (g'_2 + u_+), g'_{-2} x g'_2 and the swapped
    pairs; regular elements of g_{+-2} are sums of simple root vectors with
    all coefficients nonzero.
    """
    grading = g.ad_h_grading()
    u_plus = [a for lam, vs in grading.items() if lam >= 4 for v in vs for a, c in enumerate(v) if c]
    out = []

    def nz():
        c = Fraction(0)
        while not c:
            c = random_rational(rng)
        return c

    def graded_regular(sign):
        vec = [Fraction(0)] * g.dimension
        for i in range(g.n - 1):
            lab = f"E{i + 1}{i + 2}" if sign > 0 else f"E{i + 2}{i + 1}"
            vec[g.basis_labels.index(lab)] = nz()
        return tuple(vec)

    def regular_cartan():
        while True:
            hc = random_element(g, rng, g.cartan_indices)
            if g.is_regular(hc):
                return hc

    for k in range(count):
        kind = k % 4
        if kind in (0, 1):
            x = g.add(regular_cartan(), random_element(g, rng, g.upper_indices))
            y = g.add(graded_regular(+1), random_element(g, rng, u_plus))
        else:
            x, y = graded_regular(-1), graded_regular(+1)
        if kind % 2:
            x, y = y, x
        out.append((x, y))
    return out


def _definition_level_omega(g: LieAlgebra, x, y) -> bool:
    """Necessary conditions for Omega: independent, and regular along the
    sampled pencil directions."""
    if linalg.rank([x, y]) < 2:
        return False
    return all(g.is_regular(g.combine(a, x, b, y)) for a, b in PENCIL_SAMPLES)


def characteristic_submodule_check(polarized: PolarizedFamily, samples: Sequence[tuple]) -> Report:
    """Rank and pencil-centralizer membership of the eps fields at Omega points.

    (a) the b_g vectors eps_{i,m,d_i-m}(x, y) have rank b_g;
    (b) each lies in the sum of centralizers g(a x + b y) over the sampled
        pencil directions. A miss in (b) is inconclusive, not a failure.
    Samples failing the definition-level Omega test are rejected.
    """
    g = polarized.algebra
    t0 = time.perf_counter()
    per_sample = []
    status = PASS
    for x, y in samples:
        if not _definition_level_omega(g, x, y):
            per_sample.append({"accepted": False, "reason": "not in Omega (pencil contains a non-regular element)"})
            continue
        vecs = polarized.epsilon_vectors(x, y)
        rk = linalg.rank(vecs)
        cent = [v for a, b in PENCIL_SAMPLES for v in g.centralizer(g.combine(a, x, b, y))]
        base_rank = linalg.rank(cent)
        members = [linalg.rank(cent + [v]) == base_rank for v in vecs]
        rank_ok = rk == g.borel_dimension
        per_sample.append({"accepted": True, "rank": rk, "members": all(members)})
        if not rank_ok:
            status = FAIL
        elif not all(members) and status == PASS:
            status = INCONCLUSIVE
    accepted = [s for s in per_sample if s["accepted"]]
    if not accepted:
        status = INCONCLUSIVE
    return Report(f"char-submodule-{g.name}", status,
                  sorted({s["rank"] for s in accepted}), [g.borel_dimension] if accepted else [],
                  "PAPER", (time.perf_counter() - t0) * 1000,
                  {"samples": per_sample})
