import random
from fractions import Fraction

import pytest
import sympy as sp

from nilbicone import linalg
from nilbicone.invariants import (
    PENCIL_SAMPLES,
    build_invariants_sl,
    characteristic_submodule_check,
    check_ad_invariance,
    epsilon_identity_check,
    omega_fixtures,
    polarized_family,
    random_element,
)

from oracle import to_sympy


def _sympy_generic(g):
    """Generic element sum_a x_a B_a as a sympy matrix."""
    xs = sp.symbols([f"x{a}" for a in range(g.dimension)])
    M = sp.zeros(g.n, g.n)
    for a, s in enumerate(xs):
        M += s * sp.Matrix(g.to_matrix(g.basis_element(a)))
    return xs, M


@pytest.mark.parametrize("n", [2, 3, 4])
def test_power_traces_match_sympy(n):
    fam = build_invariants_sl(n)
    g = fam.algebra
    xs, M = _sympy_generic(g)
    for i, (p, d) in enumerate(zip(fam.generators, fam.degrees), start=1):
        assert d == i + 1
        assert sp.expand(to_sympy(p, xs) - (M ** d).trace()) == 0


def test_sl2_p1_explicit():
    fam = build_invariants_sl(2)
    # coordinates (a, b, c) of a e + b h + c f
    R = fam.ring
    a, b, c = R.gens()
    assert fam.p(1) == 2 * b * b + 2 * a * c


@pytest.mark.parametrize("n", [2, 3, 4])
def test_family_invariants(n):
    fam = build_invariants_sl(n)
    g = fam.algebra
    assert sum(fam.degrees) == g.borel_dimension
    assert list(fam.degrees) == sorted(fam.degrees)
    assert all(p.is_homogeneous() for p in fam.generators)
    assert all(check_ad_invariance(g, p) for p in fam.generators)
    rng = random.Random(n)
    x = random_element(g, rng)
    assert fam.p(1).evaluate(x) == g.form(x, x)


def test_out_of_range():
    with pytest.raises(ValueError):
        build_invariants_sl(5)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_polarization_tables(n):
    P = polarized_family(n)
    g = P.algebra
    b, rk = g.borel_dimension, g.rank
    assert len(P.p) == b + rk
    assert len(P.q_pol) == b + rk - 3
    xv = [f"x{a}" for a in range(g.dimension)]
    yv = [f"y{a}" for a in range(g.dimension)]
    for (i, m, k), f in P.p.items():
        assert m + k == P.family.degrees[i - 1]
        if f:
            assert f.degrees_in(xv) == {m} and f.degrees_in(yv) == {k}
    for i, d in enumerate(P.family.degrees, start=1):
        assert all(not c for c in P.eps[(i, 0, d)])


def test_sl2_polarizations():
    P = polarized_family(2)
    g = P.algebra
    rng = random.Random(3)
    x, y = random_element(g, rng), random_element(g, rng)
    vals = P.evaluate_p(x, y)
    assert vals[(1, 2, 0)] == g.form(x, x)
    assert vals[(1, 1, 1)] == 2 * g.form(x, y)
    assert vals[(1, 0, 2)] == g.form(y, y)


@pytest.mark.parametrize("n", [3, 4])
def test_polarization_matches_sympy_expansion(n):
    P = polarized_family(n)
    g = P.algebra
    xs, X = _sympy_generic(g)
    ys = sp.symbols([f"y{a}" for a in range(g.dimension)])
    Y = X.subs(dict(zip(xs, ys)), simultaneous=True)
    a, b = sp.symbols("a b")
    gens = list(xs) + list(ys)
    d = 3
    expansion = sp.Poly(sp.expand(((a * X + b * Y) ** d).trace()), a, b)
    for m in range(d + 1):
        ours = to_sympy(P.p[(2, m, d - m)], gens)
        assert sp.expand(ours - expansion.coeff_monomial(a ** m * b ** (d - m))) == 0


def test_q_generators():
    P3 = polarized_family(3)
    g3 = P3.algebra
    assert P3.q[2] == P3.family.p(2)
    assert P3.family.p(1).evaluate(g3.h) == 8
    P4 = polarized_family(4)
    g4 = P4.algebra
    p1h = P4.family.p(1).evaluate(g4.h)
    assert p1h == 20 == (sp.Matrix(g4.to_matrix(g4.h)) ** 2).trace()
    p3h = P4.family.p(3).evaluate(g4.h)
    assert p3h == 9 * 9 + 1 + 1 + 9 * 9
    assert P4.q[3] == P4.family.p(3).scale(p1h ** 2) - (P4.family.p(1) ** 2).scale(p3h)
    for P in (P3, P4):
        assert all(q.evaluate(P.algebra.h) == 0 for q in P.q.values())
    assert polarized_family(2).q == {}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_epsilon_identity(n):
    r = epsilon_identity_check(polarized_family(n), 20, random.Random(n))
    assert r.passed and r.computed == 22


def test_epsilon_identity_needs_trials():
    with pytest.raises(ValueError):
        epsilon_identity_check(polarized_family(2), 0)


@pytest.mark.parametrize("n", [2, 3])
def test_epsilon_is_gradient_through_form(n):
    fam = build_invariants_sl(n)
    g = fam.algebra
    rng = random.Random(11)
    x, v = random_element(g, rng), random_element(g, rng)
    s = sp.Symbol("s")
    for i in range(1, fam.rank + 1):
        # <eps_i(x), v> is the s-coefficient of p_i(x + s v), recovered by interpolation
        d = fam.degrees[i - 1]
        vals = [fam.evaluate(i, g.combine(1, x, k, v)) for k in range(d + 1)]
        line = sp.interpolate([(k, sp.Rational(str(val))) for k, val in enumerate(vals)], s)
        lhs = g.form(fam.epsilon_at(i, x), v)
        assert sp.Rational(str(lhs)) == sp.Poly(line, s).coeff_monomial(s)


@pytest.mark.parametrize("n", [2, 3])
def test_epsilon_in_center_of_centralizer(n):
    fam = build_invariants_sl(n)
    g = fam.algebra
    rng = random.Random(5)
    for _ in range(5):
        x = random_element(g, rng)
        for z in g.centralizer(x):
            for i in range(1, fam.rank + 1):
                assert not any(g.bracket(fam.epsilon_at(i, x), z))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_regularity_criterion(n):
    fam = build_invariants_sl(n)
    g = fam.algebra
    rng = random.Random(7)
    pts = [random_element(g, rng) for _ in range(15)] + [g.e, g.zero(), g.basis_element(f"E1{n}")]
    pts += [random_element(g, rng, g.upper_indices[:1]) for _ in range(3)]
    for x in pts:
        eps = [fam.epsilon_at(i, x) for i in range(1, fam.rank + 1)]
        assert (linalg.rank(eps) == fam.rank) == g.is_regular(x)


def test_pencil_samples_distinct():
    assert len(PENCIL_SAMPLES) == 12
    slopes = {Fraction(a, b) if b else None for a, b in PENCIL_SAMPLES}
    assert len(slopes) == 12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_characteristic_submodule(n):
    P = polarized_family(n)
    g = P.algebra
    fixtures = omega_fixtures(g, random.Random(n), 8)
    r = characteristic_submodule_check(P, fixtures)
    assert r.passed and r.computed == [g.borel_dimension]
    assert all(s["accepted"] and s["members"] for s in r.details["samples"])


def test_characteristic_submodule_rejects_non_omega():
    P = polarized_family(3)
    g = P.algebra
    r = characteristic_submodule_check(P, [(g.e, g.scale(2, g.e))])
    assert r.status == "inconclusive"
    assert not r.details["samples"][0]["accepted"]
    r2 = characteristic_submodule_check(P, [(g.h, g.e)])
    assert r2.passed and r2.computed == [5]
