import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbicone.polyring import (
    Ideal,
    Poly,
    Ring,
    arc_order,
    collect_bidegree,
    degrevlex_key,
    differentiate,
    gradient,
    is_prime,
    jet_expand,
    jet_variable,
    parse_poly,
    substitute,
)

from oracle import to_sympy

R = Ring(("x", "y", "z"))
x, y, z = R.gens()


def polys(ring=R, max_terms=5, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Poly(ring, d))


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_arithmetic_matches_sympy(f, g):
    X, Y, Z = sp.symbols("x y z")
    assert sp.expand(to_sympy(f * g, (X, Y, Z)) - to_sympy(f, (X, Y, Z)) * to_sympy(g, (X, Y, Z))) == 0
    assert sp.expand(to_sympy(f ** 2, (X, Y, Z)) - to_sympy(f, (X, Y, Z)) ** 2) == 0


@given(polys())
@settings(max_examples=40, deadline=None)
def test_derivative_matches_sympy(f):
    syms = sp.symbols("x y z")
    for v, s in zip(R.variables, syms):
        assert sp.expand(to_sympy(differentiate(f, v), syms) - sp.diff(to_sympy(f, syms), s)) == 0


@given(polys())
@settings(max_examples=40, deadline=None)
def test_text_roundtrip(f):
    assert parse_poly(f.to_text(), R) == f


def test_power_and_scalar_ops():
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x + 1) ** 0 == R.one
    assert 3 * x == x.scale(3)
    assert (x - 1).evaluate((Fraction(1), 0, 0)) == 0
    with pytest.raises(ValueError):
        x ** -1


def test_degrevlex_order():
    # x > y > z; degree first, then reverse lexicographic on the last variable
    monos = [(1, 0, 1), (0, 2, 0), (2, 0, 0), (1, 1, 0), (0, 0, 1)]
    ordered = sorted(monos, key=degrevlex_key, reverse=True)
    assert ordered == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 0, 1)]
    assert (x * z + y ** 2).leading_term()[0] == (0, 2, 0)


def test_modular_ring():
    Rp = Ring(("a", "b"), 7)
    a, b = Rp.gens()
    assert (a + b) ** 7 == a ** 7 + b ** 7
    assert Rp.const(Fraction(1, 2)) == Rp.const(4)
    with pytest.raises(ZeroDivisionError):
        Rp.const(Fraction(1, 7))
    with pytest.raises(ValueError):
        Ring(("a",), 8)
    assert Rp.field_name == "p:7"


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(65521) and is_prime(2 ** 61 - 1) and not is_prime(65521 * 65537)


def test_gradient_and_homogeneity():
    f = x * x * y + 3 * z ** 3
    assert gradient(f) == [2 * x * y, x * x, 9 * z * z]
    assert f.is_homogeneous() and f.total_degree() == 3
    assert not (f + x).is_homogeneous()


def test_substitute():
    S = Ring(("s", "t"))
    s, t = S.gens()
    f = x * y - z
    out = substitute(f, {"x": s + t, "y": s - t, "z": s * s})
    assert out == -t * t
    with pytest.raises(KeyError):
        substitute(f, {"x": s})
    assert substitute(x + 2, {"x": 3}) == R.const(5)


def test_collect_bidegree():
    S = Ring(("u", "v", "a", "b"))
    u, v, a, b = S.gens()
    f = (a * u + b * v) ** 2
    parts = collect_bidegree(f, "a", "b")
    T = S.drop(["a", "b"])
    U, V = T.gens()
    assert parts == {(2, 0): U * U, (1, 1): 2 * U * V, (0, 2): V * V}


def test_jet_expand_circle_tangent():
    C = Ring(("p", "q"))
    p, q = C.gens()
    ideal = jet_expand([p * p + q * q - 1], 1, ["circle"])
    assert ideal.ring.variables == ("p_lvl0", "q_lvl0", "p_lvl1", "q_lvl1")
    p0, q0, p1, q1 = ideal.ring.gens()
    assert ideal.labeled() == {"circle@t^0": p0 * p0 + q0 * q0 - 1, "circle@t^1": 2 * p0 * p1 + 2 * q0 * q1}
    assert jet_variable("x3", 2) == "x3_lvl2"


@given(st.integers(0, 3))
@settings(max_examples=4, deadline=None)
def test_jet_expand_matches_series(m):
    f = x * y * z + x ** 2
    ideal = jet_expand([f], m)
    t = sp.Symbol("t")
    names = ideal.ring.variables
    syms = sp.symbols(names)
    level = {n: s for n, s in zip(names, syms)}
    series = [sum(level[jet_variable(v, k)] * t ** k for k in range(m + 1)) for v in R.variables]
    X, Y, Z = series
    expanded = sp.expand(X * Y * Z + X ** 2)
    for k, g in enumerate(ideal.generators):
        assert sp.expand(to_sympy(g, syms) - expanded.coeff(t, k)) == 0


def test_arc_order():
    f = x * y - z * z
    assert arc_order(f, (0, 0, 0), (1, 1, 1)) == math.inf
    assert arc_order(f, (1, 1, 0), (0, 0, 1)) == 0
    assert arc_order(x * x, (0, 0, 0), (1, 0, 0)) == 2
    assert arc_order(x * x - z, (0, 5, 0), (1, 0, 0)) == 2


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
@settings(max_examples=50, deadline=None)
def test_arc_order_degree_bound(px, py):
    """Infinite order iff the first deg + 1 coefficients vanish."""
    f = x * y - z * z + x * x * z
    line = substitute(f, {v: Ring(("t",)).const(a) + Ring(("t",)).gen("t") * b
                          for v, a, b in zip(R.variables, px, py)})
    coeffs = [line.terms.get((k,), 0) for k in range(f.total_degree() + 1)]
    assert (arc_order(f, px, py) == math.inf) == (not any(coeffs))


def test_ideal_labels_and_text():
    I = Ideal(R, [y * y, x], ["b", "a"])
    text = I.to_text()
    assert text == "vars: x,y,z\nx\ny^2\n"
    back = Ideal.from_text(text)
    assert back.ring == R and set(back.generators) == {x, y * y}
    with pytest.raises(ValueError):
        Ideal(R, [x, y], ["a", "a"])
    with pytest.raises(ValueError):
        Ideal(R, [R.zero])


def test_constructor_coerces_coefficients():
    f = Poly(R, {(0, 0, 1): 3, (0, 0, 0): 1})
    assert all(type(c) is Fraction for c in f.terms.values())
    assert f.monic() == z + Fraction(1, 3)
    assert Poly(Ring(("a",), 5), {(1,): 7}).terms == {(1,): 2}
    with pytest.raises(ValueError):
        Poly(R, {(1, 0): 1})
