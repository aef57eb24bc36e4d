import random

import pytest

from nilbicone.invariants import polarized_family, random_element, random_rational
from nilbicone.liealg import build_sl
from nilbicone.varieties import (
    Kind,
    PairPoint,
    WitnessRejected,
    build_variety,
    gl2_act,
    is_in_bicone,
    is_in_nullcone,
    is_in_omega,
    is_smooth_point_of_N,
    jacobian_rank,
    p1_nilpotency_check,
    principal_cone_membership,
    random_nullcone_pair,
    random_pair_mix,
    remark_sl3_pair,
    variety,
    witness_li3,
    witness_polind,
)

P2, P3 = polarized_family(2), polarized_family(3)
G2, G3 = P2.algebra, P3.algebra


@pytest.mark.parametrize("n,counts", [
    (2, {"NilpotentBicone": 3, "PrincipalBicone": 0, "Ybicone": 1, "Zbicone": 2,
         "NilpotentCone": 1, "PrincipalCone": 0}),
    (3, {"NilpotentBicone": 7, "PrincipalBicone": 4, "Ybicone": 5, "Zbicone": 6,
         "NilpotentCone": 2, "PrincipalCone": 1}),
    (4, {"NilpotentBicone": 12, "PrincipalBicone": 9, "Ybicone": 10, "Zbicone": 11,
         "NilpotentCone": 3, "PrincipalCone": 2}),
])
def test_generator_counts(n, counts):
    for kind, count in counts.items():
        spec = variety(kind, n)
        assert len(spec.ideal) == count == spec.expected_codim_generators
        g = spec.algebra
        nv = g.dimension if spec.kind.is_cone else 2 * g.dimension
        assert spec.ideal.ring.nvars == nv


@pytest.mark.parametrize("n", [2, 3, 4])
def test_expected_dimensions(n):
    g = build_sl(n)
    b, rk, d = g.borel_dimension, g.rank, g.dimension
    want = {Kind.NILPOTENT_BICONE: 3 * (b - rk), Kind.PRINCIPAL_BICONE: 3 * (b - rk + 1),
            Kind.Y_BICONE: 3 * (b - rk) + 2, Kind.Z_BICONE: 3 * (b - rk) + 1,
            Kind.NILPOTENT_CONE: d - rk, Kind.PRINCIPAL_CONE: d - rk + 1}
    assert {k: variety(k, n).expected_dimension for k in Kind} == want


def test_ideal_labels():
    spec = variety(Kind.Z_BICONE, 3)
    assert "p_{1,1,1}" in spec.ideal.labels and "p_{1,0,2}" in spec.ideal.labels
    assert variety(Kind.NILPOTENT_CONE, 3).ideal.labels == ("p_1", "p_2")
    with pytest.raises(ValueError):
        variety("NoSuchKind", 2)


def test_pair_point():
    with pytest.raises(ValueError):
        PairPoint(G2.e, G3.e)
    p = PairPoint(G2.e, G2.h)
    assert PairPoint.from_json(p.to_json()) == p


def test_omega_examples():
    e, h, f = G3.principal_triple
    assert is_in_omega(PairPoint(h, e), P3)
    assert not is_in_omega(PairPoint(e, G3.scale(2, e)), P3)
    assert is_in_omega(remark_sl3_pair(), P3)


def test_smoothness_examples():
    assert is_smooth_point_of_N(PairPoint(G3.h, G3.e), P3)
    assert not is_smooth_point_of_N(PairPoint(G2.zero(), G2.zero()), P2)
    assert jacobian_rank(PairPoint(G2.zero(), G2.zero()), P2) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_jacobian_agrees_with_omega(n):
    P = polarized_family(n)
    pairs = random_pair_mix(P.algebra, random.Random(n), 60)
    results = [is_smooth_point_of_N(p, P) for p in pairs]
    # both outcomes occur, so agreement is not vacuous
    assert any(results) and not all(results)


def test_remark_fixture():
    pt = remark_sl3_pair()
    N = variety(Kind.NILPOTENT_BICONE, 3)
    assert is_in_bicone(pt, N)
    assert not is_in_nullcone(pt, G3)
    assert G3.to_matrix(pt.x) == [[0, 0, 0], [1, 0, 0], [0, -1, 0]]


def test_nullcone_examples():
    g = G3
    upper = PairPoint(g.e, g.bracket(g.e, g.basis_element("E12")))
    assert is_in_nullcone(upper, g)
    assert not is_in_nullcone(PairPoint(g.e, g.f), g)
    # each is nilpotent, but together they generate a copy of sl2
    assert not is_in_nullcone(PairPoint(g.basis_element("E12"), g.basis_element("E21")), g)
    assert is_in_nullcone(PairPoint(g.zero(), g.zero()), g)


def test_nullcone_conjugation_invariant():
    """Conjugating u x u by a random unipotent lower matrix stays in the nullcone."""
    g = G3
    rng = random.Random(2)
    for _ in range(10):
        p = random_nullcone_pair(g, rng)
        c = random_rational(rng)
        # exp(ad c E31) = conjugation by I + c E31
        L = [[1, 0, 0], [0, 1, 0], [c, 0, 1]]
        Linv = [[1, 0, 0], [0, 1, 0], [-c, 0, 1]]

        def conj(v):
            M = g.to_matrix(v)
            return g.from_matrix(g._matmul(g._matmul(L, M), Linv))

        assert is_in_nullcone(PairPoint(conj(p.x), conj(p.y)), g)


def test_bicone_membership_examples():
    for kind in Kind:
        spec = variety(kind, 3)
        assert is_in_bicone(PairPoint(G3.zero(), G3.zero()), spec)
    assert is_in_bicone(PairPoint(G3.h, G3.e), variety(Kind.PRINCIPAL_BICONE, 3))
    assert not is_in_bicone(PairPoint(G3.h, G3.h), variety(Kind.NILPOTENT_BICONE, 3))


def test_witness_li3():
    N = variety(Kind.NILPOTENT_BICONE, 3)
    w = witness_li3(G3.lowest_weight_vector(), G3)
    assert is_in_bicone(w, N)
    with pytest.raises(WitnessRejected) as exc:
        witness_li3(G2.f, G2)
    assert exc.value.value == G2.scale(-2, G2.f)
    assert witness_li3(G2.zero(), G2) == PairPoint(G2.e, G2.zero())


@pytest.mark.parametrize("n", [3, 4])
def test_witness_polind(n):
    P = polarized_family(n)
    w = witness_polind(n)
    assert is_in_bicone(w, variety(Kind.NILPOTENT_BICONE, n))
    assert not is_in_nullcone(w, P.algebra)


def test_witness_polind_rejects_sl2():
    with pytest.raises(WitnessRejected):
        witness_polind(2)


def test_principal_cone():
    assert principal_cone_membership(G3.h, P3)
    assert P3.family.p(1).evaluate(G3.h) == 8
    assert p1_nilpotency_check(G3.h, P3) is True
    assert p1_nilpotency_check(G3.e, P3) is True
    rng = random.Random(4)
    assert all(principal_cone_membership(random_element(G2, rng), P2) for _ in range(5))
    generic = random_element(G3, rng)
    assert not principal_cone_membership(generic, P3)
    assert p1_nilpotency_check(generic, P3) is None


@pytest.mark.parametrize("n", [2, 3])
def test_scaling_and_gl2(n):
    P = polarized_family(n)
    g = P.algebra
    rng = random.Random(10 + n)
    N = build_variety(Kind.NILPOTENT_BICONE, P)
    members = [random_nullcone_pair(g, rng) for _ in range(10)] + [witness_li3(g.e, g)]
    for p in members:
        s, t = random_rational(rng), random_rational(rng)
        assert is_in_bicone(PairPoint(g.scale(s, p.x), g.scale(t, p.y)), N)
        m = (random_rational(rng), 1, 1, random_rational(rng) + 7)
        assert is_in_bicone(gl2_act(p, g, m), N)


@pytest.mark.parametrize("n", [2, 3])
def test_containment_chain(n):
    P = polarized_family(n)
    g = P.algebra
    specs = [build_variety(k, P) for k in (Kind.NILPOTENT_BICONE, Kind.Z_BICONE, Kind.Y_BICONE, Kind.PRINCIPAL_BICONE)]
    rng = random.Random(n)
    pool = random_pair_mix(g, rng, 40) + [random_nullcone_pair(g, rng) for _ in range(10)]
    for p in pool:
        if is_in_nullcone(p, g):
            assert is_in_bicone(p, specs[0])
        flags = [is_in_bicone(p, s) for s in specs]
        assert flags == sorted(flags)


def test_principal_sl2_inside_principal_bicone():
    X = variety(Kind.PRINCIPAL_BICONE, 3)
    rng = random.Random(0)
    e, h, f = G3.principal_triple
    for _ in range(10):
        x = G3.add(*(G3.scale(random_rational(rng), v) for v in (e, h, f)))
        y = G3.add(*(G3.scale(random_rational(rng), v) for v in (e, h, f)))
        assert is_in_bicone(PairPoint(x, y), X)
