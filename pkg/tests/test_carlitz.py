import pytest

from drinfeld import (GF, LatticeSpec, TwistedPoly, USeries, big_D, big_L, bracket,
                      carlitz_action, carlitz_exp, fraction_field, monic_enum, poly_ring,
                      u_a_series, zeta_ratio)
from drinfeld.carlitz import (frobenius, hurwitz_defect, pi_power_inf, z_over_exp,
                              zeta_inf_partial, zeta_ratio_oracle)


def ring(q):
    F = GF(q)
    return F, poly_ring(F), fraction_field(F)


def test_carlitz_action_examples():
    F, A, K = ring(3)
    t = A.theta
    assert carlitz_action(t).coeffs == [t, A.one]
    assert carlitz_action(A.one).coeffs == [A.one]
    assert carlitz_action(t ** 2).coeffs == [t ** 2, t ** 3 + t, A.one]


@pytest.mark.parametrize("q", [2, 3])
def test_carlitz_is_a_homomorphism(q):
    F, A, K = ring(q)
    polys = [a * c for d in range(3) for a in monic_enum(F, d) for c in (1, q - 1)]
    for a in polys:
        for b in polys:
            assert carlitz_action(a * b) == carlitz_action(a) * carlitz_action(b)
            assert carlitz_action(a + b) == carlitz_action(a) + carlitz_action(b)
        assert carlitz_action(a).degree == a.degree


def test_twisted_multiplication_rule():
    F, A, K = ring(3)
    t = A.theta
    tau = TwistedPoly(F, [A.zero, A.one])
    c = TwistedPoly(F, [t])
    assert tau * c == TwistedPoly(F, [A.zero, t ** 3])


def test_exp_coefficients():
    F, A, K = ring(3)
    e = carlitz_exp(F, 2)
    assert e.coeffs[1] == K.one
    assert e.coeffs[3] == K.one / K(bracket(F, 1))
    assert e.coeffs[9] == K.one / K(big_D(F, 2))
    assert e.trunc == 27


@pytest.mark.parametrize("q", [2, 3])
def test_exp_functional_equation(q):
    F, A, K = ring(q)
    W = q ** 3
    e = carlitz_exp(F, 2, W)
    for d in (1, 2):
        for a in monic_enum(F, d):
            az = USeries(K, [K.zero, K(a)], W, "z")
            lhs = e.compose(az)
            rhs = carlitz_action(a)(e)
            assert lhs.agrees(rhs, upto=W)


def test_u_a_examples():
    F, A, K = ring(2)
    t = A.theta
    assert u_a_series(A.one, 10) == USeries(A, [0, 1], 10)
    ut = u_a_series(t, 10)
    expect = USeries(A, [0, 0, 1], 10) * USeries(A, [1, t], 8).inverse()
    assert ut.agrees(expect, 10)
    with pytest.raises(ValueError):
        u_a_series(A.zero, 5)
    _, A3, _ = ring(3)
    with pytest.raises(ValueError):
        u_a_series(A3([0, 2]), 5)


@pytest.mark.parametrize("q", [2, 3])
def test_u_a_lowest_term_and_integrality(q):
    F, A, K = ring(q)
    for d in range(3):
        for a in monic_enum(F, d):
            ua = u_a_series(a, 40)
            if q ** d < 40:
                assert ua.valuation() == q ** d and ua.coeffs[q ** d] == A.one


def test_u_a_is_u_of_az():
    """u_a = 1/C_a(1/u): the Laurent series 1/u_a equals C_a(1/u)."""
    from drinfeld import Laurent
    F, A, K = ring(3)
    N = 30
    for a in monic_enum(F, 1) + monic_enum(F, 2)[:3]:
        inv = u_a_series(a, N).change_ring(K).to_laurent().inverse()
        one_over_u = Laurent(K, -1, [K.one], inv.trunc, "u")
        assert inv.agrees(carlitz_action(a)(one_over_u))
        assert inv.tail == -(3 ** a.degree)


def test_zeta_ratio_values():
    F, A, K = ring(3)
    t = A.theta
    assert zeta_ratio(F, 2) == K(2, t ** 3 + 2 * t)
    for q in (2, 3, 5):
        G, _, KK = ring(q)
        assert KK(big_L(G, 1)) * zeta_ratio(G, q - 1) == KK.one
    with pytest.raises(ValueError):
        zeta_ratio(F, 3)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_z_over_exp_support(q):
    F, A, K = ring(q)
    s = z_over_exp(F, 21)
    e = carlitz_exp(F, 4, 21).shift(0)
    assert all(not c for n, c in enumerate(s.coeffs) if n % (q - 1))
    prod = (s * USeries(K, e.coeffs[1:], 20, "z")).truncate(20)
    assert prod == USeries.one(K, 20, "z")


def test_pi_power_inf():
    F, A, K = ring(3)
    p2 = pi_power_inf(F, 2, 12)
    assert p2.valuation() == -3 and p2[-3] == F.neg(1)
    p4 = pi_power_inf(F, 4, 12)
    assert p4.agrees(p2 * p2)
    with pytest.raises(ValueError):
        pi_power_inf(F, 3, 5)


def test_zeta_inf_partial():
    F, A, K = ring(3)
    z0 = zeta_inf_partial(F, 2, 0, 10)
    assert z0.valuation() == 0 and z0[0] == 1
    z6 = zeta_inf_partial(F, 2, 6, 40)
    z8 = zeta_inf_partial(F, 2, 8, 40)
    assert z6.prec == 14
    assert z6.agrees(z8)


@pytest.mark.parametrize("k", [2, 4])
def test_zeta_ratio_infinite_place(k):
    F, A, K = ring(3)
    _, _, window, agree = zeta_ratio_oracle(F, k, 8, 20)
    assert agree and window == 20


def test_zeta_oracle_window_with_small_cutoff():
    """D = 6 certifies 1/theta-precision 17 for k = 2, not 20."""
    F, A, K = ring(3)
    _, _, window, agree = zeta_ratio_oracle(F, 2, 6, 17)
    assert agree and window == 17
    with pytest.raises(ValueError):
        zeta_ratio_oracle(F, 2, 6, 20)


@pytest.mark.parametrize("q", [2, 3])
def test_hurwitz(q):
    F, A, K = ring(q)
    e = carlitz_exp(F, 5, 41)
    assert hurwitz_defect(e, 41) is None
    geo = (USeries.one(K, 41, "z") - e).inverse()
    assert hurwitz_defect(geo, 41) is None


@pytest.mark.parametrize("q,m", [(2, 1), (3, 2), (5, 4)])
def test_z_over_exp_is_not_hurwitz(q, m):
    """The z^(q-1) coefficient -1/[1] has a denominator that Pi_(q-1) = 1 cannot clear."""
    F, A, K = ring(q)
    s = z_over_exp(F, 41)
    assert hurwitz_defect(s, 41) == m
    assert s.coeffs[q - 1] == -K.one / K(bracket(F, 1))


def test_frobenius_window():
    F, A, K = ring(3)
    f = USeries(A, [0, 1, A.theta], 4)
    g = frobenius(f, 3)
    assert g.trunc == 12
    assert g.coeffs[3] == A.one and g.coeffs[6] == A.theta ** 3


def test_lattice_specs():
    F, A, K = ring(3)
    t = A.theta
    lat = LatticeSpec.division(t)
    assert lat.alpha(0) == K.one and lat.alpha(1) == K(1, t)
    assert lat.alpha(2) == K.zero
    assert LatticeSpec.carlitz(F).alpha(2) == K.one / K(big_D(F, 2))
    basis = LatticeSpec.from_basis([K.one, K(t)])
    assert len(basis.points()) == 9
    with pytest.raises(ValueError):
        LatticeSpec.from_basis([K.one, K(2)])
