import random

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld import (GF, USeries, binom_mod_p, eisenstein, false_eisenstein,
                      fraction_field, g_form, hecke_T, hecke_T_s, hecke_U, hecke_V,
                      pi_theta_integral, poly_ring, serre_D, theta_r, theta_r_monomial,
                      u_a_series)
from drinfeld.operators import hecke_U_window, theta_coefficients, theta_iterate
from drinfeld.vadic import VSeries, WeightS

from drinfeld.checks import random_frac, random_integral_series


def random_frac_series(K, N, rng):
    return USeries(K, [random_frac(rng, K) for _ in range(N)], N)


def random_poly_series(A, N, rng):
    return random_integral_series(rng, A, N)


def K_of(q):
    return fraction_field(GF(q))


def A_of(q):
    return poly_ring(GF(q))


def derivative_u2(f):
    ring = f.ring
    out = [ring.zero] * f.trunc
    for n, c in enumerate(f.coeffs):
        if n + 1 < f.trunc and c:
            out[n + 1] = c * n
    return USeries(ring, out, f.trunc)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_theta_low_orders(q):
    rng = random.Random(q)
    f = random_frac_series(K_of(q), 15, rng)
    assert theta_r(f, 0) == f
    assert theta_r(f, 1) == derivative_u2(f)
    assert theta_r(USeries.one(K_of(q), 10), 3) == USeries.zero(K_of(q), 10)


def test_theta_u_example():
    K = K_of(3)
    u = USeries(K, [K.zero, K.one], 6)
    assert theta_r(u, 1) == USeries(K, [K.zero, K.zero, K.one], 6)


@pytest.mark.parametrize("q", [2, 3])
def test_theta_formulas_agree(q):
    F = GF(q)
    for n in range(1, 8):
        for r in range(0, 8):
            theta_r_monomial(F, n, r)


@settings(max_examples=25)
@given(st.sampled_from([2, 3]), st.integers(0, 2 ** 30), st.integers(0, 8))
def test_theta_coefficient_rule(q, seed, r):
    f = random_frac_series(K_of(q), 14, random.Random(seed))
    assert theta_r(f, r) == theta_coefficients(f, r)


@pytest.mark.parametrize("q", [2, 3])
def test_theta_composition(q):
    rng = random.Random(7 * q)
    K = K_of(q)
    p = GF(q).p
    f = random_frac_series(K, 20, rng)
    for j in range(0, 7):
        for k in range(0, 7):
            lhs = theta_r(theta_r(f, k), j)
            rhs = theta_r(f, j + k).scale(binom_mod_p(j + k, j, p))
            assert lhs == rhs, (j, k)


@pytest.mark.parametrize("q", [2, 3])
def test_iterate_is_factorial_multiple(q):
    # (Theta^1)^r = r! Theta^r
    K = K_of(q)
    f = random_frac_series(K, 16, random.Random(q))
    for r in range(1, 6):
        fact = 1
        for i in range(2, r + 1):
            fact *= i
        assert theta_iterate(f, r) == theta_r(f, r).scale(fact % GF(q).p)


def test_theta_support_shift():
    F = GF(3)
    g = g_form(F, 1, 24)
    for r in range(1, 5):
        t = theta_r(g.series, r)
        for n, c in enumerate(t.coeffs):
            if c:
                assert (n - r) % 2 == 0


@pytest.mark.parametrize("q", [2, 3])
def test_pi_theta_integral(q):
    rng = random.Random(q + 11)
    A = A_of(q)
    for r in range(0, 9):
        f = random_poly_series(A, 18, rng)
        out = pi_theta_integral(f, r)
        assert out.ring is A or out.ring == A
    with pytest.raises(ArithmeticError):
        K = K_of(q)
        bad = USeries(K, [K.zero, K.one / K(A.theta)], 8)
        pi_theta_integral(bad, 0)


def test_serre_identities():
    F = GF(3)
    K = fraction_field(F)
    f = eisenstein(F, 4, 20)
    assert serre_D(f, 0).series == f.series
    E = false_eisenstein(F, 20).series
    d1 = serre_D(f, 1)
    assert theta_r(f.series, 1) == d1.series + (E * f.series).scale(K(4))
    assert d1.weight == 6 and d1.type == 1


@pytest.mark.parametrize("q,k", [(3, 2), (3, 4), (2, 3)])
def test_serre_preserves_support(q, k):
    F = GF(q)
    f = eisenstein(F, k, 30)
    for r in range(1, 4):
        D = serre_D(f, r)
        assert D.type == r % (q - 1)
        assert D.support_ok()
    with pytest.raises(TypeError):
        serre_D(f.series, 1)


def _primes(q):
    A = A_of(q)
    t = A.theta
    return [t, t + A.one, t * t + A.one] if q == 3 else [t, t + A.one, t * t + t + A.one]


@pytest.mark.parametrize("q", [2, 3])
def test_hecke_U_routes_agree(q):
    A = A_of(q)
    K = K_of(q)
    rng = random.Random(q)
    for ell in _primes(q):
        f = random_poly_series(A, 20, rng)
        a = hecke_U(f, ell)
        b = hecke_U(f.change_ring(K), ell, method="goss")
        assert a.change_ring(K) == b
        assert a.trunc == hecke_U_window(GF(q), ell, 20)


def test_hecke_U_window_values():
    F = GF(3)
    A = poly_ring(F)
    assert hecke_U_window(F, A.theta, 20) == 1 + 7
    assert hecke_U_window(F, A.theta ** 2 + A.one, 20) == 1 + 3


@pytest.mark.parametrize("q", [2, 3])
def test_U_after_V_vanishes(q):
    A = A_of(q)
    rng = random.Random(3 * q)
    for ell in _primes(q):
        f = random_poly_series(A, 24, rng)
        assert not any(hecke_U(hecke_V(f, ell), ell).coeffs)


def test_V_basics():
    F = GF(3)
    A = poly_ring(F)
    ell = A.theta + A.one
    one = USeries.one(A, 12)
    assert hecke_V(one, ell) == one
    u = USeries(A, [A.zero, A.one], 12)
    assert hecke_V(u, ell) == u_a_series(ell, 12)
    with pytest.raises(ValueError):
        hecke_V(u, ell, out=12 * 3 + 1)
    with pytest.raises(ValueError):
        hecke_V(u, A.theta ** 2)


def test_T_on_constants():
    F = GF(3)
    A = poly_ring(F)
    ell = A.theta
    c = USeries(A, [A.theta + A.one], 10)
    for k in (1, 2, 4):
        T = hecke_T(c, ell, k)
        assert T.coeffs[0] == ell ** k * (A.theta + A.one)
        assert not any(T.coeffs[1:])
    assert not any(hecke_T(USeries.zero(A, 10), ell, 2).coeffs)


@pytest.mark.parametrize("q,k", [(3, 2), (3, 4), (2, 3), (2, 1)])
def test_eisenstein_eigen(q, k):
    F = GF(q)
    K = fraction_field(F)
    E = eisenstein(F, k, 40).series
    for ell in _primes(q)[:2]:
        T = hecke_T(E, ell, k)
        assert T == E.truncate(T.trunc).scale(K(ell) ** k)


def test_hecke_integrality():
    A = A_of(3)
    f = random_poly_series(A, 20, random.Random(5))
    assert hecke_U(f, A.theta).ring == A
    assert hecke_T(f, A.theta, 3).ring == A


def test_hecke_T_s_matches_integer_weight():
    F = GF(3)
    A = poly_ring(F)
    prime = A.theta
    ell = A.theta + A.one
    M = 5
    f = random_poly_series(A, 20, random.Random(2))
    fv = VSeries.from_series(f, prime, M)
    for n in (1, 2, 5):
        s = WeightS.embed(n, prime, M)
        got = hecke_T_s(fv, ell, s)
        want = VSeries.from_series(hecke_T(f, ell, n), prime, M)
        assert got.agrees(want)
    with pytest.raises(ValueError):
        hecke_T_s(fv, prime, WeightS.embed(1, prime, M))
