import json
from pathlib import Path

import pytest

from drinfeld import (GF, Laurent, USeries, big_L, bracket, carlitz_action, eisenstein,
                      false_eisenstein, fraction_field, g_form, monic_enum, petrov_form,
                      poly_ring, zeta_ratio)
from drinfeld.forms import goss_sum, monics_for_window, petrov_conditions

GOLDEN = Path(__file__).parent / "golden"


def setup(q):
    F = GF(q)
    return F, poly_ring(F), fraction_field(F)


def u_a_by_laurent(a, N):
    """Independent route to u_a: invert the Laurent series C_a(1/u)."""
    K = fraction_field(a.ring.F)
    one_over_u = Laurent(K, -1, [K.one], N, "u")
    return carlitz_action(a)(one_over_u).inverse().to_useries().truncate(N)


def test_monics_for_window():
    F, A, K = setup(3)
    groups = monics_for_window(F, 10)
    assert [len(g) for g in groups] == [1, 3, 9]
    assert [len(g) for g in monics_for_window(F, 9)] == [1, 3]


@pytest.mark.parametrize("q,k", [(2, 1), (2, 3), (3, 2), (3, 4), (3, 8), (5, 4)])
def test_eisenstein_support_and_constant(q, k):
    F, A, K = setup(q)
    E = eisenstein(F, k, 30)
    assert E.weight == k and E.type == 0 and E.support_ok()
    assert E.series.coeffs[0] == -zeta_ratio(F, k)
    assert E.series.agrees(eisenstein(F, k, 60).series)


def test_eisenstein_u2_coefficient():
    F, A, K = setup(3)
    E = eisenstein(F, 2, 10)
    assert E.series.coeffs[2] == K(-1)
    with pytest.raises(ValueError):
        eisenstein(F, 3, 10)


def test_eisenstein_against_independent_u_a():
    F, A, K = setup(3)
    N, k = 28, 4
    total = USeries.zero(K, N)
    for d in range(3):
        for a in monic_enum(F, d):
            ua = u_a_by_laurent(a, N)
            total = total + (ua ** k if k <= 2 else _goss_eval(F, k, ua))
    E = eisenstein(F, k, N)
    assert E.series.agrees(-total - USeries.one(K, N).scale(zeta_ratio(F, k)))


def _goss_eval(F, k, x):
    from drinfeld import LatticeSpec, goss_table
    K = fraction_field(F)
    row = goss_table(LatticeSpec.carlitz(F)).row(k - 1)
    out = USeries.zero(K, x.trunc)
    for j, b in enumerate(row):
        if b:
            out = out + (x ** (j + 1)).scale(b)
    return out


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d", [1, 2])
def test_g_d(q, d):
    F, A, K = setup(q)
    g = g_form(F, d, 30)
    s = g.integral_series()
    b = bracket(F, d)
    assert (s.coeffs[0] - A.one) % b == A.zero
    assert all(not (c % b) for c in s.coeffs[1:])
    assert g.weight == q ** d - 1 and g.support_ok()
    const = K(big_L(F, d)) * zeta_ratio(F, q ** d - 1)
    assert const.is_integral()


def test_false_eisenstein_golden():
    F, A, K = setup(2)
    E = false_eisenstein(F, 8)
    direct = USeries.zero(K, 8)
    for d in range(3):
        for a in monic_enum(F, d):
            direct = direct + u_a_by_laurent(a, 8).scale(K(a))
    assert E.series == direct
    golden = json.loads((GOLDEN / "false_e_q2_N8.json").read_text())
    assert E.to_json() == golden
    t = A.theta
    expect = [0, 1, 1, 1, t ** 2 + t + 1, 1, t ** 4 + t, t ** 4 + t ** 2 + 1]
    assert E.series == USeries(K, [K(A(c)) for c in expect], 8)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_false_eisenstein_structure(q):
    F, A, K = setup(q)
    E = false_eisenstein(F, 26)
    assert E.weight == 2 and E.type == 1 % (q - 1)
    assert E.series.coeffs[1] == K.one
    assert E.support_ok() and E.is_integral()


def test_petrov_conditions():
    F, A, K = setup(3)
    assert petrov_conditions(F, 8, 2)
    assert not petrov_conditions(F, 4, 2)        # k - 2n = 0
    assert not petrov_conditions(F, 7, 2)        # parity
    F2 = GF(2)
    assert not petrov_conditions(F2, 2, 1)
    assert petrov_conditions(F2, 3, 1)


def test_petrov_forms():
    F, A, K = setup(3)
    N = 20
    f = petrov_form(F, 8, 2, N)
    assert f.modular and f.type == 0 and f.support_ok()
    f1 = petrov_form(F, 5, 1, N)
    direct = USeries.zero(K, N)
    for d in range(3):
        for a in monic_enum(F, d):
            direct = direct + u_a_by_laurent(a, N).scale(K(a ** 4))
    assert f1.series == direct
    g = petrov_form(F, 4, 2, N)
    assert g.modular is False
    with pytest.raises(ValueError):
        petrov_form(F, 1, 2, N)


def test_graded_product_metadata():
    F, A, K = setup(3)
    E2 = eisenstein(F, 2, 12)
    Ef = false_eisenstein(F, 12)
    prod = E2 * Ef
    assert prod.weight == 4 and prod.type == 1
    assert prod.series == (E2.series * Ef.series)
    assert prod.support_ok()


def test_goss_sum_skip():
    F, A, K = setup(3)
    t = A.theta
    full = goss_sum(F, 1, 12)
    part = goss_sum(F, 1, 12, skip=lambda a: not (a % t))
    rest = goss_sum(F, 1, 12, skip=lambda a: bool(a % t))
    assert full == part + rest
