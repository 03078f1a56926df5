import json

import pytest
from hypothesis import given, strategies as st

from drinfeld import GF, InfLaurent, Laurent, USeries, fraction_field, poly_ring
from drinfeld.series import (PRINCIPAL_PART_CAP, check_composition_rule,
                             check_pth_power_rule, check_product_rule,
                             hyperderivative_by_digits)

F3 = GF(3)
A3 = poly_ring(F3)
K3 = fraction_field(F3)


def series_st(A, max_n=14, min_n=1):
    q = A.F.q
    coeff = st.lists(st.integers(0, q - 1), max_size=4).map(A)
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(coeff, min_size=n, max_size=n).map(lambda c: USeries(A, c, n)))


def test_geometric_series():
    f = USeries(A3, [1, -1], 4)
    assert f.inverse() == USeries(A3, [1, 1, 1, 1], 4)


def test_compose_example():
    u2 = USeries(A3, [0, 0, 1], 4)
    g = USeries(A3, [0, 1, 1], 4)
    assert u2.compose(g) == USeries(A3, [0, 0, 1, 2], 4)


def test_compose_needs_positive_valuation():
    with pytest.raises(ValueError):
        USeries(A3, [1, 1], 4).compose(USeries(A3, [1, 1], 4))


def test_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        USeries(A3, [A3.theta, 1], 4).inverse()


@given(series_st(A3))
def test_inverse_round_trip(f):
    if f.coeffs[0] and f.coeffs[0].degree == 0:
        g = f.inverse()
        assert (f * g) == USeries.one(A3, f.trunc)


@given(series_st(A3), series_st(A3))
def test_product_window(f, g):
    h = f * g
    assert h.trunc == min(f.trunc + g.valuation(), g.trunc + f.valuation())


def test_window_is_not_overclaimed():
    f = USeries(A3, [0, 0, 1], 3)          # u^2 + O(u^3)
    g = USeries(A3, [1, 1], 2)             # 1 + u + O(u^2)
    assert (f * g).trunc == 3
    assert (f * USeries(A3, [0, 1], 5)).trunc == 4
    assert f.hyperderivative(2).trunc == 1


@given(series_st(A3, 10), series_st(A3, 10), st.integers(0, 6))
def test_truncation_soundness(f, g, extra):
    """Computing with longer inputs agrees on the shorter window."""
    F = USeries(A3, f.coeffs + [A3.one] * extra, f.trunc + extra)
    G = USeries(A3, g.coeffs + [A3.theta] * extra, g.trunc + extra)
    assert (f * g).agrees(F * G)
    assert (f + g).agrees(F + G)
    assert f.hyperderivative(2).agrees(F.hyperderivative(2))


def test_hyperderivative_examples():
    f = USeries(A3, [0, 0, 1], 5)
    assert f.hyperderivative(0) == f
    assert f.hyperderivative(1).coeffs[1] == A3(2)
    A2 = poly_ring(GF(2))
    assert USeries(A2, [0, 0, 1], 5).hyperderivative(1).is_zero()
    z_inv = Laurent(K3, -1, [K3.one], 10, "z")
    for j in range(6):
        d = z_inv.hyperderivative(j)
        assert d.tail == -1 - j
        assert d.coeff_dict() == {-1 - j: K3((-1) ** j)}


@given(series_st(A3, 12), series_st(A3, 12), st.integers(0, 8))
def test_product_rule(f, g, j):
    assert check_product_rule(f, g, j)


@given(series_st(A3, 16, 14), st.integers(0, 6), st.integers(0, 6))
def test_composition_rule(f, j, k):
    assert check_composition_rule(f, j, k)


@pytest.mark.parametrize("s", [0, 1, 2])
def test_pth_power_rule(s):
    A2 = poly_ring(GF(2))
    f = USeries(A2, [1, A2.theta, 0, 1, 1, A2([1, 1])], 6)
    for j in range(0, 12):
        assert check_pth_power_rule(f, s, j)


@given(series_st(A3, 40, 34))
def test_digit_factorization(f):
    for j in range(0, 33):
        assert hyperderivative_by_digits(f, j) == f.hyperderivative(j)


@given(series_st(A3, 10), series_st(A3, 10))
def test_hyperderivative_is_linear(f, g):
    for j in range(4):
        assert (f + g).hyperderivative(j).agrees(f.hyperderivative(j) + g.hyperderivative(j))


def test_laurent_round_trip_and_cap():
    f = Laurent(K3, -2, [K3.one, K3.zero, K3(A3.theta)], 6, "z")
    g = f.inverse()
    assert (f * g).agrees(Laurent(K3, 0, [K3.one], 6, "z"))
    with pytest.raises(ValueError):
        Laurent(K3, -PRINCIPAL_PART_CAP - 1, [K3.one], 3, "z")


def test_json_round_trip_series():
    f = USeries(K3, [K3.one, K3(A3.theta, A3([1, 1])), K3.zero], 5)
    text = json.dumps(f.to_json(), sort_keys=True)
    g = USeries.from_json(K3, json.loads(text))
    assert g == f
    assert json.dumps(g.to_json(), sort_keys=True) == text
    assert USeries.from_json(A3, {"coeffs": [0, 1]}) == USeries(A3, [0, 1], 2)


def test_inf_laurent_basic():
    x = InfLaurent.from_poly(A3([1, 1]), 10)   # theta + 1
    y = x.inverse()
    one = x * y
    assert one.valuation() == 0 and one[0] == 1
    assert all(one[i] == 0 for i in range(1, 8))
    assert InfLaurent.from_frac(K3(1, A3.theta), 5).valuation() == 1
