import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import golden_value, golden_z, rel
from qbessel import (
    DivergentSeries,
    DomainError,
    a_coeff,
    a_product_wronskian,
    a_ratio,
    laurent_rep_i,
    modified_i,
    phi_nu,
)
from qbessel.core import qgamma


def test_phi_matches_golden(golden):
    for e in golden["Phi"]:
        assert rel(phi_nu(e["nu"], golden_z(e), e["q"]).value, golden_value(e)) < 1e-12


@given(nu=st.floats(-2, 2), z=st.floats(5, 40), q=st.floats(0.3, 0.8))
@settings(max_examples=30)
def test_phi_even_in_order(nu, z, q):
    if z <= 2 * q / (1 - q * q) * 1.05:
        return
    assert rel(phi_nu(nu, z, q).value, phi_nu(-nu, z, q).value) < 1e-12


def test_phi_needs_nonzero_argument():
    with pytest.raises(DivergentSeries):
        phi_nu(0.3, 0, 0.5)


def test_a_matches_direct_normalization(golden):
    for e in golden["a"]:
        assert rel(a_coeff(e["nu"], e["q"]).value, golden_value(e).real) < 1e-12, e


def test_a_ratio_matches_golden(golden):
    for e in golden["a_ratio"]:
        assert rel(a_ratio(e["nu"], e["q"]), golden_value(e).real) < 1e-12, e


@given(nu=st.floats(-2.4, 2.4), q=st.floats(0.3, 0.95))
@settings(max_examples=40, deadline=None)
def test_a_ladder(nu, q):
    # a_{nu+1} = a_nu q^(-nu-1/2)
    assert rel(a_coeff(nu + 1, q).value, a_coeff(nu, q).value * q ** (-nu - 0.5)) < 1e-9


@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5])
def test_a_ratio_at_half_integers(nu):
    assert a_ratio(nu, 0.7) == 1


@given(nu=st.floats(0.05, 0.95), q=st.floats(0.3, 0.9))
def test_a_ratio_inverts_under_reflection(nu, q):
    assert rel(a_ratio(nu, q) * a_ratio(-nu, q), 1) < 1e-12


def test_product_closed_form_integer_limit():
    q = 0.7
    n = 2
    eps = 1e-6
    mean = (a_product_wronskian(n + eps, q) + a_product_wronskian(n - eps, q)) / 2
    exact = q ** (0.5 - n * n) * math.log(q ** -2) / (2 * math.pi * (1 - q * q))
    assert a_product_wronskian(n, q) == pytest.approx(exact, rel=1e-15)
    assert rel(mean, exact) < 1e-9


def test_product_closed_form_formula():
    q, nu = 0.6, 0.3
    q2 = q * q
    expected = q ** (0.5 - nu) / (2 * qgamma(nu, q2) * qgamma(1 - nu, q2) * math.sin(nu * math.pi))
    assert a_product_wronskian(nu, q) == pytest.approx(expected, rel=1e-14)


def test_product_identity_close_to_one():
    # the directly normalized product matches the closed form as q -> 1
    for nu in (0.2, 0.45, 0.7):
        lhs = a_coeff(nu, 0.95).value * a_coeff(-nu, 0.95).value
        assert rel(lhs, a_product_wronskian(nu, 0.95)) < 1e-9


@pytest.mark.parametrize("kind", [1, 2])
@pytest.mark.parametrize("nu", [0.3, 1.6])
def test_laurent_form_near_classical_limit(kind, nu):
    q = 0.95
    z = 30.0
    assert rel(laurent_rep_i(kind, nu, z, q), modified_i(kind, nu, z, q).value) < 1e-8


def test_laurent_form_domain():
    with pytest.raises(DomainError):
        laurent_rep_i(3, 0.3, 10.0, 0.5)
    with pytest.raises(DivergentSeries):
        laurent_rep_i(2, 0.3, 0.5, 0.5)
