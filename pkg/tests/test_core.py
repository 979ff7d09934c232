import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conftest import rel
from qbessel import core
from qbessel.core import (
    CompensatedSum,
    DomainError,
    NotConverged,
    PoleError,
    QBase,
    SeriesPolicy,
    basic_hyper,
    jackson_integral_bilateral,
    q_binomial,
    q_derivative,
    q_exp_big,
    q_exp_small,
    qgamma,
    qpoch_finite,
    qpoch_infinite,
    qpoch_ratio,
    sum_terms,
)

bases = st.floats(0.05, 0.95)


def test_qbase_derived():
    qb = QBase(0.8)
    assert qb.q_sq == pytest.approx(0.64)
    assert qb.one_minus_q_sq == pytest.approx(0.36)
    assert qb.pole_radius == pytest.approx(2 / 0.36)
    assert qb.laurent_radius == pytest.approx(1.6 / 0.36)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.3, 1.5])
def test_qbase_rejects_bad_q(q):
    with pytest.raises(DomainError):
        QBase(q)


def test_policy_validation():
    with pytest.raises(DomainError):
        SeriesPolicy(eps_series=0)
    with pytest.raises(DomainError):
        SeriesPolicy(max_terms=0)
    p = SeriesPolicy.oracle_mode()
    assert p.oracle and p.eps_series < 1e-30
    assert p.with_(max_terms=7).max_terms == 7


@given(a=st.floats(-0.9, 0.9), q=bases, n=st.integers(0, 30))
def test_qpoch_finite_matches_mpmath(a, q, n):
    assert qpoch_finite(a, q, n) == pytest.approx(float(mpmath.qp(a, q, n)), rel=1e-12, abs=1e-300)


@given(a=st.floats(-2, 0.9), q=bases)
def test_qpoch_infinite_matches_mpmath(a, q):
    res = qpoch_infinite(a, q)
    assert res.converged
    assert rel(res.value, float(mpmath.qp(a, q))) < 1e-12


@pytest.mark.parametrize("b", [1.0, 2.0, 4.0])
def test_qpoch_ratio_pole(b):
    # (q^-k; q)_inf vanishes
    with pytest.raises(PoleError):
        qpoch_ratio(0.3, b, 0.5)


@given(x=st.floats(0.2, 6), q=bases)
@settings(max_examples=60)
def test_qgamma_matches_mpmath(x, q):
    assert rel(qgamma(x, q), float(mpmath.qgamma(x, q))) < 1e-11


@given(x=st.floats(0.3, 5), q=bases)
def test_qgamma_functional_equation(x, q):
    # Gamma_q(x+1) = [x]_q Gamma_q(x)
    assert rel(qgamma(x + 1, q), (1 - q ** x) / (1 - q) * qgamma(x, q)) < 1e-12


@pytest.mark.parametrize("n", [0, -1, -3])
def test_qgamma_poles(n):
    with pytest.raises(PoleError):
        qgamma(n, 0.6)


@given(x=st.floats(-3, 0.9), q=bases)
def test_exponentials_are_reciprocal(x, q):
    # e_q(x) E_q(-x) = 1
    assert rel(q_exp_small(x, q).value * q_exp_big(-x, q).value, 1) < 1e-12


def test_exponential_methods_agree():
    for x in (0.3, -0.6, 0.4 + 0.2j):
        a = q_exp_small(x, 0.7, method="series").value
        b = q_exp_small(x, 0.7, method="product").value
        assert rel(a, b) < 1e-12
        a = q_exp_big(x, 0.7, method="series").value
        b = q_exp_big(x, 0.7, method="product").value
        assert rel(a, b) < 1e-12


def test_small_exponential_pole():
    with pytest.raises(PoleError):
        q_exp_small(1 / 0.6 ** 2, 0.6)


@pytest.mark.parametrize("upper,lower,x", [
    ([0.3, 0.5], [0.7], 0.4),
    ([0.2], [0.6], -0.9),
    ([], [0.5], 2.0),
])
def test_basic_hyper_matches_mpmath(upper, lower, x):
    q = 0.6
    ours = basic_hyper(upper, lower, q, x).value
    assert rel(ours, complex(mpmath.qhyper(upper, lower, q, x))) < 1e-12


@given(a=st.floats(-0.9, 0.9), z=st.floats(-0.9, 0.9), q=bases)
def test_q_binomial_theorem(a, z, q):
    expected = float(mpmath.qp(a * z, q) / mpmath.qp(z, q))
    assert rel(q_binomial(a, z, q), expected) < 1e-11


@given(n=st.integers(0, 8), z=st.floats(0.1, 3), q=bases)
def test_q_derivative_of_power(n, z, q):
    expected = (1 - q ** n) / (1 - q) * z ** (n - 1) if n else 0.0
    got = q_derivative(lambda w: w ** n, z, q)
    assert got == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_q_derivative_needs_nonzero_argument():
    with pytest.raises(core.ZeroArgument):
        q_derivative(lambda w: w, 0.0, 0.5)


def test_jackson_bilateral_against_direct_sum():
    q = 0.7

    def f(s):
        return 1 / (1 + s * s) ** 2

    expected = (1 - q) * mpmath.nsum(lambda m: q ** m * 2 * f(q ** m), [-mpmath.inf, mpmath.inf])
    assert rel(jackson_integral_bilateral(f, q), float(expected)) < 1e-12


def test_jackson_bilateral_reports_divergence():
    with pytest.raises(NotConverged):
        jackson_integral_bilateral(lambda s: 1.0, 0.7, max_extent=200)


@given(xs=st.lists(st.floats(-1e6, 1e6, allow_nan=False), max_size=60))
def test_compensated_sum_matches_fsum(xs):
    acc = CompensatedSum()
    for x in xs:
        acc.add(x)
    assert acc.value(SeriesPolicy()) == pytest.approx(math.fsum(xs), abs=1e-6)


def test_compensated_sum_keeps_small_terms():
    acc = CompensatedSum()
    for x in [1.0, 1e-16, 1e-16, 1e-16, 1e-16, -1.0]:
        acc.add(x)
    assert acc.value(SeriesPolicy()) == pytest.approx(4e-16, rel=1e-6)


def test_sum_terms_truncation_bookkeeping():
    res = sum_terms((0.5 ** k for k in range(10_000)), SeriesPolicy())
    assert res.converged
    assert res.value == pytest.approx(2.0, rel=1e-14)
    assert res.terms_used < 60
    assert 0 <= res.tail_bound < 1e-13


def test_sum_terms_budget():
    with pytest.raises(NotConverged):
        sum_terms((1.0 for _ in iter(int, 1)), SeriesPolicy(max_terms=50))


def test_oracle_mode_carries_more_digits():
    p = SeriesPolicy.oracle_mode()
    with core.working(p):
        v = qgamma(mpmath.mpf("2.5"), mpmath.mpf("0.36"), p)
        assert abs(v - mpmath.qgamma(mpmath.mpf("2.5"), mpmath.mpf("0.36"))) < mpmath.mpf(10) ** -30
