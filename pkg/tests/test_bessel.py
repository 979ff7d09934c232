import cmath

import mpmath

import pytest
from hypothesis import given, settings, strategies as st

from conftest import golden_value, golden_z, rel
from qbessel import (
    Kind,
    PoleError,
    SeriesPolicy,
    diffeq_residual,
    jackson_j,
    ladder_check,
    modified_i,
    q_wronskian,
    recurrence_check,
    wronskian_closed_form_ii,
    wronskian_ii,
)
from qbessel.bessel import WronskianPair, kind1_factor, kind1_poles, kind2_factor

orders = st.floats(0.05, 3.5).filter(lambda v: abs(v - round(v)) > 1e-3)
args = st.floats(0.2, 3.0)
qs = st.floats(0.3, 0.95)


def test_kind_shift_and_delta():
    assert [k.delta for k in Kind] == [2, 0, 1]
    assert [k.shift for k in Kind] == [0.0, 1.0, 0.5]


def test_i_matches_golden(golden):
    for e in golden["I"]:
        got = modified_i(e["kind"], e["nu"], golden_z(e), e["q"])
        assert got.converged
        assert rel(got.value, golden_value(e)) < 1e-12, e


def test_i_oracle_mode_matches_golden_to_many_digits(golden):
    from conftest import golden_mp
    p = SeriesPolicy.oracle_mode()
    with mpmath.workdps(40):
        for e in golden["I"][:4]:
            got = modified_i(e["kind"], e["nu"], golden_z(e), e["q"], p).value
            ref = golden_mp(e)
            assert abs(got - ref) < 1e-28 * abs(ref)


def test_j_matches_golden(golden):
    for e in golden["J"]:
        got = jackson_j(e["kind"], e["nu"], golden_z(e), e["q"]).value
        assert rel(got, golden_value(e)) < 1e-12, e


@pytest.mark.parametrize("kind", list(Kind))
def test_i_is_rotated_j(kind):
    nu, z, q = 0.8, 0.9 + 0.3j, 0.7
    i = modified_i(kind, nu, z, q).value
    j = jackson_j(kind, nu, 1j * z, q).value
    assert rel(i, cmath.exp(-0.5j * nu * cmath.pi) * j) < 1e-12


def test_kind1_pole_raises():
    q = 0.5
    for r, z in enumerate(kind1_poles(q, 3)):
        with pytest.raises(PoleError, match=f"r={r}"):
            modified_i(1, 0.3, z, q)


def test_kind1_continuation_uses_factor():
    # outside the disc kind 1 is the kind-2 value times e_{q^2}
    q, nu, z = 0.6, 0.4, 4.0
    assert z > 2 / (1 - q * q)
    i1 = modified_i(1, nu, z, q).value
    i2 = modified_i(2, nu, z, q).value
    assert rel(i1, kind1_factor(z, q) * i2) < 1e-14


@given(z=st.floats(0.1, 3.0), q=qs)
def test_factor_pair_is_reciprocal(z, q):
    if abs(z) * (1 - q * q) / 2 >= 0.999:
        return
    assert rel(kind1_factor(z, q) * kind2_factor(z, q), 1) < 1e-11


def test_kind1_inside_disc_equals_factor_relation():
    q, nu, z = 0.7, 1.3, 1.2
    assert rel(modified_i(1, nu, z, q).value, kind1_factor(z, q) * modified_i(2, nu, z, q).value) < 1e-12


def test_value_at_zero():
    assert modified_i(2, 0, 0, 0.5).value == 1
    assert modified_i(2, 1.5, 0, 0.5).value == 0
    with pytest.raises(PoleError):
        modified_i(3, -0.5, 0, 0.5)


@pytest.mark.parametrize("kind", list(Kind))
def test_negative_integer_order_is_finite(kind):
    v = modified_i(kind, -2, 0.8, 0.6)
    assert v.converged and abs(v.value) > 0


@given(kind=st.sampled_from([Kind.TWO, Kind.THREE]), nu=orders, z=args, q=qs)
@settings(max_examples=40, deadline=None)
def test_difference_equation_property(kind, nu, z, q):
    assert diffeq_residual(kind, nu, z, q).relative < 1e-9
    assert diffeq_residual(kind, -nu, z, q).relative < 1e-9


@given(nu=orders, z=st.floats(0.2, 1.0), q=st.floats(0.4, 0.9))
@settings(max_examples=30, deadline=None)
def test_difference_equation_kind1_inside_disc(nu, z, q):
    assert diffeq_residual(1, nu, z, q).relative < 1e-9


@given(kind=st.sampled_from(list(Kind)), nu=orders, z=st.floats(0.2, 1.0), q=st.floats(0.4, 0.9),
       direction=st.sampled_from(["lower_order_minus", "lower_order_raise"]))
@settings(max_examples=40, deadline=None)
def test_ladder_property(kind, nu, z, q, direction):
    assert ladder_check(kind, nu, z, q, direction).relative < 1e-9


@given(kind=st.sampled_from(list(Kind)), nu=orders, z=st.floats(0.2, 1.0), q=st.floats(0.4, 0.9),
       which=st.sampled_from(["difference", "sum"]))
@settings(max_examples=40, deadline=None)
def test_recurrence_property(kind, nu, z, q, which):
    assert recurrence_check(kind, nu, z, q, which).relative < 1e-9


def test_unknown_relation_names():
    with pytest.raises(ValueError):
        ladder_check(2, 0.5, 1.0, 0.5, "sideways")
    with pytest.raises(ValueError):
        recurrence_check(2, 0.5, 1.0, 0.5, "product")


def test_diffeq_detects_wrong_function():
    # the kind-3 function does not solve the kind-2 equation
    f = lambda w: modified_i(3, 0.7, w, 0.6).value  # noqa: E731
    assert diffeq_residual(2, 0.7, 1.0, 0.6, f=f).relative > 1e-4


@pytest.mark.parametrize("kind", list(Kind))
@pytest.mark.parametrize("nu", [0.3, 1.7])
def test_wronskian_ii_closed_form(kind, nu):
    q, z = 0.8, 0.9
    num = wronskian_ii(kind, nu, z, q)
    closed = wronskian_closed_form_ii(kind, nu, z, q)
    assert abs(closed) > 0
    assert rel(num, closed) < 1e-9


def test_q_wronskian_of_plain_functions():
    pair = WronskianPair(lambda w: w, lambda w: w * w, 0.5)
    # W(z, z^2)(z) = z (q z)^2 - q z z^2 = q(q-1) z^3
    assert q_wronskian(pair, 2.0) == pytest.approx(0.5 * (0.5 - 1) * 8)
