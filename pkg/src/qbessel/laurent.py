"""Large-argument (Laurent-type) representation of I^(1), I^(2) and the
coefficients ``a_nu`` that normalize the Macdonald functions."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bessel import Kind
from .core import (
    DivergentSeries,
    CompensatedSum,
    DomainError,
    NotConverged,
    QBase,
    SeriesPolicy,
    SeriesResult,
    as_qbase,
    basic_hyper,
    cnum,
    ctx_of,
    q_exp_big,
    q_exp_small,
    qgamma,
    qpoch_ratio,
    resolve_policy,
    rnum,
    sum_terms,
    working,
)


@dataclass(frozen=True)
class ACoeff:
    nu: float
    value: float
    qb: QBase


def phi_nu(nu, z, qb, policy: SeriesPolicy | None = None) -> SeriesResult:
    """``_2phi_1(q^(nu+1/2), q^(1/2-nu); -q; q, 2q/((1-q^2) z))``.

    Converges for ``|z| > 2q/(1-q^2)``; symmetric under ``nu -> -nu``.
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        q = rnum(qb.q, policy)
        nu = rnum(nu, policy)
        z = cnum(z, policy)
        if z == 0:
            raise DivergentSeries("Phi_nu needs z != 0")
        x = 2 * q / (rnum(qb.one_minus_q_sq, policy) * z)
        return basic_hyper([q ** (nu + 0.5), q ** (0.5 - nu)], [-q], q, x, policy)


def _reduce(nu) -> tuple[float, int]:
    """Split ``nu = nu0 + n`` with ``nu0`` in ``[-1/2, 1/2)``."""
    n = math.floor(float(nu) + 0.5)
    return nu - n, n


def _log_i2_unit(nu, qb: QBase, policy: SeriesPolicy):
    """``log I_nu^(2)(2; q^2)``, the kind-2 function at ``z = 2/(1-q^2)``.

    At this point the powers of ``(1-q^2)`` cancel term by term, leaving the
    positive terms ``q^(2k(nu+k)) (q^(2nu+2k+2); q^2)_inf / ((q^2;q^2)_k (q^2;q^2)_inf)``.
    The value overflows a double once q is close to 1, so the sum is
    accumulated relative to its largest term.
    """
    ctx = ctx_of(policy)
    q = rnum(qb.q, policy)
    q2 = q * q
    lt = ctx.log(qpoch_ratio(q2 ** (nu + 1), q2, q2, policy).real)
    logs = [lt]
    qk, qnk, step = q2, q2 ** (nu + 1), q2 ** (nu + 1)
    cut = ctx.log(policy.eps_series)
    small = 0
    while small < policy.consecutive_small:
        if len(logs) >= policy.max_terms:
            raise NotConverged("I^(2)(2;q^2): term budget exhausted")
        lt = lt + ctx.log(step / ((1 - qk) * (1 - qnk)))
        step = step * q2 * q2
        qk = qk * q2
        qnk = qnk * q2
        logs.append(lt)
        top = max(logs)
        small = small + 1 if lt < top + cut and lt < logs[-2] else 0
    top = max(logs)
    acc = CompensatedSum(rnum(0, policy))
    for v in logs:
        acc.add(ctx.exp(v - top))
    return top + ctx.log(acc.value(policy).real)


def _log_minus_one(qb: QBase, policy: SeriesPolicy):
    """``log (-1; q)_inf = log 2 + sum_k log(1 + q^k)``."""
    ctx = ctx_of(policy)
    q = rnum(qb.q, policy)

    def terms():
        x = q
        while True:
            yield ctx.log1p(x)
            x = x * q

    return ctx.log(2) + sum_terms(terms(), policy, what="(-1;q)_inf").value.real


def _a_direct(nu, qb: QBase, policy: SeriesPolicy):
    ctx = ctx_of(policy)
    one = rnum(qb.one_minus_q_sq, policy)
    phi = phi_nu(nu, 2 / one, qb, policy).value.real
    log_a = ctx.log(2 / one) / 2 + _log_i2_unit(nu, qb, policy) - _log_minus_one(qb, policy)
    return ctx.exp(log_a) / phi


def a_coeff(nu, qb, policy: SeriesPolicy | None = None) -> ACoeff:
    """Normalization coefficient ``a_nu`` of the large-argument representation.

    Evaluated directly for ``nu`` in ``[-1/2, 1/2)`` and carried to other
    orders by ``a_{nu+1} = a_nu q^(-nu-1/2)``, i.e.
    ``a_{nu0+n} = a_{nu0} q^(-n nu0 - n^2/2)``.
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        nu = rnum(nu, policy)
        nu0, n = _reduce(nu)
        base = _a_direct(nu0, qb, policy)
        q = rnum(qb.q, policy)
        return ACoeff(nu, base * q ** (-n * nu0 - n * n / 2), qb)


def a_ratio(nu, qb, policy: SeriesPolicy | None = None):
    """``a_nu / a_{-nu}``.

    Phi_nu is even in nu and the ladder factors of ``a_nu`` and ``a_{-nu}``
    coincide, so only the two values ``I^(2)_{+-nu0}(2; q^2)`` survive.
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        nu0, _ = _reduce(rnum(nu, policy))
        if nu0 == -0.5:
            # both a_nu and a_{-nu} ladder down to a_{-1/2} with the same factor
            return rnum(1, policy)
        ctx = ctx_of(policy)
        return ctx.exp(_log_i2_unit(nu0, qb, policy) - _log_i2_unit(-nu0, qb, policy))


def a_product_wronskian(nu, qb, policy: SeriesPolicy | None = None):
    """Closed form of ``a_nu a_{-nu}``::

        q^(1/2 - nu) / (2 Gamma_{q^2}(nu) Gamma_{q^2}(1-nu) sin(nu pi))

    At integer ``nu = n`` the limit ``q^(1/2 - n^2) ln(q^-2) / (2 pi (1-q^2))``
    is returned.
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        ctx = ctx_of(policy)
        q = rnum(qb.q, policy)
        nu = rnum(nu, policy)
        n = round(float(nu))
        if nu == n:
            return q ** (0.5 - n * n) * ctx.log(q ** -2) / (2 * ctx.pi * rnum(qb.one_minus_q_sq, policy))
        q2 = q * q
        g = qgamma(nu, q2, policy) * qgamma(1 - nu, q2, policy)
        return q ** (0.5 - nu) / (2 * g * ctx.sin(nu * ctx.pi))


def _phi_factor(kind: Kind, x, qb: QBase, policy: SeriesPolicy):
    if kind is Kind.ONE:
        return q_exp_small(x, qb.q, policy).value
    return q_exp_big(x, qb.q, policy).value


def laurent_rep_i(kind, nu, z, qb, policy: SeriesPolicy | None = None):
    """Large-argument form of ``I^(j)`` for j = 1, 2::

        a_nu / sqrt(z) [phi(z) Phi_nu(z) + i e^(i nu pi) phi(-z) Phi_nu(-z)]

    with ``phi = e_q((1-q^2) z/2)`` (j = 1) or ``E_q((1-q^2) z/2)`` (j = 2).
    Needs ``|z| > 2q/(1-q^2)``.
    """
    kind = Kind(kind)
    if kind is Kind.THREE:
        raise DomainError("the large-argument form exists for kinds 1 and 2 only")
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        ctx = ctx_of(policy)
        z = cnum(z, policy)
        if abs(z) <= qb.laurent_radius:
            raise DivergentSeries(f"need |z| > 2q/(1-q^2) = {qb.laurent_radius:.6g}")
        nu = rnum(nu, policy)
        a = a_coeff(nu, qb, policy).value
        x = rnum(qb.one_minus_q_sq, policy) * z / 2
        plus = _phi_factor(kind, x, qb, policy) * phi_nu(nu, z, qb, policy).value
        minus = _phi_factor(kind, -x, qb, policy) * phi_nu(nu, -z, qb, policy).value
        rot = 1j * ctx.expj(nu * ctx.pi)
        return a / ctx.sqrt(z) * (plus + rot * minus)
