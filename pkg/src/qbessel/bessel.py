"""Jackson q-Bessel functions and modified q-Bessel functions of kinds 1-3.

All functions take ``(nu, z, q)`` and return the rescaled family

    I_nu^(j)((1 - q^2) z; q^2)

which tends to the classical I_nu(z) as q -> 1.  The kind ``j`` enters the
governing q-difference equation only through ``delta`` (2, 0, 1 for
j = 1, 2, 3).
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import mpmath

from .core import (
    PoleError,
    QBase,
    SeriesPolicy,
    SeriesResult,
    ZeroArgument,
    as_qbase,
    basic_hyper,
    cnum,
    q_exp_big,
    q_exp_small,
    qgamma,
    qpoch_finite,
    resolve_policy,
    rnum,
    sum_terms,
    working,
    _hits_inverse_power,
)


class Kind(enum.IntEnum):
    ONE = 1
    TWO = 2
    THREE = 3

    @property
    def delta(self) -> int:
        return _DELTA[self]

    @property
    def shift(self) -> float:
        """``(2 - delta)/2``, the exponent of the argument shift in the ladders."""
        return (2 - _DELTA[self]) / 2


_DELTA = {Kind.ONE: 2, Kind.TWO: 0, Kind.THREE: 1}


class DegenerateParameterWarning(UserWarning):
    """I_nu and I_{-nu} coincide (integer order) and are not independent."""


@dataclass(frozen=True)
class Residual:
    """Raw residual of an identity with the magnitude it is measured against."""

    raw: complex
    scale: float

    @property
    def relative(self) -> float:
        s = self.scale
        return float(abs(self.raw)) / s if s > 0 else float(abs(self.raw))


@dataclass(frozen=True)
class BesselPoint:
    kind: Kind
    nu: float
    z: complex
    qb: QBase

    def evaluate(self, policy: SeriesPolicy | None = None) -> SeriesResult:
        return modified_i(self.kind, self.nu, self.z, self.qb, policy)


@dataclass(frozen=True)
class WronskianPair:
    f1: Callable
    f2: Callable
    qb: QBase


def _negative_integer(nu) -> int | None:
    n = round(float(nu))
    if n < 0 and nu == n:
        return -n
    return None


def kind1_pole_index(z, qb: QBase, policy: SeriesPolicy | None = None) -> int | None:
    """r if z is within tolerance of a kind-1 pole ``+-2 q^-r/(1-q^2)``."""
    policy = resolve_policy(policy)
    w = qb.one_minus_q_sq * z / 2
    return _hits_inverse_power(w * w, qb.q_sq, policy.pole_tol)


def kind1_poles(qb, count: int = 5) -> list[float]:
    """The first ``count`` positive kind-1 poles ``2 q^-r / (1 - q^2)``."""
    qb = as_qbase(qb)
    return [qb.pole_radius * qb.q ** -r for r in range(count)]


def kind1_factor(z, qb, policy: SeriesPolicy | None = None):
    """``e_{q^2}((1-q^2)^2 z^2 / 4)``, the ratio I^(1) / I^(2)."""
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        z = cnum(z, policy)
        x = rnum(qb.one_minus_q_sq, policy) ** 2 * z * z / 4
        return q_exp_small(x, qb.q_sq, policy).value


def kind2_factor(z, qb, policy: SeriesPolicy | None = None):
    """``E_{q^2}(-(1-q^2)^2 z^2 / 4)``, the ratio I^(2) / I^(1)."""
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        z = cnum(z, policy)
        x = rnum(qb.one_minus_q_sq, policy) ** 2 * z * z / 4
        return q_exp_big(-x, qb.q_sq, policy).value


def modified_i(kind, nu, z, qb, policy: SeriesPolicy | None = None) -> SeriesResult:
    """Modified q-Bessel function ``I_nu^(j)((1-q^2) z; q^2)``.

    Kind 1 is summed directly inside ``|z| < 2/(1-q^2)`` and continued
    outside through ``I^(1) = e_{q^2}((1-q^2)^2 z^2/4) I^(2)``; it has simple
    poles at ``z = +-2 q^-r/(1-q^2)``.  For ``nu = -n`` the summation starts
    at ``k = n`` since ``1/Gamma_{q^2}`` vanishes on the earlier terms.
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        z = cnum(z, policy)
        nu = rnum(nu, policy)
        if kind is Kind.ONE:
            r = kind1_pole_index(z, qb, policy)
            if r is not None:
                raise PoleError(f"I^(1) has a pole at z = +-2q^-{r}/(1-q^2) (r={r})")
            if abs(z) >= qb.pole_radius * (1 - policy.pole_tol):
                inner = _i_series(Kind.TWO, nu, z, qb, policy)
                fac = kind1_factor(z, qb, policy)
                return SeriesResult(fac * inner.value, inner.terms_used,
                                    float(abs(fac)) * inner.tail_bound, inner.converged)
        return _i_series(kind, nu, z, qb, policy)


def _i_series(kind: Kind, nu, z, qb: QBase, policy: SeriesPolicy) -> SeriesResult:
    if z == 0:
        if nu > 0:
            return SeriesResult(cnum(0, policy), 1, 0.0, True)
        if nu == 0:
            return SeriesResult(cnum(1, policy), 1, 0.0, True)
        if _negative_integer(nu) is None:
            raise PoleError("I_nu with nu < 0 is singular at z = 0")
        return SeriesResult(cnum(0, policy), 1, 0.0, True)
    return sum_terms(_i_terms(kind, nu, z, qb, policy), policy, what=f"I^({int(kind)})")


def _i_terms(kind: Kind, nu, z, qb: QBase, policy: SeriesPolicy):
    q = rnum(qb.q, policy)
    q2 = q * q
    one = 1 - q2
    h = z / 2
    h2 = h * h
    k0 = _negative_integer(nu) or 0
    if kind is Kind.ONE:
        c0, cstep, cgrow = 1, None, None
    elif kind is Kind.TWO:
        c0 = q ** (2 * k0 * (nu + k0))
        cstep, cgrow = q ** (2 * (nu + 2 * k0 + 1)), q ** 4
    else:
        c0 = q ** (k0 * (nu + k0))
        cstep, cgrow = q ** (nu + 2 * k0 + 1), q2
    t = c0 * one ** k0 * h ** (nu + 2 * k0) / (qpoch_finite(q2, q2, k0) * qgamma(nu + k0 + 1, q2, policy))
    yield t
    qk = q2 ** (k0 + 1)          # q^{2(k+1)}
    qnk = q2 ** (nu + k0 + 1)    # q^{2(nu+k+1)}
    base_ratio = one * one * h2
    while True:
        ratio = base_ratio / ((1 - qk) * (1 - qnk))
        if cstep is not None:
            ratio = ratio * cstep
            cstep = cstep * cgrow
        t = t * ratio
        qk = qk * q2
        qnk = qnk * q2
        yield t


def jackson_j(kind, nu, z, qb, policy: SeriesPolicy | None = None) -> SeriesResult:
    """Jackson q-Bessel function ``J_nu^(j)((1-q^2) z; q^2)``.

    Evaluated through its ``_delta phi_1`` series (prefactor
    ``(z/2)^nu / Gamma_{q^2}(nu+1)``), independently of :func:`modified_i`.
    The two are tied by ``I_nu(z) = e^{-i nu pi/2} J_nu(e^{i pi/2} z)``.
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        z = cnum(z, policy)
        nu = rnum(nu, policy)
        n = _negative_integer(nu)
        if n is not None:
            res = jackson_j(kind, n, z, qb, policy)
            sign = -1 if n % 2 else 1
            return SeriesResult(sign * res.value, res.terms_used, res.tail_bound, res.converged)
        if kind is Kind.ONE:
            w = qb.one_minus_q_sq * z / 2
            r = _hits_inverse_power(-w * w, qb.q_sq, policy.pole_tol)
            if r is not None:
                raise PoleError(f"J^(1) has a pole at z = +-2i q^-{r}/(1-q^2) (r={r})")
            if abs(z) >= qb.pole_radius * (1 - policy.pole_tol):
                inner = jackson_j(Kind.TWO, nu, z, qb, policy)
                fac = kind1_factor(1j * z, qb, policy)
                return SeriesResult(fac * inner.value, inner.terms_used,
                                    float(abs(fac)) * inner.tail_bound, inner.converged)
        if z == 0:
            return SeriesResult(cnum(0 if nu > 0 else 1, policy), 1, 0.0, True)
        q = rnum(qb.q, policy)
        q2 = q * q
        delta = kind.delta
        # the 1phi1 convention carries its own (-1)^n, hence the sign flip for delta = 1
        sign = 1 if delta == 1 else -1
        x = sign * rnum(qb.one_minus_q_sq, policy) ** 2 * z * z * q ** ((nu + 1) * (2 - delta)) / 4
        res = basic_hyper([0] * delta, [q2 ** (nu + 1)], q2, x, policy)
        pref = (z / 2) ** nu / qgamma(nu + 1, q2, policy)
        return SeriesResult(pref * res.value, res.terms_used,
                            float(abs(pref)) * res.tail_bound, res.converged)


# -- identities --------------------------------------------------------------


def _i_handle(kind, nu, qb, policy):
    def f(w):
        return modified_i(kind, nu, w, qb, policy).value
    return f


def diffeq_residual(kind, nu, z, qb, f: Callable | None = None,
                    policy: SeriesPolicy | None = None) -> Residual:
    """Residual of the second-order q-difference equation

        f(z/q) - (q^-nu + q^nu) f(z) + f(qz) = q^-delta (1-q^2)^2/4 z^2 f(q^(1-delta) z)

    for ``f`` (default: ``I_nu`` of the given kind).  The scale is the largest
    of ``|f(z/q)|, |f(z)|, |f(qz)|``.
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if f is None:
        f = _i_handle(kind, nu, qb, policy)
    q = qb.q
    d = kind.delta
    fm, f0, fp = f(z / q), f(z), f(q * z)
    lhs = fm - (q ** -nu + q ** nu) * f0 + fp
    rhs = q ** -d * qb.one_minus_q_sq ** 2 / 4 * z * z * f(q ** (1 - d) * z)
    scale = max(float(abs(fm)), float(abs(f0)), float(abs(fp)))
    return Residual(lhs - rhs, scale)


def ladder_check(kind, nu, z, qb, direction: str = "lower_order_minus",
                 policy: SeriesPolicy | None = None) -> Residual:
    """Residual of the q-derivative ladder for ``I``.

    ``"lower_order_minus"``::

        2/((1+q) z) d_q[z^nu I_nu](z) = q^(-c(nu-1)) z^(nu-1) I_{nu-1}(q^c z)

    ``"lower_order_raise"`` is the same map applied to ``z^nu I_{-nu}``,
    landing on ``I_{1-nu}``.  Here ``c = (2 - delta)/2``.
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    q = qb.q
    c = kind.shift
    if direction == "lower_order_minus":
        src, dst = nu, nu - 1
    elif direction == "lower_order_raise":
        src, dst = -nu, 1 - nu
    else:
        raise ValueError(f"unknown direction {direction!r}")
    f = _i_handle(kind, src, qb, policy)
    a, b = z ** nu * f(z), (q * z) ** nu * f(q * z)
    pre = 2 / ((1 + q) * z)
    lhs = pre * (a - b) / ((1 - q) * z)
    rhs = q ** (-c * (nu - 1)) * z ** (nu - 1) * modified_i(kind, dst, q ** c * z, qb, policy).value
    scale = max(float(abs(pre * a / ((1 - q) * z))), float(abs(pre * b / ((1 - q) * z))), float(abs(rhs)))
    return Residual(lhs - rhs, scale)


def recurrence_check(kind, nu, z, qb, which: str = "difference",
                     policy: SeriesPolicy | None = None) -> Residual:
    """Residual of the three-term relations between I_{nu-1}, I_nu, I_{nu+1}.

    ``"difference"``::

        q^(-c nu) I_{nu-1}(z) - q^(c nu) I_{nu+1}(z)
            = 2/((1-q^2) z) (q^-nu - q^nu) I_nu(q^(delta/2) z)

    ``"sum"``::

        q^(-c nu) I_{nu-1}(z) + q^(c nu) I_{nu+1}(z)
            = 4/((1-q^2) z) I_nu(q^-c z) - 2/((1-q^2) z) (q^-nu + q^nu) I_nu(q^(delta/2) z)
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    return _three_term(lambda n, w: modified_i(kind, n, w, qb, policy).value,
                       kind, nu, z, qb, which, sign=1)


def _three_term(F, kind: Kind, nu, z, qb: QBase, which: str, sign: int) -> Residual:
    q = qb.q
    c = kind.shift
    d = kind.delta
    lo = q ** (-c * nu) * F(nu - 1, z)
    hi = q ** (c * nu) * F(nu + 1, z)
    k = 2 / (qb.one_minus_q_sq * z)
    mid = F(nu, q ** (d / 2) * z)
    if which in ("difference", "eq216"):
        lhs = lo - hi
        t1 = sign * k * (q ** -nu - q ** nu) * mid
        rhs = t1
        parts = (lo, hi, t1)
    elif which in ("sum", "eq217"):
        lhs = lo + hi
        t1 = sign * 2 * k * F(nu, q ** -c * z)
        t2 = -sign * k * (q ** -nu + q ** nu) * mid
        rhs = t1 + t2
        parts = (lo, hi, t1, t2)
    else:
        raise ValueError(f"unknown relation {which!r}")
    return Residual(lhs - rhs, max(float(abs(p)) for p in parts))


def q_wronskian(pair, z, f2: Callable | None = None, q: float | None = None):
    """q-Wronskian ``W(f1, f2)(z) = f1(z) f2(qz) - f1(qz) f2(z)``.

    Accepts a :class:`WronskianPair` or ``(f1, f2, q)`` positionally as
    ``q_wronskian(f1, z, f2, q)``.
    """
    if isinstance(pair, WronskianPair):
        f1, f2, q = pair.f1, pair.f2, as_qbase(pair.qb).q
    else:
        f1 = pair
        q = as_qbase(q).q
    return f1(z) * f2(q * z) - f1(q * z) * f2(z)


def wronskian_ii(kind, nu, z, qb, policy: SeriesPolicy | None = None):
    """``W(I_nu, I_{-nu})(z)`` evaluated from the two series."""
    qb = as_qbase(qb)
    pair = WronskianPair(_i_handle(kind, nu, qb, policy), _i_handle(kind, -nu, qb, policy), qb)
    return q_wronskian(pair, z)


def inverse_gamma_pair(nu, qb: QBase, policy: SeriesPolicy | None = None):
    """``1/(Gamma_{q^2}(nu) Gamma_{q^2}(1-nu))``; zero at integer nu."""
    policy = resolve_policy(policy)
    if float(nu) == round(float(nu)):
        return 0.0
    return 1 / (qgamma(nu, qb.q_sq, policy) * qgamma(1 - nu, qb.q_sq, policy))


def wronskian_closed_form_ii(kind, nu, z, qb, policy: SeriesPolicy | None = None):
    """Closed form of ``W(I_nu, I_{-nu})``:

    ``q^-nu (1-q^2) / (Gamma_{q^2}(nu) Gamma_{q^2}(1-nu))`` times
    ``e_{q^2}((1-q^2)^2 z^2/4)`` (delta = 2), ``1`` (delta = 1) or
    ``E_{q^2}(-(1-q^2)^2 q^2 z^2/4)`` (delta = 0).
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        nu = rnum(nu, policy)
        if float(nu) == round(float(nu)):
            warnings.warn(f"nu = {float(nu):g} is an integer: I_nu and I_-nu coincide",
                          DegenerateParameterWarning, stacklevel=2)
        q = rnum(qb.q, policy)
        base = q ** -nu * rnum(qb.one_minus_q_sq, policy) * inverse_gamma_pair(nu, qb, policy)
        z = cnum(z, policy)
        if kind is Kind.ONE:
            r = kind1_pole_index(z, qb, policy)
            if r is not None:
                raise PoleError(f"W(I,I) for kind 1 has a pole at r={r}")
            return base * kind1_factor(z, qb, policy)
        if kind is Kind.THREE:
            return base * cnum(1, policy)
        return base * kind2_factor(q * z, qb, policy)
