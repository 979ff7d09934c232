"""Jackson-integral representations of the Macdonald functions.

The kernels are written in the product ``z s`` of two variables obeying
``z s = q^c s z``.  A monomial ``(z s)^k`` is normal ordered before being
evaluated as an ordinary power series in the commuting product ``s z``:

* ``"z_left"``  (all z before all s):  ``(z s)^k = q^(-c k(k-1)/2) z^k s^k``
* ``"s_left"``  (all s before all z):  ``(z s)^k = q^(c k(k+1)/2) s^k z^k``

Only the z-left ordering yields a convergent lattice sum for the kind-1
kernel; the default follows that.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bessel import Kind
from .core import (
    CompensatedSum,
    DivergentSeries,
    DomainError,
    NotConverged,
    QBase,
    SeriesPolicy,
    as_qbase,
    cnum,
    ctx_of,
    jackson_integral_bilateral,
    q_exp_big,
    q_exp_small,
    qgamma,
    qpoch_finite,
    qpoch_ratio,
    resolve_policy,
    rnum,
    sum_terms,
    working,
)
from .laurent import a_ratio

MAX_SHELLS = 400


def shell_budget(q: float, policy: SeriesPolicy) -> int:
    """Lattice shells allowed per side: the slowest side decays like ``q^m``,
    so ``log(eps)/log(q)`` shells are needed, with a factor 4 of headroom."""
    need = math.log(policy.eps_series) / math.log(q)
    return max(MAX_SHELLS, int(4 * need))


# -- the lattice constant ------------------------------------------------------


@dataclass(frozen=True)
class QConst:
    nu: float
    value: float
    qb: QBase
    terms: int


def _half_sum(u, q, policy: SeriesPolicy):
    """``sum_{k>=0} g(u+k)`` with ``g(x) = q^x/(1 + q^(2x))`` and ``0 <= u <= 1``.

    Terms are added directly while ``q^x > 1/4``; the remainder is summed
    through the expansion ``g(x) = sum_j (-1)^j q^((2j+1)x)``, which turns the
    slowly decaying tail into a rapidly converging alternating series.
    """
    acc = CompensatedSum(rnum(0, policy))
    x = u
    qx = q ** x
    n = 0
    while qx > 0.25:
        acc.add(qx / (1 + qx * qx))
        qx = qx * q
        n += 1

    def tail():
        j = 0
        while True:
            p = 2 * j + 1
            yield (-1) ** j * qx ** p / (1 - q ** p)
            j += 1

    t = sum_terms(tail(), policy, what="Q_nu tail")
    acc.add(t.value)
    return acc.value(policy).real, n + t.terms_used


def q_const(nu, qb, policy: SeriesPolicy | None = None) -> QConst:
    """``Q_nu = (1-q) sum_{m in Z} 1/(q^(m+nu-1/2) + q^(-m-nu+1/2))``.

    The summand depends on ``x = m + nu - 1/2`` only through ``|x|``, so the
    sum splits into two one-sided sums starting at the fractional offsets.
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        q = rnum(qb.q, policy)
        t = (rnum(nu, policy) - rnum(0.5, policy)) % 1
        up, n1 = _half_sum(t, q, policy)
        down, n2 = _half_sum(1 - t, q, policy)
        return QConst(float(nu), (1 - q) * (up + down), qb, n1 + n2)


# -- normal-ordered kernels ----------------------------------------------------


class KernelFamily(enum.Enum):
    """The three kernels, by the q-exponent ``a`` in their coefficients
    ``rho^k q^(a k(k-1)/2) / (q;q)_k`` before reordering."""

    E_BIG = 1.0          # E_q(i lam z s)
    PHI01 = 2.0          # 0phi1(-; 0; q, i lam z s)
    PHI02 = 1.5          # 0phi2(-; 0, -q^1/2; q^1/2, -i lam z s)


_KIND_FAMILY = {Kind.ONE: KernelFamily.E_BIG, Kind.TWO: KernelFamily.PHI01,
                Kind.THREE: KernelFamily.PHI02}


@dataclass(frozen=True)
class NOKernel:
    """A kernel series in ``(z s)^k`` after normal ordering.

    ``commutation`` is the exponent c in ``z s = q^c s z``.
    """

    family: KernelFamily
    qb: QBase
    ordering: str = "z_left"
    commutation: float = 1.0

    def __post_init__(self):
        if self.ordering not in ("z_left", "s_left"):
            raise ValueError(f"unknown ordering {self.ordering!r}")

    @property
    def exponents(self) -> tuple[float, float]:
        """``(a, b)`` with the ordered coefficient ``rho^k q^(a k(k-1)/2 + b k)/(q;q)_k``."""
        a = self.family.value
        c = self.commutation
        if self.ordering == "z_left":
            return a - c, 0.0
        return a + c, c

    def coefficient(self, k: int):
        """Coefficient of ``(s z)^k`` in the commuting series."""
        q = self.qb.q
        lam = self.qb.one_minus_q_sq / 2
        a, b = self.exponents
        return (1j * lam) ** k * q ** (a * k * (k - 1) / 2 + b * k) / qpoch_finite(q, q, k)


def no_kernel_eval(kernel: NOKernel, s, z, policy: SeriesPolicy | None = None):
    """Value of the normal-ordered kernel at the commuting product ``s z``."""
    policy = resolve_policy(policy)
    qb = kernel.qb
    with working(policy):
        q = rnum(qb.q, policy)
        a, b = kernel.exponents
        x = 1j * rnum(qb.one_minus_q_sq, policy) / 2 * q ** b * cnum(s, policy) * cnum(z, policy)
        if x == 0:
            return cnum(1, policy)
        if a == 0:
            return q_exp_small(x, qb.q, policy).value
        if a == 1:
            return q_exp_big(x, qb.q, policy).value
        if a < 0:
            raise DivergentSeries("the reordered kernel series has zero radius of convergence")

        def terms():
            t = x ** 0
            k = 0
            yield t
            while True:
                t = t * x * q ** (a * k) / (1 - q ** (k + 1))
                k += 1
                yield t

        return sum_terms(terms(), policy, what="kernel").value


# -- weights and the integral representation -------------------------------------


def _weight_params(kind: Kind, nu, q):
    if kind is Kind.ONE:
        return q * q, q ** (1 - 2 * nu)
    if kind is Kind.TWO:
        return q ** (2 * nu + 1), q ** 0
    return q ** (nu + 1.5), q ** (0.5 - nu)


def lattice_weight(kind, nu, s, qb, policy: SeriesPolicy | None = None):
    """``(-A s^2; q^2)_inf / (-B s^2; q^2)_inf`` for the kind's (A, B)."""
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        q = rnum(qb.q, policy)
        A, B = _weight_params(kind, rnum(nu, policy), q)
        s2 = cnum(s, policy) ** 2
        return qpoch_ratio(-A * s2, -B * s2, q * q, policy).real


def _prefactor(kind: Kind, nu, z, qb: QBase, policy: SeriesPolicy):
    q = rnum(qb.q, policy)
    q2 = q * q
    g = qgamma(nu + 0.5, q2, policy) * qgamma(rnum(0.5, policy), q2, policy) / 4
    if kind is Kind.ONE:
        p = q ** (0.5 - nu * nu) / q_const(nu, qb, policy).value
    elif kind is Kind.TWO:
        p = q ** (nu - nu * nu) / q_const(rnum(0.5, policy), qb, policy).value
    else:
        p = q ** (nu / 2 + 0.25 - nu * nu) / q_const(nu / 2 + 0.25, qb, policy).value
    if kind is not Kind.THREE:
        p = p * ctx_of(policy).sqrt(a_ratio(nu, qb, policy))
    return g * p * (cnum(z, policy) / 2) ** -nu


def k_integral_rep(kind, nu, z, qb, policy: SeriesPolicy | None = None, *,
                   ordering: str = "z_left", commutation: float = 1.0):
    """K^(j) from its Jackson-integral representation (``nu > 3/2``).

    Raises :class:`NotConverged` when the lattice shells do not decay, which
    is what happens for kernels whose reordered series grows faster than the
    weight decays.
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if not nu > 1.5:
        raise DomainError("the integral representation needs nu > 3/2")
    kernel = NOKernel(_KIND_FAMILY[kind], qb, ordering, commutation)
    with working(policy):
        nu = rnum(nu, policy)
        z = cnum(z, policy)

        def f(s):
            return no_kernel_eval(kernel, s, z, policy) * lattice_weight(kind, nu, s, qb, policy)

        try:
            total = jackson_integral_bilateral(f, qb.q, -8, 8, policy,
                                               max_extent=shell_budget(qb.q, policy))
        except (OverflowError, ZeroDivisionError) as exc:
            raise NotConverged(f"Jackson integral overflowed: {exc}") from exc
        if not total == total:      # nan from inf - inf
            raise NotConverged("Jackson integral overflowed")
        return _prefactor(kind, nu, z, qb, policy) * total


# -- the z -> 0 limit of the kind-3 representation --------------------------------


def int_lattice(nu, qb, policy: SeriesPolicy | None = None):
    """Jackson integral of the kind-3 weight alone."""
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    return jackson_integral_bilateral(lambda s: lattice_weight(Kind.THREE, nu, s, qb, policy),
                                      qb.q, -8, 8, policy,
                                      max_extent=shell_budget(qb.q, policy)).real


def int_closed_form(nu, qb, policy: SeriesPolicy | None = None):
    """``2 q^(nu/2-1/4) Q_{nu/2+1/4} (q^(2nu+1), q; q^2)_inf / (q^(2nu), q^2; q^2)_inf``."""
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        q = rnum(qb.q, policy)
        nu = rnum(nu, policy)
        q2 = q * q
        prods = (qpoch_ratio(q ** (2 * nu + 1), q ** (2 * nu), q2, policy)
                 * qpoch_ratio(q, q2, q2, policy)).real
        return 2 * q ** (nu / 2 - 0.25) * q_const(nu / 2 + 0.25, qb, policy).value * prods


def small_z_check_k3(nu, qb, policy: SeriesPolicy | None = None):
    """Ratio of ``lim_{z->0} (z/2)^nu K^(3)_nu`` from the integral form
    (kernel equal to 1, weight integral in closed form) to
    ``Gamma_{q^2}(nu) q^(nu-nu^2)/2``.  Equal to 1 for the unit normalization."""
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if not nu > 1.5:
        raise DomainError("the integral representation needs nu > 3/2")
    with working(policy):
        q = rnum(qb.q, policy)
        nu = rnum(nu, policy)
        q2 = q * q
        lim = (_prefactor(Kind.THREE, nu, 2, qb, policy) * int_closed_form(nu, qb, policy)).real
        return lim / (qgamma(nu, q2, policy) * q ** (nu - nu * nu) / 2)
