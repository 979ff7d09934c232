"""q-Bessel-Macdonald functions ``K_nu^(j)((1-q^2) z; q^2)``, j = 1, 2, 3.

For non-integer order::

    K_nu = 1/2 q^(nu - nu^2) Gamma_{q^2}(nu) Gamma_{q^2}(1-nu)
           [w I_{-nu} - I_nu / w]

with ``w = sqrt(a_nu / a_{-nu})`` for kinds 1 and 2 and ``w = 1`` for kind 3.
Integer orders are reached as a symmetric limit in the order.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bessel import Kind, Residual, _three_term, kind1_factor, kind2_factor, modified_i
from .core import (
    DomainError,
    QBase,
    SeriesPolicy,
    SeriesResult,
    as_qbase,
    cnum,
    ctx_of,
    q_exp_big,
    q_exp_small,
    qgamma,
    resolve_policy,
    rnum,
    working,
)
from .laurent import a_product_wronskian, a_ratio, phi_nu

# offsets for the integer-order limit and the Richardson step in eps^2
LIMIT_EPS = (2e-3, 5e-4)
ORACLE_LIMIT_EPS = 1e-10
# below this distance from an integer the order is treated as integral
# plus a first-order correction
NEAR_INTEGER = 1e-6


@dataclass(frozen=True)
class MacdonaldPoint:
    kind: Kind
    nu: float
    z: complex
    qb: QBase

    def evaluate(self, policy: SeriesPolicy | None = None) -> SeriesResult:
        return macdonald_k(self.kind, self.nu, self.z, self.qb, policy)


def weight(kind, nu, qb, policy: SeriesPolicy | None = None):
    """``sqrt(a_nu / a_{-nu})`` for kinds 1 and 2, and 1 for kind 3."""
    policy = resolve_policy(policy)
    if Kind(kind) is Kind.THREE:
        return rnum(1, policy)
    with working(policy):
        return ctx_of(policy).sqrt(a_ratio(nu, as_qbase(qb), policy))


def _combination(kind: Kind, nu, z, qb: QBase, policy: SeriesPolicy) -> SeriesResult:
    q = rnum(qb.q, policy)
    q2 = q * q
    pref = q ** (nu - nu * nu) * qgamma(nu, q2, policy) * qgamma(1 - nu, q2, policy) / 2
    w = weight(kind, nu, qb, policy)
    lo = modified_i(kind, -nu, z, qb, policy)
    hi = modified_i(kind, nu, z, qb, policy)
    val = pref * (w * lo.value - hi.value / w)
    tail = float(abs(pref)) * (float(abs(w)) * lo.tail_bound + hi.tail_bound / float(abs(w)))
    return SeriesResult(val, lo.terms_used + hi.terms_used, tail, lo.converged and hi.converged)


def _integer_limit(kind: Kind, n: int, z, qb: QBase, policy: SeriesPolicy,
                   eps: tuple[float, float] = LIMIT_EPS):
    """Value and order-derivative of K at integer order ``n``."""
    if policy.oracle:
        e = rnum(ORACLE_LIMIT_EPS, policy)
        up = _combination(kind, n + e, z, qb, policy)
        dn = _combination(kind, n - e, z, qb, policy)
        return (up.value + dn.value) / 2, (up.value - dn.value) / (2 * e), up
    e1, e2 = eps
    up1 = _combination(kind, n + e1, z, qb, policy)
    dn1 = _combination(kind, n - e1, z, qb, policy)
    up2 = _combination(kind, n + e2, z, qb, policy)
    dn2 = _combination(kind, n - e2, z, qb, policy)
    m1 = (up1.value + dn1.value) / 2
    m2 = (up2.value + dn2.value) / 2
    # the symmetric mean has an error expansion in eps^2
    val = (e1 * e1 * m2 - e2 * e2 * m1) / (e1 * e1 - e2 * e2)
    deriv = (up1.value - dn1.value) / (2 * e1)
    return val, deriv, up1


def macdonald_k(kind, nu, z, qb, policy: SeriesPolicy | None = None, *,
                path: str = "series") -> SeriesResult:
    """q-Bessel-Macdonald function ``K_nu^(j)((1-q^2) z; q^2)``.

    ``path="series"`` combines the two I series (any z where they exist);
    ``path="closed"`` uses the large-argument closed form (kinds 1 and 2).
    The function is even in ``nu``; it is always evaluated at ``|nu|``.
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if path == "closed":
        fn = {Kind.ONE: macdonald_k1_closed, Kind.TWO: macdonald_k2_closed}.get(kind)
        if fn is None:
            raise DomainError("no closed form for kind 3")
        return SeriesResult(fn(nu, z, qb, policy), 0, 0.0, True)
    if path != "series":
        raise ValueError(f"unknown path {path!r}")
    with working(policy):
        nu = abs(rnum(nu, policy))
        z = cnum(z, policy)
        n = round(float(nu))
        gap = nu - n
        if gap == 0 or (abs(gap) < NEAR_INTEGER and not policy.oracle):
            val, deriv, ref = _integer_limit(kind, n, z, qb, policy)
            if gap:
                val = val + gap * deriv
            return SeriesResult(val, ref.terms_used, ref.tail_bound, ref.converged)
        return _combination(kind, nu, z, qb, policy)


def _closed(kind: Kind, nu, z, qb: QBase, policy: SeriesPolicy):
    ctx = ctx_of(policy)
    with working(policy):
        z = cnum(z, policy)
        nu = rnum(nu, policy)
        q = rnum(qb.q, policy)
        x = -rnum(qb.one_minus_q_sq, policy) * z / 2
        if kind is Kind.ONE:
            fac = q_exp_small(x, qb.q, policy).value
        else:
            fac = q_exp_big(x, qb.q, policy).value
        prod = a_product_wronskian(nu, qb, policy)
        pref = q ** (0.5 - nu * nu) / (2 * ctx.sqrt(prod) * ctx.sqrt(z))
        return pref * fac * phi_nu(nu, -z, qb, policy).value


def macdonald_k1_closed(nu, z, qb, policy: SeriesPolicy | None = None):
    """Closed form of ``K^(1)`` for ``Re z > 2q/(1-q^2)``::

        q^(1/2 - nu^2) / (2 sqrt(a_nu a_{-nu}) sqrt(z)) e_q(-(1-q^2) z/2) Phi_nu(-z)
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if not complex(z).real > qb.laurent_radius:
        raise DomainError(f"K^(1) closed form needs Re z > 2q/(1-q^2) = {qb.laurent_radius:.6g}")
    return _closed(Kind.ONE, nu, z, qb, policy)


def macdonald_k2_closed(nu, z, qb, policy: SeriesPolicy | None = None):
    """Closed form of ``K^(2)``, the kind-1 form with ``E_q`` in place of ``e_q``.

    Only available where ``Phi_nu(-z)`` converges, ``|z| > 2q/(1-q^2)``.
    """
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if not abs(complex(z)) > qb.laurent_radius:
        raise DomainError(f"K^(2) closed form needs |z| > 2q/(1-q^2) = {qb.laurent_radius:.6g}")
    return _closed(Kind.TWO, nu, z, qb, policy)


def integer_order_limit(kind, n: int, z, qb, policy: SeriesPolicy | None = None,
                        eps: tuple[float, float] = LIMIT_EPS):
    """``K_n`` extrapolated from the symmetric means at ``n +- eps[0]`` and
    ``n +- eps[1]`` (Richardson in ``eps^2``)."""
    policy = resolve_policy(policy)
    with working(policy):
        return _integer_limit(Kind(kind), n, cnum(z, policy), as_qbase(qb), policy, eps)[0]


# -- identities --------------------------------------------------------------


def _k_handle(kind, qb, policy):
    def F(n, w):
        return macdonald_k(kind, n, w, qb, policy).value
    return F


def k_ladder_check(kind, nu, z, qb, which: str = "eq214",
                   policy: SeriesPolicy | None = None) -> Residual:
    """Residual of the q-derivative ladders for K (c = (2-delta)/2)::

        eq214:  2/((1+q) z) d_q[z^nu K_nu](z)  = -q^(-c(nu-1)) z^(nu-1)  K_{nu-1}(q^c z)
        eq215:  2/((1+q) z) d_q[z^-nu K_nu](z) = -q^(c(nu+1))  z^(-nu-1) K_{nu+1}(q^c z)
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    F = _k_handle(kind, qb, policy)
    q = qb.q
    c = kind.shift
    if which == "eq214":
        p, dst, fac = nu, nu - 1, -q ** (-c * (nu - 1)) * z ** (nu - 1)
    elif which == "eq215":
        p, dst, fac = -nu, nu + 1, -q ** (c * (nu + 1)) * z ** (-nu - 1)
    else:
        raise ValueError(f"unknown relation {which!r}")
    pre = 2 / ((1 + q) * z) / ((1 - q) * z)
    a = pre * z ** p * F(nu, z)
    b = pre * (q * z) ** p * F(nu, q * z)
    rhs = fac * F(dst, q ** c * z)
    return Residual(a - b - rhs, max(float(abs(a)), float(abs(b)), float(abs(rhs))))


def k_recurrence_check(kind, nu, z, qb, which: str = "eq216",
                       policy: SeriesPolicy | None = None) -> Residual:
    """Residual of the three-term relations for K; they are those of I with
    the right-hand sides negated."""
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    if which not in ("eq216", "eq217"):
        raise ValueError(f"unknown relation {which!r}")
    return _three_term(_k_handle(kind, qb, policy), kind, nu, z, qb, which, sign=-1)


def wronskian_ik(kind, nu, z, qb, policy: SeriesPolicy | None = None):
    """Closed form of ``W(I_nu, K_nu)(z)``.

    ``1/2 q^(-nu^2) (1-q^2)`` times ``sqrt(a_nu/a_{-nu}) e_{q^2}((1-q^2)^2 z^2/4)``
    (kind 1), ``sqrt(a_nu/a_{-nu}) E_{q^2}(-(1-q^2)^2 q^2 z^2/4)`` (kind 2) or 1
    (kind 3).
    """
    kind = Kind(kind)
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    with working(policy):
        nu = rnum(nu, policy)
        q = rnum(qb.q, policy)
        base = q ** (-nu * nu) * rnum(qb.one_minus_q_sq, policy) / 2
        if kind is Kind.THREE:
            return base * cnum(1, policy)
        w = weight(kind, nu, qb, policy)
        z = cnum(z, policy)
        if kind is Kind.ONE:
            return base * w * kind1_factor(z, qb, policy)
        return base * w * kind2_factor(q * z, qb, policy)


def wronskian_ik_series(kind, nu, z, qb, policy: SeriesPolicy | None = None):
    """``W(I_nu, K_nu)(z)`` from the series values."""
    qb = as_qbase(qb)
    policy = resolve_policy(policy)
    q = qb.q

    def i(w):
        return modified_i(kind, nu, w, qb, policy).value

    def k(w):
        return macdonald_k(kind, nu, w, qb, policy).value

    return i(z) * k(q * z) - i(q * z) * k(z)

