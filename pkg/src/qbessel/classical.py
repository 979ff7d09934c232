"""Classical modified Bessel functions, used as the q -> 1 reference.

Test grade: plain power series in double precision, adequate for moderate
``|z|`` and orders.
"""
from __future__ import annotations

import math

from .core import CompensatedSum, SeriesPolicy, resolve_policy, sum_terms


def _rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if x <= 0 and x == math.floor(x):
        return 0.0
    return 1.0 / math.gamma(x)


def bessel_i(nu: float, z, policy: SeriesPolicy | None = None) -> complex:
    """``I_nu(z) = sum_k (z/2)^(nu+2k) / (k! Gamma(nu+k+1))``."""
    policy = resolve_policy(policy)
    z = complex(z)
    if z == 0:
        return complex(1.0 if nu == 0 else 0.0)
    h = z / 2
    k0 = 0
    if nu < 0 and nu == math.floor(nu):
        k0 = -int(nu)

    def terms():
        k = k0
        t = h ** (nu + 2 * k) / math.factorial(k) * _rgamma(nu + k + 1)
        yield t
        while True:
            k += 1
            t = t * h * h / (k * (nu + k))
            yield t

    return complex(sum_terms(terms(), policy, what="classical I").value)


def bessel_k(nu: float, z, policy: SeriesPolicy | None = None) -> complex:
    """``K_nu(z) = pi/2 (I_{-nu}(z) - I_nu(z)) / sin(nu pi)``; integer orders
    by the symmetric limit ``nu = n +- eps``."""
    nu = abs(nu)
    n = round(nu)
    if abs(nu - n) < 1e-6:
        acc = CompensatedSum()
        for e in (1e-4, -1e-4):
            acc.add(_k_noninteger(n + e, z, policy) / 2)
        return acc.value(resolve_policy(policy))
    return _k_noninteger(nu, z, policy)


def _k_noninteger(nu, z, policy):
    return math.pi / 2 * (bessel_i(-nu, z, policy) - bessel_i(nu, z, policy)) / math.sin(nu * math.pi)
