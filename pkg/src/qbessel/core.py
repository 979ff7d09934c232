"""q-calculus primitives.

q-Pochhammer symbols, the q-gamma function, the two q-exponentials, the
basic hypergeometric series engine, the q-derivative and the bilateral
Jackson integral.  Every routine works in two arithmetic modes selected by
:class:`SeriesPolicy`: native floats (``mpmath.fp``) with compensated
summation, or extended precision (``mpmath.mp``) for oracle values.
"""
from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

import mpmath

ORACLE_DPS = 40


class QBesselError(ArithmeticError):
    """Base class for all errors raised by this package."""


class PoleError(QBesselError):
    """The argument sits on (or within tolerance of) a pole."""


class NotConverged(QBesselError):
    """A series, product or lattice sum exhausted its term budget."""


class DivergentSeries(QBesselError):
    """The series does not converge for the given argument."""


class LowerParamPole(QBesselError):
    """A lower parameter of a basic hypergeometric series hits base**-m."""


class ZeroArgument(QBesselError):
    """An operator that divides by the argument was called at zero."""


class DomainError(QBesselError):
    """A documented precondition on the parameters is violated."""


@dataclass(frozen=True)
class QBase:
    """The deformation parameter ``0 < q < 1`` with cached derived values."""

    q: float
    q_sq: float = 0.0
    one_minus_q_sq: float = 0.0

    def __post_init__(self):
        q = self.q
        if isinstance(q, bool) or not isinstance(q, (int, float)):
            raise DomainError(f"q must be a real number, got {q!r}")
        q = float(q)
        if not math.isfinite(q) or not 0.0 < q < 1.0:
            raise DomainError(f"q must lie in the open interval (0, 1), got {q!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "q_sq", q * q)
        object.__setattr__(self, "one_minus_q_sq", 1.0 - q * q)

    @property
    def pole_radius(self) -> float:
        """Smallest kind-1 pole modulus ``2/(1-q^2)``."""
        return 2.0 / self.one_minus_q_sq

    @property
    def laurent_radius(self) -> float:
        """``2q/(1-q^2)``; the large-argument series converge outside it."""
        return 2.0 * self.q / self.one_minus_q_sq


def as_qbase(q) -> QBase:
    return q if isinstance(q, QBase) else QBase(q)


@dataclass(frozen=True)
class SeriesPolicy:
    eps_series: float = 1e-14
    max_terms: int = 20000
    consecutive_small: int = 3
    floor_scale: float = 1e-300
    pole_tol: float = 1e-12
    oracle: bool = False
    dps: int = ORACLE_DPS           # working digits in oracle mode

    def __post_init__(self):
        if not self.eps_series > 0:
            raise DomainError("eps_series must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")
        if self.consecutive_small < 1:
            raise DomainError("consecutive_small must be at least 1")
        if self.dps < 15:
            raise DomainError("dps must be at least 15")

    @classmethod
    def oracle_mode(cls, **kw) -> "SeriesPolicy":
        """Extended-precision policy used to generate golden values."""
        kw.setdefault("eps_series", 1e-34)
        kw.setdefault("max_terms", 200000)
        kw.setdefault("floor_scale", 1e-600)
        return cls(oracle=True, **kw)

    def with_(self, **kw) -> "SeriesPolicy":
        return replace(self, **kw)


DEFAULT_POLICY = SeriesPolicy()


def resolve_policy(policy: SeriesPolicy | None) -> SeriesPolicy:
    return DEFAULT_POLICY if policy is None else policy


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_bound: float
    converged: bool = True

    def __complex__(self):
        return complex(self.value)


# -- arithmetic context --------------------------------------------------


def ctx_of(policy: SeriesPolicy):
    return mpmath.mp if policy.oracle else mpmath.fp


def working(policy: SeriesPolicy):
    """Context manager that sets extended precision in oracle mode."""
    if policy.oracle:
        return mpmath.workdps(policy.dps)
    return contextlib.nullcontext()


def cnum(x, policy: SeriesPolicy):
    """Convert a scalar to the mode's complex type."""
    if policy.oracle:
        return mpmath.mpc(x)
    return complex(x)


def rnum(x, policy: SeriesPolicy):
    if policy.oracle:
        return mpmath.mpf(x)
    return float(x)


class CompensatedSum:
    """Neumaier summation, applied separately to real and imaginary parts."""

    __slots__ = ("re", "im", "c_re", "c_im")

    def __init__(self, zero=0.0):
        self.re = zero
        self.im = zero
        self.c_re = zero
        self.c_im = zero

    @staticmethod
    def _step(s, c, x):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        return t, c

    def add(self, x):
        self.re, self.c_re = self._step(self.re, self.c_re, x.real)
        self.im, self.c_im = self._step(self.im, self.c_im, x.imag)

    def value(self, policy: SeriesPolicy):
        re = self.re + self.c_re
        im = self.im + self.c_im
        if policy.oracle:
            return mpmath.mpc(re, im)
        return complex(re, im)


def sum_terms(terms: Iterable, policy: SeriesPolicy | None = None, *,
              what: str = "series") -> SeriesResult:
    """Sum an iterable of terms with the package's truncation rule.

    Summation stops once ``consecutive_small`` successive terms each have a
    geometric tail estimate ``|t|/(1-r)`` (``r`` the last term ratio,
    clamped to 0.99) below ``eps_series * max(|S|, floor_scale)``.  A finite
    iterable that runs out is treated as an exactly terminating series.
    """
    policy = resolve_policy(policy)
    acc = CompensatedSum(rnum(0, policy))
    eps = policy.eps_series
    prev_abs = None
    small = 0
    tail = math.inf
    n = 0
    for t in terms:
        if n >= policy.max_terms:
            raise NotConverged(
                f"{what}: no convergence after {policy.max_terms} terms "
                f"(last tail estimate {float(tail):.3e})")
        acc.add(t)
        n += 1
        a = abs(t)
        if a == 0:
            ratio = 0.0
        elif prev_abs:
            ratio = min(float(a / prev_abs), 0.99)
        else:
            ratio = 0.99
        prev_abs = a
        tail = float(a) / (1.0 - ratio) if a else 0.0
        partial = abs(acc.re + acc.c_re) + abs(acc.im + acc.c_im)
        if tail <= eps * max(float(partial), policy.floor_scale):
            small += 1
            if small >= policy.consecutive_small:
                return SeriesResult(acc.value(policy), n, tail, True)
        else:
            small = 0
    # finite iterable: the series terminated
    return SeriesResult(acc.value(policy), n, 0.0, True)


# -- q-Pochhammer symbols --------------------------------------------------


def qpoch_finite(a, base, n: int):
    """``(a; base)_n = prod_{k<n} (1 - a base^k)``."""
    if n < 0:
        raise DomainError("qpoch_finite needs n >= 0")
    p = 1
    bk = 1
    for _ in range(n):
        p = p * (1 - a * bk)
        bk = bk * base
    return p


def _check_base(base):
    if not 0 < base < 1:
        raise DomainError(f"base must lie in (0, 1), got {base!r}")


def qpoch_infinite(a, base, policy: SeriesPolicy | None = None) -> SeriesResult:
    """``(a; base)_inf`` truncated once the factors are within eps of 1.

    ``tail_bound`` bounds the absolute error from the dropped factors via
    ``|log prod_{k>K}(1 - a b^k)| <= 2 |a b^{K+1}| / (1 - b)``.
    """
    policy = resolve_policy(policy)
    _check_base(base)
    with working(policy):
        a = cnum(a, policy)
        base = rnum(base, policy)
        if a == 0:
            return SeriesResult(cnum(1, policy), 0, 0.0, True)
        if _hits_inverse_power(a, base, policy.pole_tol) is not None:
            return SeriesResult(cnum(0, policy), _hits_inverse_power(a, base, policy.pole_tol) + 1, 0.0, True)
        eps = policy.eps_series
        p = cnum(1, policy)
        x = a
        small = 0
        for k in range(policy.max_terms):
            p *= 1 - x
            if abs(x) < eps:
                small += 1
                if small >= policy.consecutive_small:
                    rem = 2 * float(abs(x * base)) / (1 - float(base))
                    return SeriesResult(p, k + 1, float(abs(p)) * math.expm1(rem), True)
            else:
                small = 0
            x *= base
        raise NotConverged(f"(a;q)_inf: no convergence after {policy.max_terms} factors")


def _hits_inverse_power(a, base, tol):
    """Return m >= 0 if ``a`` is within ``tol`` of ``base**-m``, else None."""
    if a == 0:
        return None
    absa = abs(a)
    if absa < 1 - tol:
        return None
    m = int(round(float(-mpmath.log(absa) / mpmath.log(base))))
    for mm in (m - 1, m, m + 1):
        if mm >= 0 and abs(a * base ** mm - 1) <= tol:
            return mm
    return None


def qpoch_ratio(a, b, base, policy: SeriesPolicy | None = None):
    """``(a; base)_inf / (b; base)_inf`` as a single product of ratios.

    Stays finite when both products underflow (base close to 1).
    """
    policy = resolve_policy(policy)
    with working(policy):
        a = cnum(a, policy)
        b = cnum(b, policy)
        base = rnum(base, policy)
        if _hits_inverse_power(b, base, policy.pole_tol) is not None:
            raise PoleError("denominator product vanishes")
        if _hits_inverse_power(a, base, policy.pole_tol) is not None:
            return cnum(0, policy)
        eps = policy.eps_series
        p = cnum(1, policy)
        x, y = a, b
        small = 0
        for _ in range(policy.max_terms):
            p *= (1 - x) / (1 - y)
            if abs(x) + abs(y) < eps:
                small += 1
                if small >= policy.consecutive_small:
                    return p
            else:
                small = 0
            x *= base
            y *= base
        raise NotConverged("q-Pochhammer ratio: no convergence")


def q_number(x, base):
    """``[x]_base = (1 - base^x)/(1 - base)``."""
    return (1 - base ** x) / (1 - base)


def qgamma(x, base, policy: SeriesPolicy | None = None):
    """``Gamma_base(x) = (base;base)_inf/(base^x;base)_inf (1-base)^(1-x)``."""
    policy = resolve_policy(policy)
    _check_base(base)
    with working(policy):
        xr = x.real if isinstance(x, complex) or isinstance(x, mpmath.mpc) else x
        n = round(float(xr))
        if n <= 0 and abs(x - n) < policy.pole_tol:
            raise PoleError(f"Gamma_q pole at x = {n}")
        base = rnum(base, policy)
        x = cnum(x, policy) if isinstance(x, (complex, mpmath.mpc)) else rnum(x, policy)
        ratio = qpoch_ratio(base, base ** x, base, policy)
        val = ratio * (1 - base) ** (1 - x)
        if not isinstance(x, (complex, mpmath.mpc)):
            val = val.real
        return val


# -- q-exponentials ----------------------------------------------------------


def _pole_index_small_exp(x, base, tol):
    """r if ``x`` is within ``tol`` (relative) of ``base**-r``, else None."""
    return _hits_inverse_power(x, base, tol)


def _series_friendly(x) -> bool:
    # positive terms: no cancellation
    return x.imag == 0 and 0 <= x.real < 0.5


def q_exp_small(x, base, policy: SeriesPolicy | None = None, *,
                method: str = "auto") -> SeriesResult:
    """``e_base(x) = sum x^n/(base;base)_n = 1/(x;base)_inf``.

    The series only converges for ``|x| < 1``; ``method="auto"`` uses it
    for small non-negative x and the product form elsewhere, since the
    series cancels for other arguments once the base is close to 1.
    """
    policy = resolve_policy(policy)
    _check_base(base)
    with working(policy):
        x = cnum(x, policy)
        base = rnum(base, policy)
        r = _pole_index_small_exp(x, base, policy.pole_tol)
        if r is not None:
            raise PoleError(f"e_q pole at x = q^-{r}")
        if method == "auto":
            method = "series" if _series_friendly(x) else "product"
        if method == "series":
            if abs(x) >= 1:
                raise DivergentSeries("e_q series needs |x| < 1")
            return sum_terms(_exp_small_terms(x, base), policy, what="e_q")
        if method != "product":
            raise ValueError(f"unknown method {method!r}")
        p = qpoch_infinite(x, base, policy)
        v = 1 / p.value
        return SeriesResult(v, p.terms_used, float(abs(v)) * p.tail_bound / max(float(abs(p.value)), 1e-300), True)


def _exp_small_terms(x, base):
    t = x ** 0
    bn = base
    yield t
    while True:
        t = t * x / (1 - bn)
        bn = bn * base
        yield t


def q_exp_big(x, base, policy: SeriesPolicy | None = None, *,
              method: str = "auto") -> SeriesResult:
    """``E_base(x) = sum base^(n(n-1)/2) x^n/(base;base)_n = (-x;base)_inf``.

    ``method="auto"`` picks the series or the product as in :func:`q_exp_small`.
    """
    policy = resolve_policy(policy)
    _check_base(base)
    with working(policy):
        x = cnum(x, policy)
        base = rnum(base, policy)
        if method == "auto":
            method = "series" if _series_friendly(x) else "product"
        if method == "series":
            return sum_terms(_exp_big_terms(x, base), policy, what="E_q")
        if method != "product":
            raise ValueError(f"unknown method {method!r}")
        return qpoch_infinite(-x, base, policy)


def _exp_big_terms(x, base):
    t = x ** 0
    bn = base ** 0
    yield t
    while True:
        # t_{n+1} = t_n * base^n x / (1 - base^{n+1})
        t = t * bn * x / (1 - bn * base)
        bn = bn * base
        yield t


# -- basic hypergeometric series -------------------------------------------


def basic_hyper(upper: Sequence, lower: Sequence, base, z,
                policy: SeriesPolicy | None = None) -> SeriesResult:
    """The basic hypergeometric series ``_r phi_s(upper; lower; base, z)``.

    Uses the convention with the extra factor
    ``[(-1)^n base^(n(n-1)/2)]^(1+s-r)``.
    """
    policy = resolve_policy(policy)
    _check_base(base)
    with working(policy):
        base = rnum(base, policy)
        z = cnum(z, policy)
        upper = [cnum(a, policy) for a in upper]
        lower = [cnum(b, policy) for b in lower]
        r, s = len(upper), len(lower)
        stop = None
        for a in upper:
            m = _hits_inverse_power(a, base, policy.pole_tol)
            if m is not None and (stop is None or m < stop):
                stop = m
        for b in lower:
            m = _hits_inverse_power(b, base, policy.pole_tol)
            if m is not None and (stop is None or m < stop):
                raise LowerParamPole(f"lower parameter equals base^-{m}")
        if z == 0:
            return SeriesResult(cnum(1, policy), 1, 0.0, True)
        if stop is None:
            if r == s + 1 and abs(z) >= 1:
                raise DivergentSeries(f"{r}phi{s} needs |z| < 1, got |z| = {float(abs(z)):.6g}")
            if r > s + 1:
                raise DivergentSeries(f"{r}phi{s} diverges for z != 0")
        expo = 1 + s - r
        return sum_terms(_hyper_terms(upper, lower, base, z, expo, stop), policy,
                         what=f"{r}phi{s}")


def _hyper_terms(upper, lower, base, z, expo, stop):
    t = z ** 0
    bn = base ** 0
    n = 0
    yield t
    while stop is None or n < stop:
        num = 1
        for a in upper:
            num = num * (1 - a * bn)
        den = 1 - bn * base
        for b in lower:
            den = den * (1 - b * bn)
        extra = (-bn) ** expo if expo >= 0 else 1 / (-bn) ** (-expo)
        t = t * num / den * extra * z
        bn = bn * base
        n += 1
        yield t


def q_binomial(a, z, base, policy: SeriesPolicy | None = None):
    """``_1phi_0(a; -; base, z) = (a z; base)_inf / (z; base)_inf`` for |z| < 1."""
    policy = resolve_policy(policy)
    return qpoch_ratio(cnum(a, policy) * cnum(z, policy), z, base, policy)


# -- q-derivative and Jackson integral ---------------------------------------


def q_derivative(f: Callable, z, base, policy: SeriesPolicy | None = None):
    """Jackson derivative ``(f(z) - f(base z)) / ((1 - base) z)``."""
    policy = resolve_policy(policy)
    if abs(z) < policy.floor_scale:
        raise ZeroArgument("q-derivative is undefined at z = 0")
    return (f(z) - f(base * z)) / ((1 - base) * z)


def jackson_integral_bilateral(f: Callable, base, m_min: int = -8, m_max: int = 8,
                               policy: SeriesPolicy | None = None, *,
                               max_extent: int | None = None) -> complex:
    """``int_{-inf}^{inf} f(s) d_q s = (1-q) sum_m q^m [f(q^m) + f(-q^m)]``.

    The window ``[m_min, m_max]`` is summed first; each side is then grown
    one shell at a time until ``consecutive_small`` successive shells each
    contribute less than ``eps_series`` relative to the running total, or
    until a shell exceeds the window's sum by ``1/eps_series`` (divergence).
    Summation order is fixed, so results are reproducible bit for bit.
    """
    policy = resolve_policy(policy)
    _check_base(base)
    limit = policy.max_terms if max_extent is None else max_extent
    with working(policy):
        b = rnum(base, policy)

        def shell(m):
            s = b ** m
            return s * (f(s) + f(-s))

        acc = CompensatedSum(rnum(0, policy))
        for m in range(m_min, m_max + 1):
            acc.add(shell(m))
        eps = policy.eps_series
        # a shell this far above the window's sum means the sum is diverging
        blowup = max(abs(acc.value(policy)), policy.floor_scale) / eps
        lo, hi = m_min, m_max
        done_lo = done_hi = False
        small_lo = small_hi = 0
        count = 0
        while not (done_lo and done_hi):
            if count > limit:
                raise NotConverged("Jackson integral: lattice shells do not decay")
            total = abs(acc.value(policy))
            if not done_hi:
                hi += 1
                c = shell(hi)
                acc.add(c)
                if not abs(c) <= blowup:        # also catches nan
                    raise NotConverged("Jackson integral: lattice shells grow")
                small_hi = small_hi + 1 if abs(c) <= eps * max(total, policy.floor_scale) else 0
                done_hi = small_hi >= policy.consecutive_small
            if not done_lo:
                lo -= 1
                c = shell(lo)
                acc.add(c)
                if not abs(c) <= blowup:        # also catches nan
                    raise NotConverged("Jackson integral: lattice shells grow")
                small_lo = small_lo + 1 if abs(c) <= eps * max(total, policy.floor_scale) else 0
                done_lo = small_lo >= policy.consecutive_small
            count += 1
        return (1 - b) * acc.value(policy)
