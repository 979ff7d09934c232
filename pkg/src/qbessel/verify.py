"""Numerical certification of the identities satisfied by I, K and a_nu.

Each suite returns a list of :class:`IdentityReport` rows, one per identity
and parameter point.  A check that raises (divergence, non-convergence, a
pole) is recorded as a failed row with the exception text in ``note``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from . import classical
from .bessel import (
    Kind,
    diffeq_residual,
    ladder_check,
    modified_i,
    recurrence_check,
    wronskian_closed_form_ii,
    wronskian_ii,
)
from .core import QBase, QBesselError, SeriesPolicy
from .integral import int_closed_form, int_lattice, k_integral_rep, q_const, small_z_check_k3
from .laurent import a_coeff, a_product_wronskian, laurent_rep_i
from .macdonald import (
    integer_order_limit,
    k_ladder_check,
    k_recurrence_check,
    macdonald_k,
    wronskian_ik,
    wronskian_ik_series,
)

SUITES = ("diffeq", "wronskian", "ladder", "recurrence", "coeffs", "integral", "limits")

NU_GRID = (0.2, 0.5, 1.7, 3.1)
Z_GRID = (0.3, 1.0, 2.4)
Q_GRID = (0.5, 0.8, 0.95)
LIMIT_QS = (0.9, 0.99, 0.999)

TOL_IDENTITY = 1e-9
TOL_REPRESENTATION = 1e-8
TOL_AN_SQUARED = 1e-6
TOL_INTEGRAL = 1e-6
TOL_INT_LATTICE = 1e-10
TOL_LIMIT = 1e-2
TOL_QCONST = 5e-3
TOL_INTEGER = 1e-7


@dataclass
class IdentityReport:
    identity: str
    params: dict
    abs_residual: float
    rel_residual: float
    tol: float
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class SuiteConfig:
    q_values: tuple | None = None
    tol_scale: float = 1.0
    policy: SeriesPolicy | None = None
    rows: list = field(default_factory=list)

    def qs(self, default: Iterable[float]) -> tuple:
        return tuple(self.q_values) if self.q_values else tuple(default)

    def add(self, identity: str, params: dict, tol: float, check: Callable):
        """Run ``check`` -> (abs, rel) or (abs, rel, extra_ok) and record it."""
        tol = tol * self.tol_scale
        try:
            out = check()
        except (QBesselError, OverflowError, ZeroDivisionError) as exc:
            self.rows.append(IdentityReport(identity, params, math.inf, math.inf, tol, False,
                                            f"{type(exc).__name__}: {exc}"))
            return
        extra = True
        note = ""
        if len(out) == 3:
            a, r, extra = out
            if not extra:
                note = "side condition failed"
        else:
            a, r = out
        a, r = float(a), float(r)
        self.rows.append(IdentityReport(identity, params, a, r, tol, bool(r < tol and extra), note))


def _rel(x, ref) -> tuple[float, float]:
    d = abs(complex(x) - complex(ref))
    s = abs(complex(ref))
    return d, d / s if s else d


def _kind1_ok(z, q) -> bool:
    # every lattice point the checks touch (down to z/q) stays inside the radius
    return z / q < QBase(q).pole_radius


def _grid(cfg: SuiteConfig):
    for q in cfg.qs(Q_GRID):
        for kind in Kind:
            for nu in NU_GRID:
                for z in Z_GRID:
                    if kind is Kind.ONE and not _kind1_ok(z, q):
                        continue
                    yield kind, nu, z, q


def _residual(res):
    return abs(res.raw), res.relative


# -- suites ------------------------------------------------------------------------


def suite_diffeq(cfg: SuiteConfig):
    pol = cfg.policy
    for kind, nu, z, q in _grid(cfg):
        p = dict(kind=int(kind), nu=nu, z=z, q=q)
        cfg.add("diffeq:I+", p, TOL_IDENTITY, lambda: _residual(diffeq_residual(kind, nu, z, q, policy=pol)))
        cfg.add("diffeq:I-", p, TOL_IDENTITY, lambda: _residual(diffeq_residual(kind, -nu, z, q, policy=pol)))

        def k_check():
            f = lambda w: macdonald_k(kind, nu, w, q, pol).value
            return _residual(diffeq_residual(kind, nu, z, q, f=f, policy=pol))
        cfg.add("diffeq:K", p, TOL_IDENTITY, k_check)


def suite_ladder(cfg: SuiteConfig):
    pol = cfg.policy
    for kind, nu, z, q in _grid(cfg):
        p = dict(kind=int(kind), nu=nu, z=z, q=q)
        for d in ("lower_order_minus", "lower_order_raise"):
            cfg.add(f"ladder:I:{d}", p, TOL_IDENTITY,
                    lambda d=d: _residual(ladder_check(kind, nu, z, q, d, policy=pol)))
        for w in ("eq214", "eq215"):
            cfg.add(f"ladder:K:{w}", p, TOL_IDENTITY,
                    lambda w=w: _residual(k_ladder_check(kind, nu, z, q, w, policy=pol)))


def suite_recurrence(cfg: SuiteConfig):
    pol = cfg.policy
    for kind, nu, z, q in _grid(cfg):
        p = dict(kind=int(kind), nu=nu, z=z, q=q)
        for w in ("difference", "sum"):
            cfg.add(f"recurrence:I:{w}", p, TOL_IDENTITY,
                    lambda w=w: _residual(recurrence_check(kind, nu, z, q, w, policy=pol)))
        for w in ("eq216", "eq217"):
            cfg.add(f"recurrence:K:{w}", p, TOL_IDENTITY,
                    lambda w=w: _residual(k_recurrence_check(kind, nu, z, q, w, policy=pol)))


def suite_wronskian(cfg: SuiteConfig):
    pol = cfg.policy
    for kind, nu, z, q in _grid(cfg):
        p = dict(kind=int(kind), nu=nu, z=z, q=q)

        def ii():
            closed = wronskian_closed_form_ii(kind, nu, z, q, pol)
            a, r = _rel(wronskian_ii(kind, nu, z, q, pol), closed)
            return a, r, abs(closed) > 0

        def ik():
            closed = wronskian_ik(kind, nu, z, q, pol)
            a, r = _rel(wronskian_ik_series(kind, nu, z, q, pol), closed)
            return a, r, abs(closed) > 0

        cfg.add("wronskian:II", p, TOL_IDENTITY, ii)
        cfg.add("wronskian:IK", p, TOL_IDENTITY, ik)


def _large_z(q: float, candidates=(8.0, 12.0, 20.0)) -> tuple:
    r = QBase(q).laurent_radius
    zs = tuple(z for z in candidates if z > 1.2 * r)
    return zs or (1.5 * r, 2.5 * r, 4.0 * r)


def suite_coeffs(cfg: SuiteConfig):
    pol = cfg.policy
    qs = cfg.qs((0.5, 0.8))
    for q in qs:
        for nu in (0.1, 0.4, 0.9):
            def ladder(nu=nu, q=q):
                lhs = a_coeff(nu + 1, q, pol).value
                return _rel(lhs, a_coeff(nu, q, pol).value * q ** (-nu - 0.5))
            cfg.add("coeffs:ladder", dict(nu=nu, q=q), TOL_IDENTITY, ladder)
        for nu in (0.2, 0.45, 0.7):
            def product(nu=nu, q=q):
                lhs = a_coeff(nu, q, pol).value * a_coeff(-nu, q, pol).value
                return _rel(lhs, a_product_wronskian(nu, q, pol))
            cfg.add("coeffs:product", dict(nu=nu, q=q), TOL_IDENTITY, product)
        for n in (1, 2):
            def an_squared(n=n, q=q):
                e = 1e-5
                lim = (a_product_wronskian(n + e, q, pol) + a_product_wronskian(n - e, q, pol)) / 2
                closed = q ** (0.5 - n * n) * math.log(q ** -2) / (2 * math.pi * (1 - q * q))
                return _rel(lim, closed)
            cfg.add("coeffs:an_squared", dict(n=n, q=q), TOL_AN_SQUARED, an_squared)

            def an_symmetry(n=n, q=q):
                vals = [abs(a_coeff(n + e, q, pol).value - a_coeff(-n - e, q, pol).value)
                        / a_coeff(n, q, pol).value for e in (1e-3, 1e-5)]
                # already at rounding level when the two ladders coincide
                return vals[1], vals[1], vals[1] <= vals[0] or vals[1] < 1e-13
            cfg.add("coeffs:an_symmetry", dict(n=n, q=q), TOL_IDENTITY, an_symmetry)

    # large-argument representations.  K is exponentially small there while
    # I_nu and I_{-nu} are large, so its reference is summed with far more
    # digits than the cancellation eats
    ref = SeriesPolicy.oracle_mode(eps_series=1e-80, dps=120)
    for q in qs:
        for kind in (Kind.ONE, Kind.TWO):
            for nu in (0.3, 0.9, 1.6):
                for z in _large_z(q):
                    p = dict(kind=int(kind), nu=nu, z=z, q=q)
                    cfg.add("coeffs:laurent", p, TOL_REPRESENTATION,
                            lambda kind=kind, nu=nu, z=z, q=q: _rel(
                                laurent_rep_i(kind, nu, z, q, pol), modified_i(kind, nu, z, q, pol).value))
            for nu in (0.4, 1.2):
                for z in _large_z(q, (6.0, 12.0))[:2]:
                    p = dict(kind=int(kind), nu=nu, z=z, q=q)
                    cfg.add("coeffs:closed_k", p, TOL_REPRESENTATION,
                            lambda kind=kind, nu=nu, z=z, q=q: _rel(
                                macdonald_k(kind, nu, z, q, pol, path="closed").value,
                                macdonald_k(kind, nu, z, q, ref).value))


def suite_integral(cfg: SuiteConfig):
    pol = cfg.policy
    qs = cfg.qs((0.6, 0.8))
    for q in qs:
        for nu in (1.75, 2.0, 2.5):
            p = dict(nu=nu, q=q)
            cfg.add("integral:small_z_k3", p, TOL_REPRESENTATION,
                    lambda nu=nu, q=q: (abs(small_z_check_k3(nu, q, pol) - 1),) * 2)
            cfg.add("integral:int_lattice", p, TOL_INT_LATTICE,
                    lambda nu=nu, q=q: _rel(int_lattice(nu, q, pol), int_closed_form(nu, q, pol)))
            for kind in Kind:
                for z in (0.7, 1.5):
                    pk = dict(kind=int(kind), nu=nu, z=z, q=q)
                    cfg.add("integral:k_rep", pk, TOL_INTEGRAL,
                            lambda kind=kind, nu=nu, z=z, q=q: _rel(
                                k_integral_rep(kind, nu, z, q, pol), macdonald_k(kind, nu, z, q, pol).value))
        for nu in (0.25, 0.75):
            cfg.add("integral:qconst_period", dict(nu=nu, q=q), 1e-14,
                    lambda nu=nu, q=q: _rel(q_const(nu + 1, q, pol).value, q_const(nu, q, pol).value))

    def lattice_decay():
        q, nu = 0.8, 2.0
        vals = [macdonald_k(3, nu, 2 * q ** m / (1 - q * q), q, pol).value.real for m in range(9)]
        ok = all(b < a for a, b in zip(vals, vals[1:]))
        return vals[-1] / vals[0], 0.0, ok
    cfg.add("integral:lattice_decay", dict(nu=2.0, q=0.8, m="0..8"), 1.0, lattice_decay)


def _monotone(errors):
    ok = all(b < a for a, b in zip(errors, errors[1:]))
    return errors[-1], errors[-1], ok


def suite_limits(cfg: SuiteConfig):
    pol = cfg.policy
    qs = LIMIT_QS
    for kind in Kind:
        for nu, z in ((0.5, 1.0), (1.5, 2.0)):
            cfg.add("limits:I", dict(kind=int(kind), nu=nu, z=z, q=list(qs)), TOL_LIMIT,
                    lambda kind=kind, nu=nu, z=z: _monotone(
                        [abs(modified_i(kind, nu, z, q, pol).value - classical.bessel_i(nu, z)) for q in qs]))
        for nu in (0.5, 1.5):
            for z in (0.8, 2.0):
                cfg.add("limits:K", dict(kind=int(kind), nu=nu, z=z, q=list(qs)), TOL_LIMIT,
                        lambda kind=kind, nu=nu, z=z: _monotone(
                            [abs(macdonald_k(kind, nu, z, q, pol).value - classical.bessel_k(nu, z)) for q in qs]))
    cfg.add("limits:qconst", dict(nu=0.75, q=list(qs)), TOL_QCONST,
            lambda: _monotone([abs(q_const(0.75, q, pol).value - math.pi / 2) for q in qs]))

    def pole_flight():
        radii = [QBase(q).pole_radius for q in (0.5, 0.8, 0.95)]
        return 0.0, 0.0, all(b > a for a, b in zip(radii, radii[1:]))
    cfg.add("limits:pole_flight", dict(q=[0.5, 0.8, 0.95]), 1.0, pole_flight)

    for kind in Kind:
        for n in (1, 2):
            def integer(kind=kind, n=n):
                q, z = 0.8, 1.0
                val = macdonald_k(kind, n, z, q, pol).value
                gaps = [abs(macdonald_k(kind, n + e, z, q, pol).value - macdonald_k(kind, n - e, z, q, pol).value)
                        for e in (1e-4, 1e-6)]
                # a second extrapolation from a different pair of offsets
                alt = integer_order_limit(kind, n, z, q, pol, eps=(1e-3, 2.5e-4))
                a, r = _rel(alt, val)
                return a, r, gaps[1] < gaps[0]
            cfg.add("limits:integer_order", dict(kind=int(kind), n=n, z=1.0, q=0.8), TOL_INTEGER, integer)


_SUITE_FUNCS = {
    "diffeq": suite_diffeq,
    "wronskian": suite_wronskian,
    "ladder": suite_ladder,
    "recurrence": suite_recurrence,
    "coeffs": suite_coeffs,
    "integral": suite_integral,
    "limits": suite_limits,
}


def run_suite(name: str, *, q_values=None, tol_scale: float = 1.0,
              policy: SeriesPolicy | None = None) -> list[IdentityReport]:
    """Run one suite (or ``"all"``) and return its rows in a fixed order."""
    names = SUITES if name == "all" else (name,)
    cfg = SuiteConfig(q_values=q_values, tol_scale=tol_scale, policy=policy)
    for n in names:
        if n not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {n!r}")
        _SUITE_FUNCS[n](cfg)
    return cfg.rows


def summarize(rows: list[IdentityReport]) -> list[dict]:
    """One line per identity id: count, failures and worst relative residual."""
    out: dict[str, dict] = {}
    for r in rows:
        s = out.setdefault(r.identity, dict(identity=r.identity, checks=0, failed=0, worst_rel=0.0))
        s["checks"] += 1
        s["failed"] += not r.passed
        s["worst_rel"] = max(s["worst_rel"], r.rel_residual)
    return list(out.values())
