"""Modified q-Bessel and q-Bessel-Macdonald functions of kinds 1, 2 and 3.

All functions of ``(nu, z, q)`` use the rescaled argument, returning
``I_nu^(j)((1-q^2) z; q^2)`` and ``K_nu^(j)((1-q^2) z; q^2)``, so that the
classical functions are recovered as ``q -> 1`` with ``z`` fixed.

>>> from qbessel import modified_i, macdonald_k
>>> round(modified_i(3, 0.5, 1.0, 0.9).value.real, 12)
0.911042698576
"""
from .core import (
    DivergentSeries,
    DomainError,
    LowerParamPole,
    NotConverged,
    PoleError,
    QBase,
    QBesselError,
    SeriesPolicy,
    SeriesResult,
    ZeroArgument,
    basic_hyper,
    jackson_integral_bilateral,
    q_binomial,
    q_derivative,
    q_exp_big,
    q_exp_small,
    qgamma,
    qpoch_finite,
    qpoch_infinite,
)
from .bessel import (
    Kind,
    diffeq_residual,
    jackson_j,
    ladder_check,
    modified_i,
    q_wronskian,
    recurrence_check,
    wronskian_closed_form_ii,
    wronskian_ii,
)
from .laurent import a_coeff, a_product_wronskian, a_ratio, laurent_rep_i, phi_nu
from .macdonald import (
    integer_order_limit,
    k_ladder_check,
    k_recurrence_check,
    macdonald_k,
    macdonald_k1_closed,
    macdonald_k2_closed,
    wronskian_ik,
)
from .integral import (
    KernelFamily,
    NOKernel,
    int_closed_form,
    int_lattice,
    k_integral_rep,
    lattice_weight,
    q_const,
    small_z_check_k3,
)
from .verify import IdentityReport, run_suite, summarize

__version__ = "0.1.0"
