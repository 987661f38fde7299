"""Sharp one-sided and best L1 trigonometric approximations of the periodic Bernoulli functions."""
from .critpoints import ShiftTable, bernoulli_even_zero, shifts
from .discrepancy import PointSet, brute_discrepancy, et_bound, weyl_sums
from .hermitian import FormInput, form_value, hurwitz_zeta, kernel_p, kernel_q, optimal_constants, verify_bounds
from .kernels import dhat, eval_d, eval_G, eval_H, eval_phi, phihat, polygamma
from .polycore import (
    DEGREE_CAP,
    DegreeCapError,
    RationalPoly,
    bernoulli_periodic,
    bernoulli_polynomial,
    euler_polynomial,
    eval_poly,
)
from .trigpoly import (
    ApproxSpec,
    TrigPoly,
    build,
    build_best_l1,
    build_extremal,
    eval_trig,
    l1_error,
    mean_error,
    interpolation_nodes,
    monomial_approx,
    sharp_l1,
    sharp_mean_gap,
    sup_violation,
)

__version__ = "0.1.0"
