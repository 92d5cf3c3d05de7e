"""Numerical verification toolkit for harmonic-mean convexity inequalities.

The package computes, cross-validates and fuzz-tests:

* a special-function kernel (log-gamma, Euler beta, Gauss 2F1, adaptive
  Gauss-Kronrod quadrature),
* sampling-based convexity checkers for weighted harmonic and affine
  interpolation, plus the composition bridge between them,
* closed-form coefficient families paired with independent quadrature
  oracles,
* evaluators for the Hermite-Hadamard-type integral-mean and
  trapezoid-defect bounds built from those coefficients, and
* the classical two-argument means with four derived inequality checks.

Every closed form ships with its oracle, every checker reports margins and
counterexamples, and all operations are pure functions of their inputs.
"""

from .convexity import (
    ConvexityParams,
    SampleScheme,
    am_point,
    bridge_margin,
    check_am_convex,
    check_bridge_inequality,
    check_compose_equivalence,
    check_harmonic_am_convex,
    compose_g,
    harmonic_am_point,
)
from .coefficients import (
    CoefficientSet,
    coefficient_sets,
    lambda123,
    lambda123_oracle,
    lambda_coeff,
    lambda_oracle,
    mu12,
    mu12_oracle,
    mu_coeff,
    mu_oracle,
    nu_coeff,
    nu_oracle,
)
from .errors import AccuracyError, DomainError, EvaluationError, HarmconvexError
from .functions import Interval, POSITIVE_AXIS, RealFunction, const_fn, pow_fn, resolve, standard_functions
from .inequalities import (
    IntervalDomain,
    TrapezoidIdentity,
    check_classical_hh,
    check_hh_harmonic,
    check_hypothesis,
    check_lemma11,
    check_thm22,
    check_thm23,
    check_thm24,
    check_thm25,
    harmonic_integral_mean,
    trapezoid_error,
)
from .means import check_prop31, check_prop32, check_prop33, check_prop34, lp_power, mean
from .reports import VerificationReport
from .specfun import (
    DEFAULT_QUADRATURE,
    HypergeometricArgs,
    IntegralResult,
    QuadratureSpec,
    beta,
    gauss_2f1,
    hyp2f1,
    integrate,
    ln_gamma,
)
from .sweep import SweepConfig, SweepResult, run_sweep

__version__ = "0.1.0"
