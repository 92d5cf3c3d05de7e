"""Evaluators for the Hermite-Hadamard-type statements and the trapezoid identity.

Every evaluator computes both sides of its statement and returns a
VerificationReport; none of them verifies the convexity hypothesis on its
own. Hypothesis checking is opt-in through check_hypothesis(), so a violated
bound and a violated hypothesis stay distinguishable in diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coefficients as coeffs
from .convexity import ConvexityParams, SampleScheme, check_am_convex, check_harmonic_am_convex
from .errors import DomainError
from .functions import Interval, RealFunction, abs_derivative_power, finite_difference
from .reports import VerificationReport
from .specfun import QuadratureSpec, integrate

__all__ = [
    "DEFAULT_TOLERANCE",
    "IntervalDomain",
    "TrapezoidIdentity",
    "harmonic_integral_mean",
    "trapezoid_error",
    "check_classical_hh",
    "check_hh_harmonic",
    "check_thm22",
    "check_thm23",
    "check_thm24",
    "check_thm25",
    "check_lemma11",
    "check_hypothesis",
    "HYPOTHESIS_SCHEME",
]

DEFAULT_TOLERANCE = 1e-9

_QUAD = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=2000)
_QUAD_KINK = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=2000, breakpoints=(0.5,))

FD_NOTE = "derivative via finite differences"


@dataclass(frozen=True)
class IntervalDomain:
    """Endpoints 0 < a < b together with the scaling m in (0, 1].

    Statements with a scaled second endpoint evaluate the target function at
    b/m (and sometimes a/m), so the caller's function domain must contain
    b/m explicitly; evaluators raise DomainError otherwise.
    """

    a: float
    b: float
    m: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "m", float(self.m))
        if not (math.isfinite(self.a) and math.isfinite(self.b) and 0.0 < self.a < self.b):
            raise DomainError(f"need 0 < a < b, got a={self.a!r}, b={self.b!r}")
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m!r}")

    @property
    def b_over_m(self) -> float:
        return self.b / self.m

    @property
    def a_over_m(self) -> float:
        return self.a / self.m


def _require_in_domain(f: RealFunction, label: str, x: float) -> None:
    if not f.domain.contains(x):
        raise DomainError(f"{label} = {x!r} is outside the domain of {f.name}")


def harmonic_integral_mean(f: RealFunction, a: float, b: float, spec: QuadratureSpec | None = None) -> float:
    """(a b / (b - a)) * integral of f(x) / x^2 over [a, b]."""
    dom = IntervalDomain(a, b)
    _require_in_domain(f, "a", dom.a)
    _require_in_domain(f, "b", dom.b)

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return np.asarray(f.eval(x), dtype=float) / (x * x)

    value, _ = integrate(integrand, dom.a, dom.b, spec or _QUAD)
    return dom.a * dom.b / (dom.b - dom.a) * value


@dataclass(frozen=True)
class TrapezoidIdentity:
    """Both routes to the trapezoid defect of the harmonic integral mean.

    ``value`` is (f(a) + f(b))/2 minus the harmonic integral mean;
    ``quadrature_value`` is the weighted derivative integral
    (a b (b-a) / 2) * int_0^1 (1-2t) (t b + (1-t) a)^(-2) f'(ab/(tb+(1-t)a)) dt,
    which equals it for differentiable f. ``residual`` is their absolute
    difference and ``scaled_residual`` divides by max(1, |value|).
    """

    value: float
    quadrature_value: float
    residual: float
    scaled_residual: float
    used_finite_differences: bool


def trapezoid_error(f: RealFunction, a: float, b: float, spec: QuadratureSpec | None = None) -> TrapezoidIdentity:
    """Evaluate the trapezoid defect and its derivative-integral companion."""
    dom = IntervalDomain(a, b)
    _require_in_domain(f, "a", dom.a)
    _require_in_domain(f, "b", dom.b)
    lhs = 0.5 * (float(f.eval(dom.a)) + float(f.eval(dom.b))) - harmonic_integral_mean(f, a, b, spec)

    deriv = f.derivative if f.has_derivative else finite_difference(f)
    aa, bb = dom.a, dom.b

    def integrand(t):
        t = np.asarray(t, dtype=float)
        den = t * bb + (1.0 - t) * aa
        return (1.0 - 2.0 * t) / (den * den) * np.asarray(deriv(aa * bb / den), dtype=float)

    value, _ = integrate(integrand, 0.0, 1.0, spec or _QUAD_KINK)
    rhs = 0.5 * aa * bb * (bb - aa) * value
    residual = abs(lhs - rhs)
    return TrapezoidIdentity(
        value=lhs,
        quadrature_value=rhs,
        residual=residual,
        scaled_residual=residual / max(1.0, abs(lhs)),
        used_finite_differences=not f.has_derivative,
    )


def _base_inputs(f: RealFunction, dom: IntervalDomain, tolerance: float, **extra) -> dict:
    inputs = {"function": f.name, "a": dom.a, "b": dom.b, "tolerance": tolerance}
    inputs.update(extra)
    return inputs


def check_classical_hh(
    f: RealFunction, a: float, b: float, tolerance: float = DEFAULT_TOLERANCE
) -> VerificationReport:
    """Baseline double inequality for convex f:
    f((a+b)/2) <= mean of f over [a, b] <= (f(a) + f(b))/2."""
    dom = IntervalDomain(a, b)
    for label, x in (("a", dom.a), ("b", dom.b)):
        _require_in_domain(f, label, x)

    def integrand(x):
        return np.asarray(f.eval(np.asarray(x, dtype=float)), dtype=float)

    integral, _ = integrate(integrand, dom.a, dom.b, _QUAD)
    mean = integral / (dom.b - dom.a)
    left_lhs = float(f.eval(0.5 * (dom.a + dom.b)))
    right_rhs = 0.5 * (float(f.eval(dom.a)) + float(f.eval(dom.b)))
    margins = (mean - left_lhs, right_rhs - mean)
    notes = [
        f"left: f((a+b)/2)={left_lhs!r} <= mean={mean!r}",
        f"right: mean={mean!r} <= endpoint average={right_rhs!r}",
    ]
    if margins[0] <= margins[1]:
        lhs, rhs = left_lhs, mean
    else:
        lhs, rhs = mean, right_rhs
    return VerificationReport.from_sides(
        "eq-1-1", lhs, rhs, tolerance, _base_inputs(f, dom, tolerance), notes
    )


def check_hh_harmonic(
    f: RealFunction, a: float, b: float, tolerance: float = DEFAULT_TOLERANCE
) -> VerificationReport:
    """Double inequality for harmonically convex f:
    f(2ab/(a+b)) <= harmonic integral mean <= (f(a) + f(b))/2.

    The report carries the binding side; both margins appear in notes.
    """
    dom = IntervalDomain(a, b)
    mean = harmonic_integral_mean(f, a, b)
    hpoint = 2.0 * dom.a * dom.b / (dom.a + dom.b)
    left_lhs = float(f.eval(hpoint))
    right_rhs = 0.5 * (float(f.eval(dom.a)) + float(f.eval(dom.b)))
    margins = (mean - left_lhs, right_rhs - mean)
    notes = [
        f"left: f(2ab/(a+b))={left_lhs!r} <= mean={mean!r}",
        f"right: mean={mean!r} <= endpoint average={right_rhs!r}",
    ]
    if margins[0] <= margins[1]:
        lhs, rhs = left_lhs, mean
    else:
        lhs, rhs = mean, right_rhs
    return VerificationReport.from_sides(
        "eq-1-4", lhs, rhs, tolerance, _base_inputs(f, dom, tolerance), notes
    )


def check_thm22(
    f: RealFunction,
    a: float,
    b: float,
    alpha: float,
    m: float = 1.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Harmonic integral mean against the smaller of the two weighted
    endpoint averages (f(a) + alpha m f(b/m))/(alpha+1) and
    (f(b) + alpha m f(a/m))/(alpha+1). Ties break toward the first."""
    params = ConvexityParams(alpha, m)
    dom = IntervalDomain(a, b, m)
    for label, x in (("a", dom.a), ("b", dom.b), ("a/m", dom.a_over_m), ("b/m", dom.b_over_m)):
        _require_in_domain(f, label, x)
    lhs = harmonic_integral_mean(f, a, b)
    cand_a = (float(f.eval(dom.a)) + params.alpha * params.m * float(f.eval(dom.b_over_m))) / (
        params.alpha + 1.0
    )
    cand_b = (float(f.eval(dom.b)) + params.alpha * params.m * float(f.eval(dom.a_over_m))) / (
        params.alpha + 1.0
    )
    rhs = cand_a if cand_a <= cand_b else cand_b
    notes = [
        f"candidate anchored at a: {cand_a!r}",
        f"candidate anchored at b: {cand_b!r}",
    ]
    inputs = _base_inputs(f, dom, tolerance, alpha=params.alpha, m=params.m)
    return VerificationReport.from_sides("thm-2.2", lhs, rhs, tolerance, inputs, notes)


def _abs_derivative_at(f: RealFunction, x: float) -> tuple[float, bool]:
    if f.has_derivative:
        return abs(float(f.derivative(x))), False
    return abs(float(finite_difference(f)(x))), True


def _trapezoid_lhs(f: RealFunction, dom: IntervalDomain) -> float:
    return abs(
        0.5 * (float(f.eval(dom.a)) + float(f.eval(dom.b)))
        - harmonic_integral_mean(f, dom.a, dom.b)
    )


def _power_bound_inputs(f, dom, alpha, m, q, tolerance):
    return _base_inputs(f, dom, tolerance, alpha=float(alpha), m=float(m), q=float(q))


def check_thm23(
    f: RealFunction,
    a: float,
    b: float,
    alpha: float,
    m: float = 1.0,
    q: float = 1.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Trapezoid defect against the creased power-mean bound
    (a b (b-a) / 2^(2-1/q)) [lam |f'(a)|^q + m mu |f'(b/m)|^q]^(1/q)
    with lam, mu the creased kernel moments at (alpha, q)."""
    params = ConvexityParams(alpha, m)
    q = float(q)
    if not q >= 1.0:
        raise DomainError(f"q must be at least 1, got {q!r}")
    dom = IntervalDomain(a, b, m)
    for label, x in (("a", dom.a), ("b", dom.b), ("b/m", dom.b_over_m)):
        _require_in_domain(f, label, x)
    lhs = _trapezoid_lhs(f, dom)
    da, fd_a = _abs_derivative_at(f, dom.a)
    db, fd_b = _abs_derivative_at(f, dom.b_over_m)
    lam = coeffs.lambda_coeff(params.alpha, q, dom.a, dom.b)
    mu = coeffs.mu_coeff(params.alpha, q, dom.a, dom.b)
    bracket = lam * da**q + params.m * mu * db**q
    rhs = dom.a * dom.b * (dom.b - dom.a) / 2.0 ** (2.0 - 1.0 / q) * bracket ** (1.0 / q)
    notes = []
    if fd_a or fd_b:
        notes.append(FD_NOTE)
    inputs = _power_bound_inputs(f, dom, params.alpha, params.m, q, tolerance)
    return VerificationReport.from_sides("thm-2.3", lhs, rhs, tolerance, inputs, notes)


def check_thm24(
    f: RealFunction,
    a: float,
    b: float,
    alpha: float,
    m: float = 1.0,
    q: float = 1.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Trapezoid defect against the power-mean bound whose weight kernel
    keeps the exponent 2:
    (a b (b-a) / 2) lam(0,1)^(1-1/q) [lam(alpha,1) |f'(a)|^q
                                      + m mu(alpha,1) |f'(b/m)|^q]^(1/q).

    The first factor is the (1 - 1/q) power of the creased kernel moment
    with exponent 2 (the q = 1 moment): the power-mean split leaves the
    integral weight |1-2t|/(tb+(1-t)a)^2 intact in both factors, and a
    q-dependent first factor is dimensionally inconsistent under interval
    scaling and numerically falsifiable.
    """
    params = ConvexityParams(alpha, m)
    q = float(q)
    if not q >= 1.0:
        raise DomainError(f"q must be at least 1, got {q!r}")
    dom = IntervalDomain(a, b, m)
    for label, x in (("a", dom.a), ("b", dom.b), ("b/m", dom.b_over_m)):
        _require_in_domain(f, label, x)
    lhs = _trapezoid_lhs(f, dom)
    da, fd_a = _abs_derivative_at(f, dom.a)
    db, fd_b = _abs_derivative_at(f, dom.b_over_m)
    first = coeffs.lambda_coeff(0.0, 1.0, dom.a, dom.b) ** (1.0 - 1.0 / q)
    lam = coeffs.lambda_coeff(params.alpha, 1.0, dom.a, dom.b)
    mu = coeffs.mu_coeff(params.alpha, 1.0, dom.a, dom.b)
    bracket = lam * da**q + params.m * mu * db**q
    rhs = dom.a * dom.b * (dom.b - dom.a) / 2.0 * first * bracket ** (1.0 / q)
    notes = []
    if fd_a or fd_b:
        notes.append(FD_NOTE)
    inputs = _power_bound_inputs(f, dom, params.alpha, params.m, q, tolerance)
    return VerificationReport.from_sides("thm-2.4", lhs, rhs, tolerance, inputs, notes)


def check_thm25(
    f: RealFunction,
    a: float,
    b: float,
    alpha: float,
    m: float = 1.0,
    q: float = 2.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Trapezoid defect against the Holder-split bound
    (a b (b-a) / 2) (1/(p+1))^(1/p) (nu(alpha,q) |f'(a)|^q
        + m (nu(0,q) - nu(alpha,q)) |f'(b/m)|^q)^(1/q)
    with p the conjugate exponent of q > 1."""
    params = ConvexityParams(alpha, m)
    q = float(q)
    if not q > 1.0:
        raise DomainError(f"q must exceed 1 (conjugate exponent p = q/(q-1)), got {q!r}")
    p = q / (q - 1.0)
    dom = IntervalDomain(a, b, m)
    for label, x in (("a", dom.a), ("b", dom.b), ("b/m", dom.b_over_m)):
        _require_in_domain(f, label, x)
    lhs = _trapezoid_lhs(f, dom)
    da, fd_a = _abs_derivative_at(f, dom.a)
    db, fd_b = _abs_derivative_at(f, dom.b_over_m)
    nu_alpha = coeffs.nu_coeff(params.alpha, q, dom.a, dom.b)
    nu_zero = coeffs.nu_coeff(0.0, q, dom.a, dom.b)
    inner = nu_alpha * da**q + params.m * (nu_zero - nu_alpha) * db**q
    rhs = (
        dom.a * dom.b * (dom.b - dom.a) / 2.0 * (1.0 / (p + 1.0)) ** (1.0 / p) * inner ** (1.0 / q)
    )
    notes = [f"conjugate exponent p={p!r}"]
    if fd_a or fd_b:
        notes.append(FD_NOTE)
    inputs = _power_bound_inputs(f, dom, params.alpha, params.m, q, tolerance)
    return VerificationReport.from_sides("thm-2.5", lhs, rhs, tolerance, inputs, notes)


def check_lemma11(
    f: RealFunction, a: float, b: float, tolerance: float = DEFAULT_TOLERANCE
) -> VerificationReport:
    """Residual self-test of the trapezoid identity.

    Report layout: lhs is the scaled residual
    |direct - quadrature| / max(1, |direct|), rhs is 0, so holds means the
    residual stays within tolerance.
    """
    dom = IntervalDomain(a, b)
    ident = trapezoid_error(f, a, b)
    notes = [
        f"direct value {ident.value!r}",
        f"derivative-integral value {ident.quadrature_value!r}",
    ]
    if ident.used_finite_differences:
        notes.append(FD_NOTE)
    inputs = _base_inputs(f, dom, tolerance)
    return VerificationReport.from_sides(
        "lemma-1-1", ident.scaled_residual, 0.0, tolerance, inputs, notes
    )


HYPOTHESIS_SCHEME = SampleScheme(grid_density=13, random_count=256, seed=0, slack=1e-12)


def check_hypothesis(
    statement_id: str,
    f: RealFunction,
    a: float,
    b: float,
    alpha: float = 1.0,
    m: float = 1.0,
    q: float = 1.0,
    scheme: SampleScheme = HYPOTHESIS_SCHEME,
    scope: str = "interval",
) -> VerificationReport:
    """Sampling check of the convexity hypothesis behind a statement.

    For thm-2.2 and eq-1-4 the function itself is checked; for thm-2.3,
    thm-2.4 and thm-2.5 the check targets |f'|^q; eq-1-1 checks plain
    convexity. ``scope`` is "interval" for the window [a, b/m] the proofs
    use, or "wide" for a window stretched by a factor of 4 on both sides as
    a stand-in for a global hypothesis; the two scopes are exposed because
    the statements do not settle which one is required.

    In addition to the scheme's tensor grid, the derivative-bearing
    statements always sample the chord pair (a, b/m) on a dense t-grid,
    since that family is exactly what their proofs integrate over.
    """
    dom = IntervalDomain(a, b, m)
    params = ConvexityParams(alpha, m)
    if scope == "interval":
        lo, hi = dom.a, dom.b_over_m
    elif scope == "wide":
        lo, hi = dom.a / 4.0, dom.b_over_m * 4.0
    else:
        raise DomainError(f"unknown hypothesis scope {scope!r}")
    window = Interval(lo, hi, lo_open=False, hi_open=False)

    used_fd = False
    if statement_id in ("thm-2.2", "eq-1-4"):
        target = f
        check = check_harmonic_am_convex
        if statement_id == "eq-1-4":
            params = ConvexityParams(1.0, 1.0)
    elif statement_id == "eq-1-1":
        target = f
        check = check_am_convex
        params = ConvexityParams(1.0, 1.0)
        window = Interval(dom.a, dom.b, lo_open=False, hi_open=False)
    elif statement_id in ("thm-2.3", "thm-2.4", "thm-2.5"):
        target, used_fd = abs_derivative_power(f, q)
        check = check_harmonic_am_convex
    else:
        raise DomainError(f"statement {statement_id!r} has no convexity hypothesis to check")

    report = check(target, params, scheme, window=window)
    if used_fd:
        report.notes.append(FD_NOTE)
    if report.holds and check is check_harmonic_am_convex:
        # Dense sweep along the chord family the bound proofs integrate.
        ts = np.linspace(0.0, 1.0, 257)
        x0 = np.full_like(ts, dom.a)
        y0 = np.full_like(ts, dom.b_over_m)
        pts = params.m * x0 * y0 / (params.m * ts * y0 + (1.0 - ts) * x0)
        lhs = np.asarray(target.eval(pts), dtype=float)
        ta = ts**params.alpha
        rhs = ta * float(target.eval(dom.a)) + params.m * (1.0 - ta) * float(
            target.eval(dom.b_over_m)
        )
        margins = rhs - lhs
        allowance = scheme.slack * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
        if (margins < -allowance).any():
            worst = int(np.argmin(margins + allowance))
            counterexample = {
                "x": dom.a,
                "y": dom.b_over_m,
                "t": float(ts[worst]),
                "lhs": float(lhs[worst]),
                "rhs": float(rhs[worst]),
                "margin": float(margins[worst]),
            }
            report = VerificationReport.from_sides(
                report.statement_id,
                lhs=float(lhs[worst]),
                rhs=float(rhs[worst]),
                tolerance=float(allowance[worst]),
                inputs=report.inputs,
                notes=list(report.notes) + ["violation on the chord t-sweep"],
                counterexample=counterexample,
            )
    return report
