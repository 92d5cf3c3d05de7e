"""Special means of two positive numbers and the derived inequality checks.

The four proposition evaluators recompute their bounds from the same
coefficient families used by the trapezoid-defect theorems (parameter
substitution, no separate code path), so a transcription error in one place
would surface in both test surfaces at once.
"""

from __future__ import annotations

import math

from . import coefficients as coeffs
from .errors import DomainError
from .reports import VerificationReport

__all__ = [
    "MEAN_KINDS",
    "mean",
    "lp_power",
    "check_prop31",
    "check_prop32",
    "check_prop33",
    "check_prop34",
]

MEAN_KINDS = ("A_w", "A", "G", "H", "L_p")

DEFAULT_TOLERANCE = 1e-9


def _validate_pair(a: float, b: float) -> tuple[float, float]:
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b) and 0.0 <= a and 0.0 <= b):
        raise DomainError(f"means need nonnegative finite arguments, got a={a!r}, b={b!r}")
    return a, b


def lp_power(a: float, b: float, p: float) -> float:
    """L_p(a, b)**p without the p-th root round trip:
    (b^(p+1) - a^(p+1)) / ((p+1)(b - a))."""
    a, b = _validate_pair(a, b)
    p = float(p)
    if p in (-1.0, 0.0):
        raise DomainError(f"L_p is undefined for p in {{-1, 0}}, got p={p!r}")
    if a == b:
        raise DomainError("L_p needs two distinct arguments")
    if min(a, b) == 0.0 and p < -1.0:
        raise DomainError("L_p with p < -1 requires positive arguments")
    return (b ** (p + 1.0) - a ** (p + 1.0)) / ((p + 1.0) * (b - a))


def mean(kind: str, a: float, b: float, *, weight: float | None = None, p: float | None = None) -> float:
    """One of the five two-argument means.

    A_w is the weighted arithmetic mean weight*a + (1-weight)*b (weight on
    the first argument); A, G, H are the arithmetic, geometric and harmonic
    means; L_p is the p-logarithmic mean, p outside {-1, 0}.
    """
    a, b = _validate_pair(a, b)
    if kind == "A_w":
        if weight is None or not 0.0 <= float(weight) <= 1.0:
            raise DomainError("A_w needs a weight in [0, 1]")
        w = float(weight)
        return w * a + (1.0 - w) * b
    if kind == "A":
        return 0.5 * (a + b)
    if kind == "G":
        return math.sqrt(a * b)
    if kind == "H":
        if a == 0.0 or b == 0.0:
            return 0.0
        return 2.0 * a * b / (a + b)
    if kind == "L_p":
        if p is None:
            raise DomainError("L_p needs the exponent p")
        base = lp_power(a, b, p)
        return base ** (1.0 / float(p))
    raise DomainError(f"unknown mean kind {kind!r}; expected one of {MEAN_KINDS}")


def _validate_prop_args(a: float, b: float, alpha: float) -> tuple[float, float, float]:
    a = float(a)
    b = float(b)
    alpha = float(alpha)
    if not (math.isfinite(a) and math.isfinite(b) and 0.0 < a < b):
        raise DomainError(f"propositions need 0 < a < b, got a={a!r}, b={b!r}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"propositions need alpha in (0, 1), got {alpha!r}")
    return a, b, alpha


def _power_gap(a: float, b: float, alpha: float, q: float) -> float:
    """|A(a^(alpha/q+1), b^(alpha/q+1)) - G^2 L_(alpha/q-1)^(alpha/q-1)|."""
    c = alpha / q + 1.0
    return abs(0.5 * (a**c + b**c) - a * b * lp_power(a, b, alpha / q - 1.0))


def check_prop31(a: float, b: float, alpha: float, tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """G^2 L_(alpha-2)^(alpha-2) against the smaller weighted mean of the
    alpha-th powers, weight 1/(alpha+1) on the first argument.

    The left side equals the harmonic integral mean of x^alpha on [a, b]
    (an exact algebraic identity, pinned by the tests to 1e-10).
    """
    a, b, alpha = _validate_prop_args(a, b, alpha)
    lhs = a * b * lp_power(a, b, alpha - 2.0)
    cand_a = mean("A_w", a**alpha, b**alpha, weight=1.0 / (alpha + 1.0))
    cand_b = mean("A_w", b**alpha, a**alpha, weight=1.0 / (alpha + 1.0))
    rhs = cand_a if cand_a <= cand_b else cand_b
    notes = [f"candidate anchored at a: {cand_a!r}", f"candidate anchored at b: {cand_b!r}"]
    inputs = {"a": a, "b": b, "alpha": alpha, "tolerance": tolerance}
    return VerificationReport.from_sides("prop-3.1", lhs, rhs, tolerance, inputs, notes)


def check_prop32(
    a: float, b: float, alpha: float, q: float, tolerance: float = DEFAULT_TOLERANCE
) -> VerificationReport:
    """Power-mean gap of the (alpha/q + 1)-th powers against the creased
    kernel bound (a b (b-a)(alpha+q) / (q 2^(2-1/q)))
    [lam(alpha,q) a^alpha + mu(alpha,q) b^alpha]^(1/q)."""
    a, b, alpha = _validate_prop_args(a, b, alpha)
    q = float(q)
    if not q >= 1.0:
        raise DomainError(f"q must be at least 1, got {q!r}")
    lhs = _power_gap(a, b, alpha, q)
    bracket = coeffs.lambda_coeff(alpha, q, a, b) * a**alpha + coeffs.mu_coeff(alpha, q, a, b) * b**alpha
    rhs = a * b * (b - a) * (alpha + q) / (q * 2.0 ** (2.0 - 1.0 / q)) * bracket ** (1.0 / q)
    inputs = {"a": a, "b": b, "alpha": alpha, "q": q, "tolerance": tolerance}
    return VerificationReport.from_sides("prop-3.2", lhs, rhs, tolerance, inputs)


def check_prop33(
    a: float, b: float, alpha: float, q: float, tolerance: float = DEFAULT_TOLERANCE
) -> VerificationReport:
    """Power-mean gap against the exponent-2 weight bound
    (a b (b-a)(alpha+q) / (2q)) lam(0,1)^(1-1/q)
    [lam(alpha,1) a^alpha + mu(alpha,1) b^alpha]^(1/q).

    The first factor fixes the kernel exponent at 2 for the same scaling
    reason as the corresponding trapezoid-defect bound.
    """
    a, b, alpha = _validate_prop_args(a, b, alpha)
    q = float(q)
    if not q >= 1.0:
        raise DomainError(f"q must be at least 1, got {q!r}")
    lhs = _power_gap(a, b, alpha, q)
    first = coeffs.lambda_coeff(0.0, 1.0, a, b) ** (1.0 - 1.0 / q)
    bracket = coeffs.lambda_coeff(alpha, 1.0, a, b) * a**alpha + coeffs.mu_coeff(alpha, 1.0, a, b) * b**alpha
    rhs = a * b * (b - a) * (alpha + q) / (2.0 * q) * first * bracket ** (1.0 / q)
    inputs = {"a": a, "b": b, "alpha": alpha, "q": q, "tolerance": tolerance}
    return VerificationReport.from_sides("prop-3.3", lhs, rhs, tolerance, inputs)


def check_prop34(
    a: float,
    b: float,
    alpha: float,
    q: float,
    p: float | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Power-mean gap against the Holder-split bound
    (a b (b-a)(alpha+q) / (2q)) (1/(p+1))^(1/p)
    (nu(alpha,q) a^alpha + (nu(0,q) - nu(alpha,q)) b^alpha)^(1/q), q > 1.

    When p is supplied it must satisfy 1/p + 1/q = 1 to within 1e-15.
    """
    a, b, alpha = _validate_prop_args(a, b, alpha)
    q = float(q)
    if not q > 1.0:
        raise DomainError(f"q must exceed 1, got {q!r}")
    conj = q / (q - 1.0)
    if p is None:
        p = conj
    else:
        p = float(p)
        if p <= 0.0 or abs(1.0 / p + 1.0 / q - 1.0) > 1e-15:
            raise DomainError(f"p={p!r} is not conjugate to q={q!r} (need 1/p + 1/q = 1)")
    lhs = _power_gap(a, b, alpha, q)
    nu_alpha = coeffs.nu_coeff(alpha, q, a, b)
    nu_zero = coeffs.nu_coeff(0.0, q, a, b)
    inner = nu_alpha * a**alpha + (nu_zero - nu_alpha) * b**alpha
    rhs = a * b * (b - a) * (alpha + q) / (2.0 * q) * (1.0 / (p + 1.0)) ** (1.0 / p) * inner ** (1.0 / q)
    inputs = {"a": a, "b": b, "alpha": alpha, "q": q, "p": p, "tolerance": tolerance}
    return VerificationReport.from_sides("prop-3.4", lhs, rhs, tolerance, inputs)
