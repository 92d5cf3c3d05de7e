"""Closed-form coefficient families and their quadrature oracles.

Each family has two first-class evaluation routes that must agree:

* a closed form assembled from Euler beta and Gauss 2F1 values (or, for the
  log and rational families, elementary functions), and
* an independent adaptive-quadrature ``*_oracle`` of the defining integral
  over t in [0, 1] with the kernel (t*b + (1-t)*a)**(-2q).

The oracle is the ground truth: the CLI can print both columns, and the test
suite pins |closed - oracle| <= 1e-8 * max(1, |closed|) across the
acceptance grid. The |1-2t| crease makes t = 1/2 a mandatory breakpoint for
every oracle integrand that carries it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .specfun import QuadratureSpec, beta, hyp2f1, integrate

__all__ = [
    "CoefficientSet",
    "CLOSED_FORM",
    "QUADRATURE_ORACLE",
    "lambda_coeff",
    "lambda_oracle",
    "mu_coeff",
    "mu_oracle",
    "nu_coeff",
    "nu_oracle",
    "lambda123",
    "lambda123_oracle",
    "mu12",
    "mu12_oracle",
    "coefficient_sets",
]

CLOSED_FORM = "closed-form"
QUADRATURE_ORACLE = "quadrature-oracle"

# Below this relative interval width the log closed forms of the rational
# family cancel catastrophically and the oracle value is returned instead.
_DEGENERATE_WIDTH = 1e-6

_ORACLE_SPEC = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=2000, breakpoints=(0.5,))
_SMOOTH_SPEC = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12, max_subdivisions=2000)


@dataclass(frozen=True)
class CoefficientSet:
    """A named coefficient value with its provenance and parameters."""

    name: str
    value: float
    provenance: str
    a: float
    b: float
    alpha: float | None = None
    q: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"coefficient {self.name} evaluated to a non-finite value")
        if self.provenance not in (CLOSED_FORM, QUADRATURE_ORACLE):
            raise DomainError(f"unknown provenance {self.provenance!r}")


def _validate_interval(a: float, b: float) -> tuple[float, float]:
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b) and 0.0 < a < b):
        raise DomainError(f"interval must satisfy 0 < a < b, got a={a!r}, b={b!r}")
    return a, b


def _validate_alpha_q(alpha: float, q: float) -> tuple[float, float]:
    alpha = float(alpha)
    q = float(q)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    if not q >= 1.0:
        raise DomainError(f"q must be at least 1, got {q!r}")
    return alpha, q


def _kernel(t: np.ndarray, a: float, b: float, q: float) -> np.ndarray:
    return (t * b + (1.0 - t) * a) ** (-2.0 * q)


@lru_cache(maxsize=4096)
def _lambda_closed(alpha: float, q: float, a: float, b: float) -> float:
    z1 = 1.0 - a / b
    z2 = 1.0 - 2.0 * a / (a + b)
    term1 = beta(1.0, alpha + 2.0) / b ** (2.0 * q) * hyp2f1(2.0 * q, 1.0, alpha + 3.0, z1)
    term2 = beta(2.0, alpha + 1.0) / b ** (2.0 * q) * hyp2f1(2.0 * q, 2.0, alpha + 3.0, z1)
    term3 = (
        2.0 ** (2.0 * q - alpha)
        * beta(2.0, alpha + 1.0)
        / (a + b) ** (2.0 * q)
        * hyp2f1(2.0 * q, 2.0, alpha + 3.0, z2)
    )
    return term1 - term2 + term3


def lambda_coeff(alpha: float, q: float, a: float, b: float) -> float:
    """Closed form of the creased moment integral
    int_0^1 |1-2t| t^alpha (t b + (1-t) a)^(-2q) dt.

    Three beta * 2F1 terms: the full-interval moments of t^alpha and
    t^(alpha+1), plus the doubled half-interval term that encodes the crease.
    """
    alpha, q = _validate_alpha_q(alpha, q)
    a, b = _validate_interval(a, b)
    return _lambda_closed(alpha, q, a, b)


def lambda_oracle(alpha: float, q: float, a: float, b: float) -> float:
    """Adaptive quadrature of the defining integral of lambda_coeff."""
    alpha, q = _validate_alpha_q(alpha, q)
    a, b = _validate_interval(a, b)
    value, _ = integrate(
        lambda t: np.abs(1.0 - 2.0 * t) * t**alpha * _kernel(t, a, b, q),
        0.0,
        1.0,
        _ORACLE_SPEC,
    )
    return value


def mu_coeff(alpha: float, q: float, a: float, b: float) -> float:
    """lambda_coeff at alpha = 0 minus lambda_coeff at alpha; equals the
    defining integral with weight (1 - t^alpha) in place of t^alpha."""
    alpha, q = _validate_alpha_q(alpha, q)
    a, b = _validate_interval(a, b)
    return _lambda_closed(0.0, q, a, b) - _lambda_closed(alpha, q, a, b)


def mu_oracle(alpha: float, q: float, a: float, b: float) -> float:
    alpha, q = _validate_alpha_q(alpha, q)
    a, b = _validate_interval(a, b)
    value, _ = integrate(
        lambda t: np.abs(1.0 - 2.0 * t) * (1.0 - t**alpha) * _kernel(t, a, b, q),
        0.0,
        1.0,
        _ORACLE_SPEC,
    )
    return value


@lru_cache(maxsize=4096)
def _nu_closed(alpha: float, q: float, a: float, b: float) -> float:
    z1 = 1.0 - a / b
    return beta(1.0, alpha + 1.0) / b ** (2.0 * q) * hyp2f1(2.0 * q, 1.0, alpha + 2.0, z1)


def nu_coeff(alpha: float, q: float, a: float, b: float) -> float:
    """Closed form of int_0^1 t^alpha (t b + (1-t) a)^(-2q) dt."""
    alpha, q = _validate_alpha_q(alpha, q)
    a, b = _validate_interval(a, b)
    return _nu_closed(alpha, q, a, b)


def nu_oracle(alpha: float, q: float, a: float, b: float) -> float:
    alpha, q = _validate_alpha_q(alpha, q)
    a, b = _validate_interval(a, b)
    value, _ = integrate(lambda t: t**alpha * _kernel(t, a, b, q), 0.0, 1.0, _SMOOTH_SPEC)
    return value


class Lambda123(NamedTuple):
    lambda1: float
    lambda2: float
    lambda3: float


class Mu12(NamedTuple):
    mu1: float
    mu2: float


def _log_ratio(a: float, b: float) -> float:
    # ln((a+b)^2 / (4ab)) evaluated as log1p((b-a)^2 / (4ab)) for stability
    return math.log1p((b - a) ** 2 / (4.0 * a * b))


def _is_degenerate(a: float, b: float) -> bool:
    return (b - a) < _DEGENERATE_WIDTH * a


def lambda123(a: float, b: float) -> Lambda123:
    """The q = 1 log-form triple for the exponent-2 kernel.

    lambda1, lambda2 are the |1-2t| moments of orders 0 and 1; lambda3 is
    computed as lambda1 - lambda2, which is an exact algebraic identity of
    the closed forms. On near-degenerate intervals (relative width below
    1e-6) the log forms cancel catastrophically, so the quadrature values
    are returned instead; coefficient_sets exposes which route was taken.
    """
    a, b = _validate_interval(a, b)
    if _is_degenerate(a, b):
        return Lambda123(*lambda123_oracle(a, b))
    ln = _log_ratio(a, b)
    l1 = 1.0 / (a * b) - 2.0 / (b - a) ** 2 * ln
    l2 = -1.0 / (b * (b - a)) + (3.0 * a + b) / (b - a) ** 3 * ln
    return Lambda123(l1, l2, l1 - l2)


def lambda123_oracle(a: float, b: float) -> Lambda123:
    a, b = _validate_interval(a, b)
    l1 = lambda_oracle(0.0, 1.0, a, b)
    l2 = lambda_oracle(1.0, 1.0, a, b)
    return Lambda123(l1, l2, l1 - l2)


def mu12(q: float, a: float, b: float) -> Mu12:
    """Rational closed forms of int t * kernel dt and int (1-t) * kernel dt.

    Requires q > 1: the shared denominator carries the factor (1-q)(1-2q),
    which vanishes at q = 1 (and q = 1/2). Near-degenerate intervals fall
    back to the quadrature values like lambda123.
    """
    q = float(q)
    if not q > 1.0:
        raise DomainError(
            f"mu12 requires q > 1 (the (1-q) factor in the denominator vanishes at q = 1), got {q!r}"
        )
    a, b = _validate_interval(a, b)
    if _is_degenerate(a, b):
        return Mu12(*mu12_oracle(q, a, b))
    den = 2.0 * (b - a) ** 2 * (1.0 - q) * (1.0 - 2.0 * q)
    m1 = (a ** (2.0 - 2.0 * q) + b ** (1.0 - 2.0 * q) * ((b - a) * (1.0 - 2.0 * q) - a)) / den
    m2 = (b ** (2.0 - 2.0 * q) - a ** (1.0 - 2.0 * q) * ((b - a) * (1.0 - 2.0 * q) + b)) / den
    return Mu12(m1, m2)


def mu12_oracle(q: float, a: float, b: float) -> Mu12:
    q = float(q)
    if not q > 1.0:
        raise DomainError(f"mu12_oracle requires q > 1, got {q!r}")
    a, b = _validate_interval(a, b)
    m1, _ = integrate(lambda t: t * _kernel(t, a, b, q), 0.0, 1.0, _SMOOTH_SPEC)
    m2, _ = integrate(lambda t: (1.0 - t) * _kernel(t, a, b, q), 0.0, 1.0, _SMOOTH_SPEC)
    return Mu12(m1, m2)


_FAMILIES = ("lambda", "mu", "nu", "lambda123", "mu12")


def coefficient_sets(
    family: str,
    a: float,
    b: float,
    alpha: float | None = None,
    q: float | None = None,
    oracle: bool = False,
) -> tuple[CoefficientSet, ...]:
    """Evaluate one coefficient family into provenance-tagged records.

    With oracle=True the quadrature route is evaluated instead of the closed
    form. Families: lambda, mu, nu (need alpha and q), lambda123 (neither),
    mu12 (needs q > 1).
    """
    if family not in _FAMILIES:
        raise DomainError(f"unknown coefficient family {family!r}; expected one of {_FAMILIES}")
    a, b = _validate_interval(a, b)
    prov = QUADRATURE_ORACLE if oracle else CLOSED_FORM

    if family in ("lambda", "mu", "nu"):
        if alpha is None or q is None:
            raise DomainError(f"family {family!r} requires both alpha and q")
        fn = {
            ("lambda", False): lambda_coeff,
            ("lambda", True): lambda_oracle,
            ("mu", False): mu_coeff,
            ("mu", True): mu_oracle,
            ("nu", False): nu_coeff,
            ("nu", True): nu_oracle,
        }[(family, oracle)]
        value = fn(alpha, q, a, b)
        return (CoefficientSet(family, value, prov, a, b, alpha=float(alpha), q=float(q)),)

    if family == "lambda123":
        if oracle:
            triple = lambda123_oracle(a, b)
        else:
            triple = lambda123(a, b)
            if _is_degenerate(a, b):
                prov = QUADRATURE_ORACLE
        return tuple(
            CoefficientSet(name, val, prov, a, b, alpha=None, q=1.0)
            for name, val in zip(("lambda1", "lambda2", "lambda3"), triple)
        )

    if q is None:
        raise DomainError("family 'mu12' requires q")
    if oracle:
        pair = mu12_oracle(q, a, b)
    else:
        pair = mu12(q, a, b)
        if _is_degenerate(a, b):
            prov = QUADRATURE_ORACLE
    return tuple(
        CoefficientSet(name, val, prov, a, b, alpha=None, q=float(q))
        for name, val in zip(("mu1", "mu2"), pair)
    )
