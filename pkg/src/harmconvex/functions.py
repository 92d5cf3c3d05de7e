"""Registered scalar functions on positive intervals, with analytic derivatives.

Registry addressing used by the CLI: ``pow:s``, ``square``, ``identity``,
``neg-identity``, ``log``, ``exp``, ``const:c``. Evaluators accept scalars or
numpy arrays so the sampling checkers can vectorize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = [
    "Interval",
    "POSITIVE_AXIS",
    "RealFunction",
    "pow_fn",
    "const_fn",
    "resolve",
    "standard_functions",
    "REGISTRY_FORMS",
]


@dataclass(frozen=True)
class Interval:
    """A positive interval, open or closed at each end."""

    lo: float
    hi: float
    lo_open: bool = True
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if math.isnan(self.lo) or math.isnan(self.hi) or not self.lo < self.hi:
            raise DomainError(f"interval needs lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if self.lo < 0.0 or (self.lo == 0.0 and not self.lo_open):
            raise DomainError("interval must lie in the positive axis")

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        lo_ok = x > self.lo if self.lo_open else x >= self.lo
        hi_ok = x < self.hi if self.hi_open else x <= self.hi
        return bool(np.all(lo_ok & hi_ok))

    def mask(self, x: np.ndarray) -> np.ndarray:
        lo_ok = x > self.lo if self.lo_open else x >= self.lo
        hi_ok = x < self.hi if self.hi_open else x <= self.hi
        return lo_ok & hi_ok

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.hi)


POSITIVE_AXIS = Interval(0.0, math.inf, lo_open=True, hi_open=True)


@dataclass(frozen=True)
class RealFunction:
    """A named scalar function with optional analytic derivative.

    ``eval`` and ``derivative`` must accept floats and numpy arrays alike and
    stay finite on every point of ``domain``. Reports produced from a function
    without an analytic derivative flag the finite-difference fallback.
    """

    name: str
    eval: Callable
    derivative: Callable | None = None
    domain: Interval = POSITIVE_AXIS
    params: tuple[float, ...] = ()

    def __call__(self, x):
        return self.eval(x)

    @property
    def has_derivative(self) -> bool:
        return self.derivative is not None

    def restricted(self, lo: float, hi: float, lo_open: bool = False, hi_open: bool = False) -> "RealFunction":
        """Same function on a sub-interval of its domain."""
        sub = Interval(lo, hi, lo_open, hi_open)
        probe_lo = sub.lo if not sub.lo_open else sub.lo + _PROBE_INSET * (sub.hi - sub.lo)
        probe_hi = sub.hi if not sub.hi_open else sub.hi - _PROBE_INSET * (sub.hi - sub.lo)
        if not (self.domain.contains(probe_lo) and self.domain.contains(probe_hi)):
            raise DomainError(
                f"[{lo!r}, {hi!r}] is not inside the domain of {self.name}"
            )
        return RealFunction(self.name, self.eval, self.derivative, sub, self.params)


_PROBE_INSET = 1e-12

_FD_STEP = float(np.finfo(float).eps) ** (1.0 / 3.0)


def finite_difference(f: RealFunction) -> Callable:
    """Central-difference derivative with step eps^(1/3) * max(1, |x|)."""

    def d(x):
        x = np.asarray(x, dtype=float)
        h = _FD_STEP * np.maximum(1.0, np.abs(x))
        return (f.eval(x + h) - f.eval(x - h)) / (2.0 * h)

    return d


def abs_derivative_power(f: RealFunction, q: float) -> tuple[RealFunction, bool]:
    """|f'|^q as a RealFunction; returns (function, used_finite_differences)."""
    if f.has_derivative:
        base = f.derivative
        used_fd = False
    else:
        base = finite_difference(f)
        used_fd = True

    def ev(x):
        return np.abs(base(x)) ** q

    return (
        RealFunction(f"|{f.name}'|^{q:g}", ev, None, f.domain, f.params + (q,)),
        used_fd,
    )


def pow_fn(s: float) -> RealFunction:
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"pow exponent must be finite, got {s!r}")
    return RealFunction(
        f"pow:{s:g}",
        lambda x: np.power(x, s),
        lambda x: s * np.power(x, s - 1.0),
        POSITIVE_AXIS,
        (s,),
    )


def const_fn(c: float = 0.0) -> RealFunction:
    c = float(c)
    if not math.isfinite(c):
        raise DomainError(f"const value must be finite, got {c!r}")
    return RealFunction(
        f"const:{c:g}",
        lambda x: np.multiply(x, 0.0) + c,
        lambda x: np.multiply(x, 0.0),
        POSITIVE_AXIS,
        (c,),
    )


_PLAIN_REGISTRY: dict[str, Callable[[], RealFunction]] = {
    "square": lambda: RealFunction("square", lambda x: np.multiply(x, x), lambda x: 2.0 * np.asarray(x, float)),
    "identity": lambda: RealFunction("identity", lambda x: np.asarray(x, float) + 0.0, lambda x: np.multiply(x, 0.0) + 1.0),
    "neg-identity": lambda: RealFunction("neg-identity", lambda x: -np.asarray(x, float), lambda x: np.multiply(x, 0.0) - 1.0),
    "log": lambda: RealFunction("log", np.log, lambda x: 1.0 / np.asarray(x, float)),
    "exp": lambda: RealFunction("exp", np.exp, np.exp),
}

REGISTRY_FORMS = ("pow:s", "square", "identity", "neg-identity", "log", "exp", "const:c")


def resolve(spec: str) -> RealFunction:
    """Look up a registry function by its CLI name, e.g. ``pow:0.5``."""
    spec = spec.strip()
    if spec in _PLAIN_REGISTRY:
        return _PLAIN_REGISTRY[spec]()
    head, sep, arg = spec.partition(":")
    if sep:
        try:
            value = float(arg)
        except ValueError:
            raise DomainError(f"malformed function parameter in {spec!r}") from None
        if head == "pow":
            return pow_fn(value)
        if head == "const":
            return const_fn(value)
    raise DomainError(f"unknown function {spec!r}; known forms: {', '.join(REGISTRY_FORMS)}")


def standard_functions() -> tuple[RealFunction, ...]:
    """The built-in registry set used by sweeps and the acceptance suite."""
    return (
        pow_fn(0.5),
        pow_fn(0.75),
        resolve("square"),
        resolve("identity"),
        resolve("neg-identity"),
        resolve("log"),
        resolve("exp"),
        const_fn(0.0),
    )
