"""Sampling-based convexity checkers and the composition bridge.

A sampling checker can only falsify, never certify: a passing report means
"no violation found" over the tensor grid plus the seeded random triples,
not "convex". Checkers are pure given (function, params, scheme), evaluate
samples as vectorized batches, and always report the worst sample by index
order, so results are deterministic regardless of how evaluation is batched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functions import Interval, RealFunction
from .reports import VerificationReport

__all__ = [
    "ConvexityParams",
    "SampleScheme",
    "harmonic_am_point",
    "am_point",
    "bridge_margin",
    "check_harmonic_am_convex",
    "check_am_convex",
    "check_bridge_inequality",
    "compose_g",
    "check_compose_equivalence",
]


@dataclass(frozen=True)
class ConvexityParams:
    """The weight pair (alpha, m) with alpha in [0, 1] and m in (0, 1]."""

    alpha: float
    m: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "m", float(self.m))
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if not 0.0 < self.m <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m!r}")


@dataclass(frozen=True)
class SampleScheme:
    """Sampling plan: full (x, y, t) tensor grid plus seeded random triples.

    ``slack`` is a relative float-noise allowance: a sample only counts as a
    violation when margin < -slack * max(1, |lhs|, |rhs|), so roundoff cannot
    produce spurious counterexamples.
    """

    grid_density: int = 33
    random_count: int = 10000
    seed: int = 0
    slack: float = 1e-12

    def __post_init__(self):
        if self.grid_density < 3:
            raise DomainError("grid_density must be at least 3")
        if self.random_count < 0:
            raise DomainError("random_count must be nonnegative")
        if self.slack < 0.0:
            raise DomainError("slack must be nonnegative")


def harmonic_am_point(x, y, t, m: float = 1.0):
    """The weighted harmonic interpolant m*x*y / (m*t*y + (1-t)*x).

    Algebraically identical to (t/x + (1-t)/(m*y))**-1; the product form
    avoids spurious overflow for tiny x. Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    _validate_point_args(x, y, t, m)
    out = m * x * y / (m * t * y + (1.0 - t) * x)
    return float(out) if out.ndim == 0 else out


def am_point(x, y, t, m: float = 1.0):
    """The scaled affine combination t*x + m*(1-t)*y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    _validate_point_args(x, y, t, m)
    out = t * x + m * (1.0 - t) * y
    return float(out) if out.ndim == 0 else out


def bridge_margin(x, y, t, m=1.0):
    """Margin of the interpolant comparison: am_point - harmonic_am_point.

    Nonnegative for all admissible inputs; equals t*(1-t)*(x - m*y)**2
    divided by the harmonic denominator, hence zero exactly when t is an
    endpoint or x = m*y.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    m = np.asarray(m, dtype=float)
    out = (t * x + m * (1.0 - t) * y) - m * x * y / (m * t * y + (1.0 - t) * x)
    return float(out) if out.ndim == 0 else out


def _validate_point_args(x, y, t, m):
    if not (np.all(x > 0.0) and np.all(y > 0.0)):
        raise DomainError("x and y must be positive")
    if not (np.all(t >= 0.0) and np.all(t <= 1.0)):
        raise DomainError("t must lie in [0, 1]")
    if not 0.0 < float(m) <= 1.0:
        raise DomainError(f"m must lie in (0, 1], got {m!r}")


def _axis_samples(window: Interval, n: int) -> np.ndarray:
    """n grid points across the window, insetting any open endpoint."""
    step = (window.hi - window.lo) / (n + 1)
    lo = window.lo + step if window.lo_open else window.lo
    hi = window.hi - step if window.hi_open else window.hi
    return np.linspace(lo, hi, n)


def _resolve_window(f: RealFunction, window) -> Interval:
    if window is None:
        if not f.domain.bounded:
            raise DomainError(
                f"{f.name} has an unbounded domain; pass an explicit sampling window"
            )
        return f.domain
    if isinstance(window, Interval):
        return window
    lo, hi = window
    return Interval(lo, hi, lo_open=False, hi_open=False)


def _build_samples(window: Interval, scheme: SampleScheme):
    axis = _axis_samples(window, scheme.grid_density)
    ts = np.linspace(0.0, 1.0, scheme.grid_density)
    X, Y, T = np.meshgrid(axis, axis, ts, indexing="ij")
    xs, ys, tts = X.ravel(), Y.ravel(), T.ravel()
    if scheme.random_count:
        rng = np.random.default_rng(scheme.seed)
        lo, hi = axis[0], axis[-1]
        xs = np.concatenate([xs, rng.uniform(lo, hi, scheme.random_count)])
        ys = np.concatenate([ys, rng.uniform(lo, hi, scheme.random_count)])
        tts = np.concatenate([tts, rng.uniform(0.0, 1.0, scheme.random_count)])
    return xs, ys, tts


def _check_sampled(
    statement_id: str,
    point_map,
    point_label: str,
    f: RealFunction,
    params: ConvexityParams,
    scheme: SampleScheme,
    window,
    skip_out_of_domain: bool,
) -> VerificationReport:
    win = _resolve_window(f, window)
    xs, ys, ts = _build_samples(win, scheme)
    pts = point_map(xs, ys, ts, params.m)

    mask = np.ones(xs.shape, dtype=bool)
    skipped = 0
    for label, arr in ((point_label, pts), ("x sample", xs), ("y sample", ys)):
        inside = f.domain.mask(arr)
        if skip_out_of_domain:
            mask &= inside
        elif not inside.all():
            bad = arr[np.flatnonzero(~inside)[0]]
            raise DomainError(
                f"{label} {float(bad)!r} falls outside the domain of {f.name}"
            )
    if skip_out_of_domain:
        skipped = int(xs.size - mask.sum())
        if not mask.any():
            raise DomainError("every sample was outside the domain; widen the window")
        xs, ys, ts, pts = xs[mask], ys[mask], ts[mask], pts[mask]

    lhs = np.asarray(f.eval(pts), dtype=float)
    talpha = ts**params.alpha
    rhs = talpha * np.asarray(f.eval(xs), dtype=float) + params.m * (1.0 - talpha) * np.asarray(
        f.eval(ys), dtype=float
    )
    margins = rhs - lhs
    allowance = scheme.slack * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    violations = margins < -allowance

    worst = int(np.argmin(margins))
    counterexample = None
    if violations.any():
        worst = int(np.argmin(margins + allowance))
        counterexample = {
            "x": float(xs[worst]),
            "y": float(ys[worst]),
            "t": float(ts[worst]),
            "lhs": float(lhs[worst]),
            "rhs": float(rhs[worst]),
            "margin": float(margins[worst]),
        }

    notes = [
        f"samples evaluated: {xs.size}",
        "no violation found" if counterexample is None else f"violations: {int(violations.sum())}",
    ]
    if skipped:
        notes.append(f"samples skipped outside domain: {skipped}")
    inputs = {
        "function": f.name,
        "alpha": params.alpha,
        "m": params.m,
        "window": [win.lo, win.hi],
        "window_open": [win.lo_open, win.hi_open],
        "grid_density": scheme.grid_density,
        "random_count": scheme.random_count,
        "seed": scheme.seed,
        "slack": scheme.slack,
    }
    return VerificationReport.from_sides(
        statement_id,
        lhs=float(lhs[worst]),
        rhs=float(rhs[worst]),
        tolerance=float(allowance[worst]),
        inputs=inputs,
        notes=notes,
        counterexample=counterexample,
    )


def check_harmonic_am_convex(
    f: RealFunction,
    params: ConvexityParams,
    scheme: SampleScheme = SampleScheme(),
    window=None,
    skip_out_of_domain: bool = False,
) -> VerificationReport:
    """Falsification check of f(harmonic point) <= t^a f(x) + m (1 - t^a) f(y).

    Samples (x, y) from the window (default: the function's own bounded
    domain) and t from [0, 1]. Any evaluation point outside the function's
    domain raises DomainError naming the point, unless skip_out_of_domain
    is set, in which case those samples are dropped and counted.
    """
    return _check_sampled(
        "harmonic-am-convexity",
        lambda x, y, t, m: m * x * y / (m * t * y + (1.0 - t) * x),
        "harmonic combination point",
        f,
        params,
        scheme,
        window,
        skip_out_of_domain,
    )


def check_am_convex(
    f: RealFunction,
    params: ConvexityParams,
    scheme: SampleScheme = SampleScheme(),
    window=None,
    skip_out_of_domain: bool = False,
) -> VerificationReport:
    """Falsification check of f(t x + m (1-t) y) <= t^a f(x) + m (1 - t^a) f(y)."""
    return _check_sampled(
        "am-convexity",
        lambda x, y, t, m: t * x + m * (1.0 - t) * y,
        "affine combination point",
        f,
        params,
        scheme,
        window,
        skip_out_of_domain,
    )


def check_bridge_inequality(
    x: float, y: float, t: float, m: float = 1.0, slack: float = 1e-12
) -> VerificationReport:
    """Pointwise comparison: harmonic interpolant <= scaled affine interpolant.

    This is a theorem, so holds is expected true for every admissible input;
    the report exists to expose the margin as a standing property check.
    """
    lhs = harmonic_am_point(x, y, t, m)
    rhs = am_point(x, y, t, m)
    tolerance = slack * max(1.0, abs(lhs), abs(rhs))
    return VerificationReport.from_sides(
        "eq-2-0",
        lhs=lhs,
        rhs=rhs,
        tolerance=tolerance,
        inputs={"x": float(x), "y": float(y), "t": float(t), "m": float(m), "slack": slack},
    )


def compose_g(f: RealFunction, a: float, b: float, m: float = 1.0) -> RealFunction:
    """Compose f with g(x) = m*a*b / (a + m*b - x) on [a, m*b].

    g maps [a, m*b] onto itself with fixed endpoints (g(a) = a and
    g(m*b) = m*b) and carries affine combinations of (a, b) onto the
    harmonic combinations used by check_harmonic_am_convex, so convexity
    checks of the composition mirror harmonic convexity checks of f.
    """
    a = float(a)
    b = float(b)
    m = float(m)
    if not 0.0 < m <= 1.0:
        raise DomainError(f"m must lie in (0, 1], got {m!r}")
    if not 0.0 < a < m * b:
        raise DomainError(f"compose_g needs 0 < a < m*b, got a={a!r}, m*b={m * b!r}")
    if not (f.domain.contains(a) and f.domain.contains(m * b)):
        raise DomainError(f"[a, m*b] = [{a!r}, {m * b!r}] must lie inside the domain of {f.name}")

    scale = m * a * b
    shift = a + m * b

    def g(x):
        return scale / (shift - np.asarray(x, dtype=float))

    def ev(x):
        return f.eval(g(x))

    deriv = None
    if f.has_derivative:

        def deriv(x):
            x = np.asarray(x, dtype=float)
            gx = scale / (shift - x)
            return f.derivative(gx) * scale / (shift - x) ** 2

    return RealFunction(
        f"compose_g({f.name},a={a:g},b={b:g},m={m:g})",
        ev,
        deriv,
        Interval(a, m * b, lo_open=False, hi_open=False),
        f.params + (a, b, m),
    )


def check_compose_equivalence(
    f: RealFunction,
    a: float,
    b: float,
    m: float,
    params: ConvexityParams,
    scheme: SampleScheme = SampleScheme(grid_density=9, random_count=256),
) -> tuple[VerificationReport, VerificationReport]:
    """Matched-sample pair: harmonic check of f vs affine check of f composed with g.

    Both checks run over the window [a, m*b] with the same scheme. The
    harmonic side needs f defined down to m*a (harmonic combination points
    dip below the window when m < 1); the affine side skips combination
    points that leave the composition's domain and counts them in notes.
    Returns (harmonic_report, composed_report).
    """
    fg = compose_g(f, a, b, m)
    window = Interval(a, m * b, lo_open=False, hi_open=False)
    harm = check_harmonic_am_convex(f, params, scheme, window=window)
    am = check_am_convex(fg, params, scheme, window=window, skip_out_of_domain=True)
    return harm, am
