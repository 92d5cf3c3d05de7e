"""Seeded parameter sweeps over the statement evaluators.

Tuples are drawn by rejection sampling from per-parameter ranges with a
fixed seed, so the row sequence (and therefore the serialized artifact) is
byte-identical across runs with the same configuration. On a bound
violation a shrinking pass walks the tuple toward a passing neighbor,
halving one coordinate distance at a time while the violation persists, and
the minimized counterexample is appended to the artifact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import inequalities as ineq
from . import means
from .convexity import SampleScheme
from .errors import DomainError, HarmconvexError
from .functions import RealFunction, resolve
from .reports import VerificationReport

__all__ = ["SweepConfig", "SweepResult", "run_sweep", "SWEEPABLE_STATEMENTS"]

SWEEPABLE_STATEMENTS = (
    "eq-1-1",
    "eq-1-4",
    "lemma-1-1",
    "thm-2.2",
    "thm-2.3",
    "thm-2.4",
    "thm-2.5",
    "prop-3.1",
    "prop-3.2",
    "prop-3.3",
    "prop-3.4",
)

_PROP_STATEMENTS = ("prop-3.1", "prop-3.2", "prop-3.3", "prop-3.4")

_REJECTION_CAP = 1000

CSV_COLUMNS = (
    "index",
    "statement_id",
    "function",
    "a",
    "b",
    "alpha",
    "m",
    "q",
    "lhs",
    "rhs",
    "margin",
    "holds",
    "status",
)


@dataclass(frozen=True)
class SweepConfig:
    """Reproducible sweep plan.

    ``ranges`` are closed intervals per parameter; a < b is enforced by
    rejection (capped at 1000 retries per tuple). ``statements`` and
    ``functions`` are evaluated as a full cross product per tuple index.
    """

    seed: int = 0
    count: int = 100
    statements: tuple[str, ...] = ("thm-2.3",)
    functions: tuple[str, ...] = ("pow:0.5",)
    a_range: tuple[float, float] = (0.5, 2.0)
    b_range: tuple[float, float] = (1.0, 4.0)
    alpha_range: tuple[float, float] = (0.0, 1.0)
    m_range: tuple[float, float] = (0.25, 1.0)
    q_range: tuple[float, float] = (1.0, 3.0)
    tolerance: float = 1e-9
    check_hypothesis: bool = False
    hypothesis_scheme: SampleScheme = field(
        default_factory=lambda: SampleScheme(grid_density=9, random_count=64, seed=0)
    )

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("sweep count must be at least 1")
        unknown = [s for s in self.statements if s not in SWEEPABLE_STATEMENTS]
        if unknown:
            raise DomainError(f"unknown statements {unknown!r}; expected among {SWEEPABLE_STATEMENTS}")
        for name, (lo, hi) in (
            ("a", self.a_range),
            ("b", self.b_range),
            ("alpha", self.alpha_range),
            ("m", self.m_range),
            ("q", self.q_range),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise DomainError(f"{name}_range must be a finite closed interval, got ({lo!r}, {hi!r})")
        if not (0.0 <= self.alpha_range[0] and self.alpha_range[1] <= 1.0):
            raise DomainError("alpha_range must sit inside [0, 1]")
        if not (0.0 < self.m_range[0] and self.m_range[1] <= 1.0):
            raise DomainError("m_range must sit inside (0, 1]")
        if self.a_range[0] <= 0.0:
            raise DomainError("a_range must be positive")
        if self.q_range[0] < 1.0:
            raise DomainError("q_range must start at 1 or above")


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list[dict]
    counterexamples: list[dict]

    @property
    def violations(self) -> int:
        return sum(1 for r in self.rows if r["status"] == "violated")

    @property
    def errors(self) -> int:
        return sum(1 for r in self.rows if r["status"].startswith("error"))

    @property
    def exit_code(self) -> int:
        if self.violations:
            return 1
        return 2 if self.errors else 0


def _statement_needs(statement: str) -> dict:
    needs_q = statement in ("thm-2.3", "thm-2.4", "thm-2.5", "prop-3.2", "prop-3.3", "prop-3.4")
    return {
        "fn": statement not in _PROP_STATEMENTS,
        "alpha": statement in ("thm-2.2", "thm-2.3", "thm-2.4", "thm-2.5") or statement in _PROP_STATEMENTS,
        "m": statement in ("thm-2.2", "thm-2.3", "thm-2.4", "thm-2.5"),
        "q": needs_q,
        "strict_q": statement in ("thm-2.5", "prop-3.4"),
        "open_alpha": statement in _PROP_STATEMENTS,
    }


def _draw_tuple(rng: np.random.Generator, cfg: SweepConfig, needs: dict) -> dict:
    for _ in range(_REJECTION_CAP):
        a = rng.uniform(*cfg.a_range)
        b = rng.uniform(*cfg.b_range)
        alpha = rng.uniform(*cfg.alpha_range)
        m = rng.uniform(*cfg.m_range)
        q = rng.uniform(*cfg.q_range)
        if not a < b:
            continue
        if needs["strict_q"] and not q > 1.0:
            continue
        if needs["open_alpha"] and not 0.0 < alpha < 1.0:
            continue
        return {"a": a, "b": b, "alpha": alpha, "m": m, "q": q}
    raise DomainError(
        f"rejection sampling failed to produce an admissible tuple within {_REJECTION_CAP} draws"
    )


def evaluate_statement(
    statement: str,
    f: RealFunction | None,
    a: float,
    b: float,
    alpha: float = 1.0,
    m: float = 1.0,
    q: float = 1.0,
    p: float | None = None,
    tolerance: float = 1e-9,
) -> VerificationReport:
    """Dispatch one statement evaluation; props ignore the function."""
    if statement == "eq-1-1":
        return ineq.check_classical_hh(f, a, b, tolerance)
    if statement == "eq-1-4":
        return ineq.check_hh_harmonic(f, a, b, tolerance)
    if statement == "lemma-1-1":
        return ineq.check_lemma11(f, a, b, tolerance)
    if statement == "thm-2.2":
        return ineq.check_thm22(f, a, b, alpha, m, tolerance)
    if statement == "thm-2.3":
        return ineq.check_thm23(f, a, b, alpha, m, q, tolerance)
    if statement == "thm-2.4":
        return ineq.check_thm24(f, a, b, alpha, m, q, tolerance)
    if statement == "thm-2.5":
        return ineq.check_thm25(f, a, b, alpha, m, q, tolerance)
    if statement == "prop-3.1":
        return means.check_prop31(a, b, alpha, tolerance)
    if statement == "prop-3.2":
        return means.check_prop32(a, b, alpha, q, tolerance)
    if statement == "prop-3.3":
        return means.check_prop33(a, b, alpha, q, tolerance)
    if statement == "prop-3.4":
        return means.check_prop34(a, b, alpha, q, p, tolerance)
    raise DomainError(f"unknown statement {statement!r}")


_HYPOTHESIS_STATEMENTS = ("eq-1-1", "eq-1-4", "thm-2.2", "thm-2.3", "thm-2.4", "thm-2.5")


def _evaluate_row(cfg: SweepConfig, statement: str, fn_name: str | None, tup: dict, seed: int):
    f = resolve(fn_name) if fn_name else None
    status = "holds"
    hypothesis_ok = None
    if cfg.check_hypothesis and statement in _HYPOTHESIS_STATEMENTS and f is not None:
        scheme = replace(cfg.hypothesis_scheme, seed=seed)
        hyp = ineq.check_hypothesis(
            statement, f, tup["a"], tup["b"], tup["alpha"], tup["m"], tup["q"], scheme
        )
        hypothesis_ok = hyp.holds
    report = evaluate_statement(
        statement, f, tup["a"], tup["b"], tup["alpha"], tup["m"], tup["q"], tolerance=cfg.tolerance
    )
    if hypothesis_ok is False:
        status = "hypothesis-failed"
    elif not report.holds:
        status = "violated"
    return report, status


def _shrink(cfg, statement, fn_name, violating: dict, anchor: dict) -> dict:
    """Halve each coordinate's distance to the passing anchor while the
    violation persists; stop when no halving move keeps it violating."""

    def violates(tup):
        try:
            report, _ = _evaluate_row(replace(cfg, check_hypothesis=False), statement, fn_name, tup, 0)
        except HarmconvexError:
            return None
        return None if report.holds else report

    current = dict(violating)
    for _ in range(200):
        moved = False
        for key in ("a", "b", "alpha", "m", "q"):
            dist = anchor[key] - current[key]
            if abs(dist) <= 1e-12 * max(1.0, abs(anchor[key])):
                continue
            candidate = dict(current)
            candidate[key] = current[key] + 0.5 * dist
            if candidate["a"] >= candidate["b"]:
                continue
            if violates(candidate) is not None:
                current = candidate
                moved = True
        if not moved:
            break
    report = violates(current)
    out = {"statement_id": statement, "function": fn_name, **current}
    if report is not None:
        out.update({"lhs": report.lhs, "rhs": report.rhs, "margin": report.margin})
    return out


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Execute the sweep: one row per (statement, function, tuple index)."""
    rows: list[dict] = []
    counterexamples: list[dict] = []
    first_passing: dict | None = None
    for statement in cfg.statements:
        needs = _statement_needs(statement)
        rng = np.random.default_rng(cfg.seed)
        tuples = [_draw_tuple(rng, cfg, needs) for _ in range(cfg.count)]
        fn_names = cfg.functions if needs["fn"] else (None,)
        for fn_name in fn_names:
            for idx, tup in enumerate(tuples):
                try:
                    report, status = _evaluate_row(cfg, statement, fn_name, tup, cfg.seed + idx)
                except HarmconvexError as exc:
                    rows.append(
                        {
                            "index": idx,
                            "statement_id": statement,
                            "function": fn_name or "",
                            **tup,
                            "lhs": math.nan,
                            "rhs": math.nan,
                            "margin": math.nan,
                            "holds": False,
                            "status": f"error: {exc}",
                        }
                    )
                    continue
                row = {
                    "index": idx,
                    "statement_id": statement,
                    "function": fn_name or "",
                    **tup,
                    "lhs": report.lhs,
                    "rhs": report.rhs,
                    "margin": report.margin,
                    "holds": report.holds,
                    "status": status,
                }
                rows.append(row)
                if status == "holds" and first_passing is None:
                    first_passing = {"statement": statement, "fn": fn_name, "tuple": dict(tup)}
                if status == "violated":
                    anchor = None
                    if first_passing and first_passing["statement"] == statement:
                        anchor = first_passing["tuple"]
                    if anchor is None:
                        anchor = next(
                            (
                                {k: r[k] for k in ("a", "b", "alpha", "m", "q")}
                                for r in rows
                                if r["statement_id"] == statement and r["status"] == "holds"
                            ),
                            None,
                        )
                    if anchor is not None:
                        counterexamples.append(_shrink(cfg, statement, fn_name, tup, anchor))
                    else:
                        counterexamples.append(
                            {"statement_id": statement, "function": fn_name, **tup, "note": "no passing neighbor found"}
                        )
    return SweepResult(cfg, rows, counterexamples)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def to_csv_bytes(result: SweepResult) -> bytes:
    lines = [",".join(CSV_COLUMNS)]
    for row in result.rows:
        lines.append(",".join(_fmt(row[c]) for c in CSV_COLUMNS))
    for ce in result.counterexamples:
        lines.append("# minimized-counterexample: " + json.dumps(ce, sort_keys=True))
    return ("\n".join(lines) + "\n").encode("utf-8")


def to_json_bytes(result: SweepResult) -> bytes:
    cfg = result.config
    doc = {
        "config": {
            "seed": cfg.seed,
            "count": cfg.count,
            "statements": list(cfg.statements),
            "functions": list(cfg.functions),
            "a_range": list(cfg.a_range),
            "b_range": list(cfg.b_range),
            "alpha_range": list(cfg.alpha_range),
            "m_range": list(cfg.m_range),
            "q_range": list(cfg.q_range),
            "tolerance": cfg.tolerance,
            "check_hypothesis": cfg.check_hypothesis,
        },
        "rows": result.rows,
        "counterexamples": result.counterexamples,
        "violations": result.violations,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
