"""Verification report record shared by all checkers and evaluators."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .errors import DomainError

__all__ = ["VerificationReport"]


def _plain(value: Any) -> Any:
    """Coerce numpy scalars and containers to JSON-stable builtins."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, str)) or value is None:
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return _plain(value.item())
    return float(value)


@dataclass
class VerificationReport:
    """Outcome of one inequality or identity check.

    ``margin`` is always rhs - lhs and ``holds`` is always equivalent to
    margin >= -tolerance. ``inputs`` echoes enough of the call to re-run the
    check bit-identically; ``counterexample`` is populated by sampling
    checkers when a violating sample exists.
    """

    statement_id: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    tolerance: float
    inputs: dict
    notes: list = field(default_factory=list)
    counterexample: dict | None = None

    def __post_init__(self):
        if not math.isclose(self.margin, self.rhs - self.lhs, rel_tol=0.0, abs_tol=1e-300) and not (
            math.isnan(self.margin) and math.isnan(self.rhs - self.lhs)
        ):
            raise DomainError("report margin must equal rhs - lhs")
        if self.holds != (self.margin >= -self.tolerance):
            raise DomainError("report holds flag inconsistent with margin and tolerance")

    @classmethod
    def from_sides(
        cls,
        statement_id: str,
        lhs: float,
        rhs: float,
        tolerance: float,
        inputs: Mapping,
        notes: Sequence = (),
        counterexample: Mapping | None = None,
    ) -> "VerificationReport":
        lhs = float(lhs)
        rhs = float(rhs)
        tolerance = float(tolerance)
        margin = rhs - lhs
        return cls(
            statement_id=statement_id,
            lhs=lhs,
            rhs=rhs,
            margin=margin,
            holds=margin >= -tolerance,
            tolerance=tolerance,
            inputs=_plain(dict(inputs)),
            notes=[_plain(n) for n in notes],
            counterexample=None if counterexample is None else _plain(dict(counterexample)),
        )

    def to_dict(self) -> dict:
        return {
            "statement_id": self.statement_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "tolerance": self.tolerance,
            "inputs": self.inputs,
            "notes": list(self.notes),
            "counterexample": self.counterexample,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)
