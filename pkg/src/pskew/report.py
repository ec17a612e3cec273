"""Result records shared by the analysis modules and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .groups import FreeWord


@dataclass(frozen=True)
class Finding:
    """A yes/no answer that carries a witness when the answer is no."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


class OracleInfeasible(RuntimeError):
    """Raised when exhaustive enumeration would exceed the element budget."""

    def __init__(self, size: int, budget: int):
        super().__init__(f"enumeration of {size} elements exceeds budget {budget}")
        self.size = size
        self.budget = budget


AGREE = "agree"
DISAGREE = "disagree"
SKIPPED = "skipped"


@dataclass
class Agreement:
    """Outcome of comparing a structural criterion with a brute-force oracle."""

    name: str
    status: str
    lhs: Any = None
    rhs: Any = None
    reason: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != DISAGREE

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status}
        if self.status != SKIPPED:
            out["lhs"] = jsonable(self.lhs)
            out["rhs"] = jsonable(self.rhs)
        if self.reason:
            out["reason"] = self.reason
        if self.details:
            out["details"] = jsonable(self.details)
        return out


def jsonable(x: Any) -> Any:
    """Best-effort conversion of witnesses into JSON-friendly values, deterministically ordered."""
    if isinstance(x, Finding):
        d: dict[str, Any] = {"holds": x.holds}
        if x.witness is not None:
            d["witness"] = jsonable(x.witness)
        return d
    if isinstance(x, FreeWord):
        return str(x)
    if isinstance(x, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=lambda v: (str(type(v)), str(v)))
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)
