"""Check records: one verified identity or inequality each."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of a single numerical check.

    For equality checks ``abs_discrepancy`` is ``|lhs - rhs|`` and the check
    passes iff it is at most ``tolerance``. For inequality checks
    (``kind == "inequality"``) it stores the worst slack over all tested
    points, and the check passes iff ``slack >= -tolerance``. ``"exact"``
    records come from rational arithmetic and ignore the tolerance.
    """

    name: str
    paper_anchor: str
    lhs: float
    rhs: float
    abs_discrepancy: float
    tolerance: float
    passed: bool
    kind: str = "equality"
    error: str | None = None

    @classmethod
    def equality(
        cls, name: str, anchor: str, lhs: float, rhs: float, tolerance: float
    ) -> CheckRecord:
        disc = abs(lhs - rhs)
        ok = math.isfinite(disc) and disc <= tolerance
        return cls(name, anchor, lhs, rhs, disc, tolerance, ok)

    @classmethod
    def inequality(
        cls,
        name: str,
        anchor: str,
        lhs: float,
        rhs: float,
        slack: float,
        tolerance: float,
    ) -> CheckRecord:
        ok = math.isfinite(slack) and slack >= -tolerance
        return cls(name, anchor, lhs, rhs, slack, tolerance, ok, kind="inequality")

    @classmethod
    def failure(
        cls, name: str, anchor: str, tolerance: float, error: str, kind: str = "equality"
    ) -> CheckRecord:
        nan = math.nan
        return cls(name, anchor, nan, nan, nan, tolerance, False, kind=kind, error=error)

    @classmethod
    def exact(cls, name: str, anchor: str, lhs: float, rhs: float, holds: bool) -> CheckRecord:
        """Outcome decided in exact arithmetic; tolerances do not apply."""
        return cls(name, anchor, lhs, rhs, abs(lhs - rhs), 0.0, holds, kind="exact")

    def with_tolerance(self, tolerance: float) -> CheckRecord:
        """Re-decide pass/fail under a different tolerance."""
        if self.kind == "exact":
            return self
        if self.error is not None:
            return CheckRecord.failure(self.name, self.paper_anchor, tolerance, self.error, self.kind)
        if self.kind == "inequality":
            return CheckRecord.inequality(
                self.name, self.paper_anchor, self.lhs, self.rhs, self.abs_discrepancy, tolerance
            )
        return CheckRecord.equality(self.name, self.paper_anchor, self.lhs, self.rhs, tolerance)

    def to_dict(self) -> dict[str, Any]:
        """JSON-safe mapping; non-finite numbers become ``None``."""

        def num(x: float) -> float | None:
            return x if math.isfinite(x) else None

        out: dict[str, Any] = {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "abs_discrepancy": num(self.abs_discrepancy),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        label = "slack" if self.kind == "inequality" else "|diff|"
        line = (
            f"{status}  {self.name:<32s} {label}={self.abs_discrepancy:.3e} "
            f"tol={self.tolerance:.1e}  lhs={self.lhs:.12g} rhs={self.rhs:.12g}"
        )
        if self.error:
            line += f"  [{self.error}]"
        return line
