"""Verification outcome records with a JSON form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

EXACT = "ExactEquality"
BOUND = "ValuationBound"


def congruence_mode(e: int) -> str:
    return f"CongruenceMod2e({e})"


@dataclass(frozen=True)
class Report:
    """Result of one check.

    ``order`` is the truncation order (or table size) actually examined.
    ``first_fail_index`` is a coefficient index for series checks and a
    (row, column) pair for table checks.
    """

    tag: str
    order: int
    mode: str
    passed: bool
    first_fail_index: int | tuple[int, ...] | None = None
    lhs_coeff: int | None = None
    rhs_coeff: int | None = None
    detail: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"tag": self.tag, "order": self.order,
                               "mode": self.mode, "pass": self.passed}
        if self.first_fail_index is not None:
            idx = self.first_fail_index
            out["first_fail_index"] = list(idx) if isinstance(idx, tuple) else idx
        if self.lhs_coeff is not None:
            out["lhs_coeff"] = self.lhs_coeff
        if self.rhs_coeff is not None:
            out["rhs_coeff"] = self.rhs_coeff
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Report":
        idx = data.get("first_fail_index")
        if isinstance(idx, list):
            idx = tuple(idx)
        return cls(tag=data["tag"], order=data["order"], mode=data["mode"],
                   passed=data["pass"], first_fail_index=idx,
                   lhs_coeff=data.get("lhs_coeff"), rhs_coeff=data.get("rhs_coeff"),
                   detail=data.get("detail"))

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{verdict} {self.tag} [{self.mode}] order={self.order}"
        if not self.passed:
            line += f" first_fail={self.first_fail_index}"
            if self.lhs_coeff is not None:
                line += f" lhs={self.lhs_coeff} rhs={self.rhs_coeff}"
        if self.detail:
            line += f" ({self.detail})"
        return line
