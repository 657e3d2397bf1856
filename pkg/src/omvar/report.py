"""Pass/fail records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    claim: str
    passed: bool
    witnesses: list[Any] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"claim": self.claim, "status": self.status, "witnesses": self.witnesses}
        if self.details:
            out["details"] = self.details
        return out

    def __bool__(self) -> bool:
        return self.passed
