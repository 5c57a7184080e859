"""Check reports: plain values describing what was verified and what failed.

A failed identity is a report outcome, never an exception. Reports carry the
degree/order bounds they were certified at, a list of failures with canonical
residual strings, and optional nested sub-reports for suites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    bounds: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    children: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(c.passed for c in self.children)

    def fail(self, where: str, residual: str = "", detail: str = "") -> None:
        entry = {"where": where}
        if residual:
            entry["residual"] = residual
        if detail:
            entry["detail"] = detail
        self.failures.append(entry)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def add(self, child: "CheckReport") -> "CheckReport":
        self.children.append(child)
        return child

    def require(self, ok: bool, where: str, residual: str = "", detail: str = "") -> bool:
        if not ok:
            self.fail(where, residual, detail)
        return ok

    def to_dict(self) -> dict:
        out = {
            "check": self.name,
            "passed": self.passed,
            "bounds": {k: self.bounds[k] for k in sorted(self.bounds)},
        }
        if self.failures:
            out["failures"] = self.failures
        if self.notes:
            out["notes"] = self.notes
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary_lines(self) -> list[str]:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"]
        for failure in self.failures:
            where = failure.get("where", "")
            residual = failure.get("residual", "")
            detail = failure.get("detail", "")
            msg = f"  at {where}"
            if residual:
                msg += f": residual {residual}"
            if detail:
                msg += f" ({detail})"
            lines.append(msg)
        for child in self.children:
            lines.extend("  " + line for line in child.summary_lines())
        return lines

    def __str__(self) -> str:
        return "\n".join(self.summary_lines())
