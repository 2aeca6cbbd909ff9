from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    ok: bool
    witness: Any = None
    skipped: bool = False


@dataclass
class VerificationReport:
    """Named pass/fail checks; a failing check carries an exact witness."""

    checks: dict[str, Check] = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness: Any = None) -> None:
        self.checks[name] = Check(ok, None if ok else witness)

    def skip(self, name: str) -> None:
        self.checks[name] = Check(True, None, skipped=True)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def failures(self) -> dict[str, Any]:
        return {name: c.witness for name, c in self.checks.items() if not c.ok}

    def first_failure(self) -> tuple[str, Any] | None:
        for name, c in self.checks.items():
            if not c.ok:
                return name, c.witness
        return None

    def merge(self, other: VerificationReport, prefix: str = "") -> None:
        for name, c in other.checks.items():
            self.checks[prefix + name] = c

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"ok": self.ok, "checks": {}}
        for name, c in self.checks.items():
            entry: dict[str, Any] = {"ok": c.ok}
            if c.skipped:
                entry["skipped"] = True
            if c.witness is not None:
                entry["witness"] = c.witness
            out["checks"][name] = entry
        return out
