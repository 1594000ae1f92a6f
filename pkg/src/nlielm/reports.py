"""Check reports: named checks with counts and witnesses, text and JSON output.

Witness argument tuples are stored 0-based and rendered 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .exactlinalg import format_rational

MAX_WITNESSES = 5


@dataclass
class Witness:
    args: tuple
    residual: tuple  # dense exact vector

    def as_dict(self) -> Dict[str, Any]:
        return {"args": _one_based(self.args), "residual": [format_rational(x) for x in self.residual]}


def _one_based(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return obj + 1
    if isinstance(obj, (tuple, list)):
        return [_one_based(x) for x in obj]
    if isinstance(obj, str):
        return obj
    raise TypeError(f"cannot render witness component {obj!r}")


@dataclass
class Check:
    """Outcome of one named identity checked over many basis instances."""

    name: str
    tested: int = 0
    violations: int = 0
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, args, residual: Sequence) -> bool:
        """Count one instance; returns True when the residual is zero."""
        self.tested += 1
        if any(x != 0 for x in residual):
            self.violations += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(Witness(tuple(args), tuple(residual)))
            return False
        return True

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "tested": self.tested,
            "violations": self.violations,
            "witnesses": [w.as_dict() for w in self.witnesses],
        }


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def check(self, name: str) -> Check:
        """Get or create the check called ``name``."""
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name)
        self.checks.append(c)
        return c

    def get(self, name: str) -> Optional[Check]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            c2 = Check(prefix + c.name, c.tested, c.violations, list(c.witnesses))
            self.checks.append(c2)
        self.notes.extend(other.notes)
        return self

    def as_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name}: {c.tested} tested, {c.violations} violations")
            for w in c.witnesses:
                d = w.as_dict()
                lines.append(f"      at {d['args']}: residual {d['residual']}")
        for key in sorted(self.data):
            lines.append(f"  {key}: {json.dumps(self.data[key], sort_keys=True)}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()
