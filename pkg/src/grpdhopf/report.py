"""Small validation-report containers shared by the checkers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


@dataclass
class Report:
    """Outcome of a validation: ``ok`` iff there are no violations."""

    violations: list[Violation] = field(default_factory=list)
    warnings: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, axiom: str, witness: tuple, detail: str = ""):
        self.violations.append(Violation(axiom, tuple(witness), detail))

    def warn(self, axiom: str, witness: tuple, detail: str = ""):
        self.warnings.append(Violation(axiom, tuple(witness), detail))

    def axioms(self) -> list[str]:
        seen = []
        for v in self.violations:
            if v.axiom not in seen:
                seen.append(v.axiom)
        return seen

    def first(self, axiom: str | None = None) -> Violation | None:
        for v in self.violations:
            if axiom is None or v.axiom == axiom:
                return v
        return None

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "violations": [v.to_dict() for v in self.violations],
                "warnings": [v.to_dict() for v in self.warnings]}

    def __str__(self):
        if self.ok and not self.warnings:
            return "ok"
        lines = ["ok" if self.ok else "FAILED"]
        lines += [f"  {v.axiom}: witness {v.witness} {v.detail}".rstrip() for v in self.violations]
        lines += [f"  warning {v.axiom}: witness {v.witness} {v.detail}".rstrip() for v in self.warnings]
        return "\n".join(lines)
