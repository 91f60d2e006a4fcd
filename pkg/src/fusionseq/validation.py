"""Machine-readable validation reports shared by rings, modules,
groups, and sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidDataError


@dataclass(frozen=True)
class Violation:
    code: str
    where: tuple
    message: str

    def to_json(self):
        return {
            "code": self.code,
            "where": list(self.where),
            "message": self.message,
        }


@dataclass
class ValidationReport:
    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, where: tuple, message: str):
        self.violations.append(Violation(code, tuple(where), message))

    def raise_if_invalid(self):
        if not self.ok:
            first = self.violations[0]
            raise InvalidDataError(
                f"invalid {self.subject}: {first.code} at {first.where}: "
                f"{first.message} ({len(self.violations)} violation(s) total)",
                report=self,
            )

    def to_json(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }
