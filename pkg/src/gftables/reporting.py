"""Pass/fail bookkeeping shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    ident: str  # stable identity id, e.g. "row-orthogonality"
    params: str
    ok: bool
    detail: str = ""
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.ok else "FAIL")
        msg = f"[{status}] {self.ident} {self.params}"
        if self.detail:
            msg += f" :: {self.detail}"
        return msg


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, ident: str, params: str, ok: bool, detail: str = "") -> Check:
        c = Check(ident, params, bool(ok), detail)
        self.checks.append(c)
        return c

    def skip(self, ident: str, params: str, reason: str) -> Check:
        c = Check(ident, params, True, reason, skipped=True)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if not c.skipped)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok and not c.skipped]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())
