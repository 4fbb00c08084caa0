"""Structured check reports with deterministic text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace


@dataclass
class CheckResult:
    """Outcome of one property check. ``passed is None`` means skipped."""

    name: str
    passed: bool | None
    checked: int = 0
    violations: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed is None:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "checked": self.checked,
                "violations": [list(v) for v in self.violations],
                "witnesses": [list(w) for w in self.witnesses], "detail": self.detail}


@dataclass
class Report:
    title: str
    window: int | None = None
    results: list[CheckResult] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, other: Report, prefix: str | None = None) -> None:
        for r in other.results:
            self.results.append(replace(r, name=f"{prefix}: {r.name}") if prefix else r)
        self.lines.extend(other.lines)

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def result(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"title": self.title, "window": self.window, "passed": self.passed,
                "results": [r.to_dict() for r in self.results], "lines": list(self.lines)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)

    def to_text(self, max_items: int = 5) -> str:
        out = [self.title, f"window: max degree {self.window}" if self.window is not None
               else "window: unbounded"]
        width = max((len(r.name) for r in self.results), default=0)
        for r in self.results:
            line = f"  [{r.status}] {r.name.ljust(width)}  checked={r.checked}"
            if r.detail:
                line += f"  {r.detail}"
            out.append(line)
            for v in r.violations[:max_items]:
                out.append(f"      violation: {' | '.join(map(str, v))}")
            for w in r.witnesses[:max_items]:
                out.append(f"      witness: {' | '.join(map(str, w))}")
        out.extend(self.lines)
        out.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(out)
