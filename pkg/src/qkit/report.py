"""Structured check reports, one JSON object per line."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

OK = "ok"
VIOLATED = "violated"
FOUND = "found"
NOT_FOUND = "not-found"


@dataclass
class CheckResult:
    check: str
    instance: str
    status: str
    witness: Any = None
    cases: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("witness", "cases"):
            if d[key] is None:
                del d[key]
        return d


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, instance: str, ok: bool, witness: Any = None, cases: int | None = None) -> bool:
        status = OK if ok else VIOLATED
        self.results.append(CheckResult(check, instance, status, None if ok else witness, cases))
        return ok

    def record(self, check: str, instance: str, status: str, witness: Any = None) -> None:
        self.results.append(CheckResult(check, instance, status, witness))

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def violations(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == VIOLATED]

    def by_check(self, check: str) -> list[CheckResult]:
        return [r for r in self.results if r.check == check]

    def summary(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(r.to_dict(), sort_keys=True, default=str) for r in self.results)
