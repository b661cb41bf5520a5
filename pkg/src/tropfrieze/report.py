"""Per-item check results shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class CheckItem:
    name: str
    status: str
    detail: str = ""
    data: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        return f"{self.status:<7} {self.name}" + (f"  {self.detail}" if self.detail else "")


def any_failed(items: Iterable[CheckItem]) -> bool:
    return any(it.status == FAIL for it in items)


def summarize(items: Iterable[CheckItem]) -> str:
    items = list(items)
    counts = {s: sum(it.status == s for it in items) for s in (PASS, FAIL, SKIPPED)}
    return f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped"
