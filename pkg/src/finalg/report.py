"""Pass/fail reports shared by the law harnesses and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckItem:
    """One verified statement.  passed is None for a skipped check."""

    id: str
    anchor: str
    statement: str
    passed: bool | None
    witness: Any = None
    note: str = ""

    @property
    def verdict(self) -> str:
        if self.passed is None:
            return "skip"
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class Report:
    title: str
    items: tuple[CheckItem, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(item.passed is not False for item in self.items)

    @property
    def failures(self) -> tuple[CheckItem, ...]:
        return tuple(item for item in self.items if item.passed is False)

    def item(self, item_id: str) -> CheckItem:
        for it in self.items:
            if it.id == item_id:
                return it
        raise KeyError(f"no check item '{item_id}'")

    def merged(self, other: "Report") -> "Report":
        return Report(self.title, self.items + other.items)
