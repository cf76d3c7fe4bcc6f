"""Named pass/fail checks collected by the figure and selftest commands."""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class CheckReport:
    title: str
    checks: List[Check] = field(default_factory=list)
    files: List[Path] = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str) -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        status = "✅" if passed else "❌"
        logger.info("%s [%s] %s: %s", status, self.title, name, detail)
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]
