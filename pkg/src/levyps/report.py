"""Check records and the run report.

A record normalizes every check to one comparison: pass if and only if
statistic <= tolerance.  Monte Carlo checks put the error/stderr ratio in
the statistic and the sigma budget in the tolerance; deterministic checks
compare raw errors.  The identity field names the mathematical statement
being verified, so a report line is readable on its own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check: str
    identity: str
    statistic: float
    tolerance: float
    stderr: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "statistic", float(self.statistic))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        if self.stderr is not None:
            object.__setattr__(self, "stderr", float(self.stderr))

    @property
    def passed(self) -> bool:
        return bool(self.statistic <= self.tolerance)

    def format_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = "" if self.stderr is None else f" stderr={self.stderr:.3e}"
        return (
            f"[{verdict}] {self.suite}/{self.check}: statistic={self.statistic:.6e} "
            f"tolerance={self.tolerance:.6e}{extra} ({self.identity})"
        )


@dataclass
class Report:
    config_text: str
    records: list[CheckRecord] = field(default_factory=list)
    wall_clock_sec: float = 0.0

    def extend(self, records) -> None:
        self.records.extend(records)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def summary(self) -> dict:
        passed = sum(r.passed for r in self.records)
        return {"total": len(self.records), "passed": passed, "failed": len(self.records) - passed}

    def to_json(self) -> str:
        payload = {
            "config": self.config_text,
            "records": [dict(asdict(r), passed=r.passed) for r in self.records],
            "summary": self.summary(),
            "wall_clock_sec": self.wall_clock_sec,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def ratio_statistic(diff: float, stderr: float) -> float:
    """Error/stderr ratio, treating an exact hit on a degenerate spread as 0."""
    if stderr == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / stderr
