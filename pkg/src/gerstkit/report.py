"""Verification reports shared by every suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = 1


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    trials: int = 0
    witness: str | None = None
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "trials": self.trials}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    suite: str
    seed: int = 0
    checks: list[Check] = field(default_factory=list)
    elapsed: float | None = None

    def ok(self, name: str, trials: int = 0, detail: str | None = None) -> None:
        self.checks.append(Check(name, "pass", trials, detail=detail))

    def fail(self, name: str, trials: int = 0, witness: str | None = None,
             detail: str | None = None) -> None:
        self.checks.append(Check(name, "fail", trials, witness, detail))

    def skip(self, name: str, detail: str | None = None) -> None:
        self.checks.append(Check(name, "skipped", detail=detail))

    def record(self, name: str, passed: bool, trials: int = 0, witness: str | None = None,
               detail: str | None = None) -> None:
        if passed:
            self.ok(name, trials, detail)
        else:
            self.fail(name, trials, witness, detail)

    def extend(self, other: "Report", prefix: str | None = None) -> None:
        for c in other.checks:
            name = f"{prefix}/{c.name}" if prefix else c.name
            self.checks.append(Check(name, c.status, c.trials, c.witness, c.detail))

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def status(self, name: str) -> str:
        return self[name].status

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "counts": {s: sum(c.status == s for c in self.checks)
                       for s in ("pass", "fail", "skipped")},
            "checks": [c.to_dict() for c in self.checks],
        }
        if timing and self.elapsed is not None:
            d["elapsed_s"] = round(self.elapsed, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self, timing: bool = False) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for c in self.checks:
            line = f"  [{c.status.upper():>7}] {c.name}"
            if c.trials:
                line += f"  ({c.trials} samples)"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
            if c.witness:
                lines.append(f"            witness: {c.witness}")
        verdict = "PASS" if self.passed else "FAIL"
        tail = f"{verdict}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks ok"
        if timing and self.elapsed is not None:
            tail += f" in {self.elapsed:.2f}s"
        lines.append(tail)
        return "\n".join(lines)


@dataclass
class Verdict:
    """Truthy outcome of one sampled identity, with the first failing tuple."""

    ok: bool
    witness: str | None = None
    trials: int = 0
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def into(self, report: Report, name: str) -> "Verdict":
        report.record(name, self.ok, self.trials, self.witness, self.detail)
        return self
