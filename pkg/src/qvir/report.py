"""Deterministic machine-readable run reports.

A report is one JSON object with the kernel version, the echoed
configuration, the per-check records sorted by (suite, name, params) and the
summary counts.  Serialized bytes are identical across repeated runs with the
same configuration: volatile per-check wall times are zeroed in the file (the
live values stay on the in-memory records and are surfaced on the console).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    suite: str
    name: str
    params: str
    status: str  # "pass" or "fail"
    witness: str = ""
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self):
        return (self.suite, self.name, self.params)


@dataclass
class Report:
    kernel_version: str
    config: dict
    checks: list = field(default_factory=list)

    def summary(self) -> dict:
        passed = sum(1 for c in self.checks if c.passed)
        return {
            "total": len(self.checks),
            "passed": passed,
            "failed": len(self.checks) - passed,
        }

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def build_report(version: str, config: dict, checks) -> Report:
    ordered = sorted(checks, key=CheckResult.sort_key)
    return Report(kernel_version=version, config=config, checks=ordered)


def render_report(report: Report) -> str:
    payload = {
        "kernel_version": report.kernel_version,
        "config": report.config,
        "checks": [
            {
                "suite": c.suite,
                "name": c.name,
                "params": c.params,
                "status": c.status,
                "witness": c.witness,
                "elapsed_ms": 0.0,
            }
            for c in report.checks
        ],
        "summary": report.summary(),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_report(report: Report, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_report(report))
