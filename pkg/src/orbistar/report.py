"""Machine-readable verification reports: per-check records with status
and witness data, canonical JSON emission (byte-identical for identical
inputs) and a plain-text table."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class CheckResult:
    name: str
    anchor: str          # which identity or table the check pins down
    status: str          # "pass" | "fail" | "skip"
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in ("pass", "fail", "skip"):
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class Report:
    scenario: dict
    checks: list = field(default_factory=list)

    def add(self, name: str, anchor: str, ok, witness: dict = None):
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        self.checks.append(CheckResult(name, anchor, status,
                                       to_jsonable(witness or {})))

    def skip(self, name: str, anchor: str, reason: str):
        self.checks.append(CheckResult(name, anchor, "skip",
                                       {"reason": reason}))

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for check in self.checks:
            out[check.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "checks": [
                {"name": c.name, "anchor": c.anchor, "status": c.status,
                 "witness": c.witness}
                for c in sorted(self.checks, key=lambda c: c.name)
            ],
            "summary": self.summary,
        }


def to_jsonable(value):
    """Exact scalars and domain objects rendered as strings; containers
    recursively; keys coerced to strings."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(
            value.items(), key=lambda kv: str(kv[0]))}
    return repr(value)


def emit_report(report: Report, fmt: str = "json") -> bytes:
    data = report.to_dict()
    if fmt == "json":
        return (json.dumps(data, sort_keys=True, separators=(",", ": "),
                           indent=2) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"scenario: {data['scenario'].get('name', '?')}"]
    for key, value in sorted(data["scenario"].items()):
        if key != "name":
            lines.append(f"  {key} = {value}")
    width = max((len(c["name"]) for c in data["checks"]), default=4)
    for check in data["checks"]:
        lines.append(f"{check['name']:<{width}}  {check['status']:<4}  "
                     f"{check['anchor']}")
        if check["status"] != "pass" and check["witness"]:
            lines.append(f"{'':<{width}}        {check['witness']}")
    s = data["summary"]
    lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, "
                 f"{s['skip']} skip")
    return ("\n".join(lines) + "\n").encode()


def parse_report(data: bytes) -> Report:
    obj = json.loads(data.decode())
    report = Report(obj["scenario"])
    for check in obj["checks"]:
        report.checks.append(CheckResult(check["name"], check["anchor"],
                                         check["status"], check["witness"]))
    return report
