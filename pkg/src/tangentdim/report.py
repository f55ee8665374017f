"""Structured pass/fail records shared by every checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, List, Optional

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
NA = "not-applicable"


def jsonable(x: Any) -> Any:
    """Convert values into something ``json.dumps`` renders deterministically."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return repr(x)


@dataclass
class CheckRecord:
    check: str
    status: str
    witnesses: dict = field(default_factory=dict)
    lhs: Any = None
    rhs: Any = None

    def to_dict(self):
        return {
            "check": self.check,
            "status": self.status,
            "witnesses": jsonable(self.witnesses),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
        }


@dataclass
class ViolationReport:
    """A named list of check records with an aggregate status.

    The aggregate is ``fail`` if any record failed, ``pass`` if at least one
    record passed, and ``not-applicable`` otherwise.
    """

    name: str
    records: List[CheckRecord] = field(default_factory=list)
    corpus: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def record(self, check, ok, witnesses=None, lhs=None, rhs=None) -> bool:
        self.add(CheckRecord(check, PASS if ok else FAIL, witnesses or {}, lhs, rhs))
        return ok

    def extend(self, other: "ViolationReport", prefix: Optional[str] = None):
        for r in other.records:
            name = f"{prefix}/{r.check}" if prefix else r.check
            self.records.append(CheckRecord(name, r.status, r.witnesses, r.lhs, r.rhs))
        self.notes.extend(other.notes)

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.records}
        if FAIL in statuses:
            return FAIL
        if PASS in statuses:
            return PASS
        return NA

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.status == FAIL]

    def first_failure(self) -> Optional[CheckRecord]:
        f = self.failures()
        return f[0] if f else None

    def counts(self):
        out = {PASS: 0, FAIL: 0, NA: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "check": self.name,
            "status": self.status,
            "counts": self.counts(),
            "corpus": list(self.corpus),
            "notes": list(self.notes),
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def summary(self) -> str:
        c = self.counts()
        lines = [f"{self.name}: {self.status.upper()} ({c[PASS]} pass, {c[FAIL]} fail, {c[NA]} n/a)"]
        for r in self.failures()[:10]:
            lines.append(f"  FAIL {r.check}: lhs={jsonable(r.lhs)} rhs={jsonable(r.rhs)} {jsonable(r.witnesses)}")
        return "\n".join(lines)
