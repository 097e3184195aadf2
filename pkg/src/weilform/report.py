"""Check reports shared by the command-line tools."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from .errors import InputError

PASS, FAIL = "pass", "fail"


@dataclass
class Record:
    name: str
    status: str
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class Report:
    command: str
    records: List[Record] = field(default_factory=list)

    def add(self, name: str, ok: bool, /, **details) -> Record:
        rec = Record(name, PASS if ok else FAIL, details)
        self.records.append(rec)
        return rec

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "records": [r.to_json() for r in self.records],
            "overall": PASS if self.ok else FAIL,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"{r.status.upper():4s}  {r.name}" for r in self.records]
        lines.append(f"overall: {PASS if self.ok else FAIL}")
        return "\n".join(lines)

    @classmethod
    def from_json(cls, obj) -> "Report":
        try:
            recs = [Record(r["name"], r["status"], dict(r.get("details", {}))) for r in obj["records"]]
            rep = cls(obj["command"], recs)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed report: {exc}") from None
        if any(r.status not in (PASS, FAIL) for r in recs):
            raise InputError("record status must be 'pass' or 'fail'")
        if obj.get("overall") not in (None, PASS if rep.ok else FAIL):
            raise InputError("overall status disagrees with the records")
        return rep

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_json(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_json() == other.to_json()
