"""Verification reports shared by the checkers and the command line."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Entry:
    identity: str
    bound: Dict[str, Any]
    status: str  # "PASS" or "FAIL"
    counterexample: List[Any] = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json(self) -> Dict[str, Any]:
        return {"identity": self.identity, "bound": self.bound,
                "status": self.status, "counterexample": self.counterexample}

    def line(self) -> str:
        s = f"{self.status}  {self.identity}"
        if self.bound:
            s += "  " + ",".join(f"{k}={v}" for k, v in sorted(self.bound.items()))
        if self.counterexample:
            s += f"  counterexample={self.counterexample}"
        if self.detail:
            s += f"  ({self.detail})"
        return s


def entry(identity: str, bound: Dict[str, Any], bad: Optional[list], detail: str = "") -> Entry:
    """PASS when ``bad`` is None or empty, else FAIL with ``bad`` as the witness."""
    if not bad:
        return Entry(identity, dict(bound), "PASS", [], detail)
    return Entry(identity, dict(bound), "FAIL", list(bad), detail)


class Report:
    """An ordered list of entries."""

    def __init__(self, entries: Optional[List[Entry]] = None):
        self.entries: List[Entry] = list(entries or [])

    def add(self, e: Entry) -> Entry:
        self.entries.append(e)
        return e

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> List[Entry]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, identity: str) -> Entry:
        for e in self.entries:
            if e.identity == identity:
                return e
        raise KeyError(identity)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> List[Dict[str, Any]]:
        return [e.to_json() for e in self.entries]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, default=str)

    def text(self) -> str:
        return "\n".join(e.line() for e in self.entries)
