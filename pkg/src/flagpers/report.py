from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
# conjecture checks never claim more than this
CONSISTENT = "consistent"


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, Any]
    status: str
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    def __post_init__(self) -> None:
        if self.status not in (PASS, FAIL, CONSISTENT):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self, include_timing: bool = False) -> dict[str, Any]:
        out = {
            "claim": self.claim,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "details": self.details,
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self, include_timing: bool = False) -> str:
        """One JSON line; key order and separators are fixed so output is byte-stable."""
        return json.dumps(self.to_dict(include_timing), sort_keys=True, separators=(",", ":"), default=_jsonable)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")
