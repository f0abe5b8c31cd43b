from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "VACUOUS"
    NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass
class VerdictReport:
    """Outcome of one check on one instance.

    FAIL always carries a witness; VACUOUS and NOT_APPLICABLE carry a reason.
    """

    check_id: str
    status: Status
    witness: dict[str, Any] | None = None
    reason: str | None = None
    instance_ref: str = ""
    millis: float = 0.0
    info: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.status = Status(self.status)
        if self.status is Status.FAIL and not self.witness:
            raise ValueError(f"{self.check_id}: FAIL verdict without a witness")
        if self.status in (Status.VACUOUS, Status.NOT_APPLICABLE) and not self.reason:
            raise ValueError(f"{self.check_id}: {self.status.value} verdict without a reason")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_record(self) -> dict[str, Any]:
        rec = {
            "check_id": self.check_id,
            "instance_ref": self.instance_ref,
            "status": self.status.value,
            "witness": self.witness,
            "millis": self.millis,
        }
        if self.reason:
            rec["reason"] = self.reason
        if self.info:
            rec["info"] = self.info
        return rec
