from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

KINDS = ("identity", "congruence", "characterization", "conjecture")
STATUSES = ("pass", "fail", "skipped")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one finite-order check.

    ``first_failure`` is a coefficient index of the compared series (for a
    progression check, the progression index n).  ``adjudication`` is set on
    checks that come in pairs where the printed statement and a corrected one
    are both tested; it names the id of the variant that holds.
    """

    id: str
    paper_ref: str
    kind: str
    order_checked: int
    status: str
    first_failure: Optional[int] = None
    elapsed: float = 0.0
    adjudication: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown check kind {self.kind!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == "fail") != (self.first_failure is not None):
            raise ValueError("first_failure must be set exactly when status is 'fail'")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)
