from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

# soundness caveats attached to verdicts and reports
BOUNDED = "bounded"  # an unbounded ∀ was checked only below forall_budget
WITNESS_RELATIVE = "witness-relative"  # an implication was checked only against known antecedent realisers
VACUOUS = "vacuous"  # an implication held because its antecedent is certified unrealisable


class Status(enum.Enum):
    REALISED = "Realised"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict3:
    status: Status
    flags: frozenset[str] = frozenset()
    reason: str = ""

    @property
    def realised(self) -> bool:
        return self.status is Status.REALISED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    def flagged(self, *flags: str) -> "Verdict3":
        return Verdict3(self.status, self.flags | frozenset(flags), self.reason)

    def __str__(self) -> str:
        extra = f" [{', '.join(sorted(self.flags))}]" if self.flags else ""
        why = f" ({self.reason})" if self.reason else ""
        return f"{self.status.value}{extra}{why}"


REALISED = Verdict3(Status.REALISED)
REFUTED = Verdict3(Status.REFUTED)


def unknown(reason: str) -> Verdict3:
    return Verdict3(Status.UNKNOWN, reason=reason)


def refuted(reason: str) -> Verdict3:
    return Verdict3(Status.REFUTED, reason=reason)


def conjoin(verdicts: Iterable[Verdict3]) -> Verdict3:
    """All must be realised; one refutation refutes."""
    flags: frozenset[str] = frozenset()
    pending: Verdict3 | None = None
    for v in verdicts:
        flags |= v.flags
        if v.status is Status.REFUTED:
            return v
        if v.status is Status.UNKNOWN and pending is None:
            pending = v
    if pending is not None:
        return Verdict3(Status.UNKNOWN, flags, pending.reason)
    return Verdict3(Status.REALISED, flags)
