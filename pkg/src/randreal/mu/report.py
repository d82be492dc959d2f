"""Measure intervals, region reports and μ-verdicts, with their text format.

Report text format, one item per line::

    interval <lo> <hi> <exactness>[ <flag>...]
    region <pattern> <Yes|No|Unknown>
    context <key=value ...>

Dyadics print as ``n/2^e``; patterns use ``0``, ``1``, ``*`` and ``-`` for
the unconstrained cylinder.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..dyadic import ONE, ZERO, DyadicRational, parse_dyadic
from ..machine.cylinder import Cylinder


class Exactness(enum.Enum):
    EXACT = "Exact"
    LOWER_SOUND = "LowerSound"
    BOUNDED_UNIVERSAL = "BoundedUniversal"


@dataclass(frozen=True)
class MeasureInterval:
    lo: DyadicRational
    hi: DyadicRational
    exactness: Exactness = Exactness.EXACT
    # instance bound of BoundedUniversal
    bound: int | None = None

    def __post_init__(self) -> None:
        if not (ZERO <= self.lo <= self.hi <= ONE):
            raise ValueError(f"bad measure interval [{self.lo}, {self.hi}]")
        if self.exactness is Exactness.EXACT and self.lo != self.hi:
            raise ValueError("an exact interval has lo = hi")

    @property
    def exact(self) -> bool:
        return self.exactness is Exactness.EXACT

    def label(self) -> str:
        if self.exactness is Exactness.BOUNDED_UNIVERSAL:
            return f"BoundedUniversal({self.bound})"
        return self.exactness.value

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}] {self.label()}"


class Region(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MeasureReport:
    """Partition of the queried cylinder with verdicts for ``(p,u) ⊩_O φ``."""

    cylinder: Cylinder
    partition: tuple[tuple[Cylinder, Region], ...]
    interval: MeasureInterval
    flags: frozenset[str] = frozenset()
    context: str = ""

    def measure_of(self, verdict: Region) -> DyadicRational:
        """Relative measure (within the queried cylinder) of the regions with ``verdict``."""
        base = len(self.cylinder)
        total = ZERO
        for cyl, v in self.partition:
            if v is verdict:
                total = total + DyadicRational.pow2(len(cyl) - base)
        return total

    def yes_regions(self) -> list[Cylinder]:
        return [c for c, v in self.partition if v is Region.YES]

    def to_text(self) -> str:
        iv = self.interval
        head = " ".join(["interval", str(iv.lo), str(iv.hi), iv.label(), *sorted(self.flags)])
        lines = [head, f"cylinder {self.cylinder.pattern()}"]
        lines += [f"region {c.pattern()} {v.value}" for c, v in self.partition]
        if self.context:
            lines.append(f"context {self.context}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MeasureReport":
        interval = None
        cylinder = Cylinder()
        flags: frozenset[str] = frozenset()
        regions = []
        context = ""
        for line in text.splitlines():
            if not line.strip():
                continue
            tag, _, rest = line.partition(" ")
            parts = rest.split()
            if tag == "interval":
                lo, hi, label = parse_dyadic(parts[0]), parse_dyadic(parts[1]), parts[2]
                if label.startswith("BoundedUniversal(") and label.endswith(")"):
                    interval = MeasureInterval(lo, hi, Exactness.BOUNDED_UNIVERSAL, int(label[17:-1]))
                else:
                    interval = MeasureInterval(lo, hi, Exactness(label))
                flags = frozenset(parts[3:])
            elif tag == "cylinder":
                cylinder = Cylinder.from_pattern(parts[0])
            elif tag == "region":
                regions.append((Cylinder.from_pattern(parts[0]), Region(parts[1])))
            elif tag == "context":
                context = rest
            else:
                raise ValueError(f"unknown report line {line!r}")
        if interval is None:
            raise ValueError("report has no interval line")
        return cls(cylinder, tuple(regions), interval, flags, context)


class MuStatus(enum.Enum):
    REALISED = "MuRealised"
    REFUTED = "MuRefuted"
    UNKNOWN = "MuUnknown"


@dataclass(frozen=True)
class MuVerdict:
    status: MuStatus
    at_least: DyadicRational | None = None
    report: MeasureReport | None = field(default=None, compare=False)

    @property
    def realised(self) -> bool:
        return self.status is MuStatus.REALISED

    @property
    def refuted(self) -> bool:
        return self.status is MuStatus.REFUTED

    def __str__(self) -> str:
        if self.status is MuStatus.REALISED:
            return f"MuRealised({self.at_least})"
        return self.status.value
