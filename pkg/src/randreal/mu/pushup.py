"""Boosting a positive realisation probability by hard-coding an oracle prefix."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from ..dyadic import ONE, ZERO, DyadicRational
from ..formula import Formula
from ..machine.cylinder import Cylinder
from ..realisability.context import CheckCtx
from .check import check_O
from .report import MeasureInterval, MeasureReport, Region
from .wrap import prefix_view, relativise


@dataclass(frozen=True)
class PushUpResult:
    code: int | None
    prefix: tuple[int, ...] | None
    interval: MeasureInterval | None
    explored: int
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.code is not None


def yes_density(report: MeasureReport, cyl: Cylinder) -> DyadicRational:
    """Relative measure of the Yes regions of ``report`` inside ``cyl``."""
    total = ZERO
    for region, v in report.partition:
        if v is not Region.YES:
            continue
        meet = region.intersect(cyl)
        if meet is not None:
            total = total + DyadicRational.pow2(len(meet) - len(cyl))
    return total


def push_up(
    p: int, phi: Formula, r_target: DyadicRational, ctx: CheckCtx | None = None, max_nodes: int = 4096
) -> PushUpResult:
    """Find a prefix ``s`` on which ``C_{p,φ}`` has relative density above ``r_target``.

    Prefix cylinders are explored best-first by their Yes-density in the
    exact report of ``p``.  The returned program runs ``p`` as if the oracle
    were ``s`` followed by the actual oracle, and its own measure is
    re-checked before it is returned.
    """
    ctx = ctx or CheckCtx()
    r_target = DyadicRational.of(r_target)
    if not (ZERO < r_target < 1):
        raise ValueError("push_up needs 0 < r_target < 1")
    report = check_O(p, phi, Cylinder(), ctx)
    if report.interval.lo == ZERO:
        return PushUpResult(None, None, None, 0, "no Yes region to push up")
    heap: list[tuple] = []
    counter = 0

    def offer(bits: tuple[int, ...]) -> None:
        nonlocal counter
        d = yes_density(report, Cylinder.prefix(bits))
        if d > ZERO:
            heapq.heappush(heap, (ONE - d, len(bits), bits, counter))
            counter += 1

    offer(())
    explored = 0
    while heap and explored < max_nodes:
        gap, _, bits, _ = heapq.heappop(heap)
        explored += 1
        if ONE - gap > r_target:
            q = p if not bits else relativise(p, phi, prefix_view(bits))
            iv = check_O(q, phi, Cylinder(), ctx).interval
            if iv.lo > r_target:
                return PushUpResult(q, bits, iv, explored)
        if len(bits) < ctx.depth:
            offer(bits + (0,))
            offer(bits + (1,))
    return PushUpResult(None, None, None, explored, "no explored prefix reaches the target density; deeper search may succeed")
