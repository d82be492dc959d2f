"""Realisability relative to a family of big oracle sets.

For a co-interval-free family the witness set ``O`` meets every cylinder,
so a clause fails as soon as it fails on one whole cylinder.  The checker
therefore explores the run of each required computation over all cylinders:
it certifies a clause when every region behaves, and refutes it with the
first region that does not.  Measure-one and comeagre sets are
co-interval-free and share this checker; positive measure goes to the μ
engine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from ..dyadic import ZERO, DyadicRational
from ..formula import (
    ATOMS,
    And,
    Exists,
    ExistsLt,
    Forall,
    ForallLt,
    Formula,
    Imp,
    Or,
    MAX_BOUNDED_INSTANCES,
    eval_term,
    free_vars,
    holds,
    instance,
)
from ..machine.cylinder import FULL, Cylinder, cylinder_run
from ..machine.interp import OutOfFuel, Stuck, Value
from ..mu.check import check_O
from ..mu.report import MeasureReport
from ..realisability.certify import certified_false
from ..realisability.classical import classical_witnesses
from ..realisability.context import CheckCtx
from ..realisability.verdict import (
    BOUNDED,
    REALISED,
    VACUOUS,
    WITNESS_RELATIVE,
    Status,
    Verdict3,
    conjoin,
    refuted,
    unknown,
)


class FamilyKind(enum.Enum):
    CO_INTERVAL_FREE = "co-interval-free"
    COMEAGRE = "comeagre"
    MEASURE_ONE = "measure-one"
    POSITIVE_MEASURE = "positive-measure"

    @property
    def co_interval_free(self) -> bool:
        return self is not FamilyKind.POSITIVE_MEASURE


CO_INTERVAL_FREE_FAMILIES = (FamilyKind.CO_INTERVAL_FREE, FamilyKind.COMEAGRE, FamilyKind.MEASURE_ONE)


@dataclass(frozen=True)
class FCertificate:
    family: FamilyKind
    # cylinders on which a required behaviour fails, with the reason
    refutations: tuple[tuple[str, str], ...] = ()
    depth: int = 0
    fuel: int = 0
    report: MeasureReport | None = None  # positive measure only
    absolute_lo: DyadicRational | None = None  # positive measure: lower bound over the whole space

    def to_text(self) -> str:
        lines = [f"family {self.family.value}", f"context depth={self.depth} fuel={self.fuel}"]
        lines += [f"refute {pattern} {reason}" for pattern, reason in self.refutations]
        if self.report is not None:
            lines.append(self.report.to_text().rstrip("\n"))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FResult:
    verdict: Verdict3
    certificate: FCertificate

    @property
    def status(self) -> Status:
        return self.verdict.status

    @property
    def realised(self) -> bool:
        return self.verdict.realised

    @property
    def refuted(self) -> bool:
        return self.verdict.refuted


Refutes = tuple[tuple[str, str], ...]
Checked = tuple[Verdict3, Refutes]


def _leaves(p: int, arg: int, ctx: CheckCtx) -> tuple[list[tuple[Cylinder, int]], Checked | None]:
    """Values of ``p(arg)`` per region, or the verdict when some region does not halt."""
    values = []
    pending = None
    for cyl, out in cylinder_run(p, arg, FULL, ctx.fuel, ctx.depth):
        if isinstance(out, Value):
            values.append((cyl, out.value))
        elif isinstance(out, Stuck) or (isinstance(out, OutOfFuel) and out.diverged):
            why = f"p({arg}) never halts here"
            return values, (refuted(why), ((cyl.pattern(), why),))
        elif pending is None:
            pending = (unknown(f"p({arg}) unsettled at fuel {ctx.fuel}, depth {ctx.depth}"), ())
    return values, pending


def _constant(p: int, arg: int, ctx: CheckCtx) -> tuple[int | None, Checked | None]:
    values, failed = _leaves(p, arg, ctx)
    if failed is not None:
        return None, failed
    distinct = sorted({v for _, v in values})
    if len(distinct) > 1:
        cyl = next(c for c, v in values if v != distinct[0])
        why = f"p({arg}) takes the values {distinct[0]} and {distinct[1]}"
        return None, (refuted(why), ((cyl.pattern(), why),))
    return distinct[0], None


def _each(p: int, arg: int, phi: Formula, ctx: CheckCtx) -> Checked:
    """Every region's value of ``p(arg)`` must F-realise ``phi``."""
    values, failed = _leaves(p, arg, ctx)
    if failed is not None and failed[0].refuted:
        return failed
    results, refutes = [], ()
    for cyl, v in values:
        sub, sub_refutes = _f(v, phi, ctx)
        results.append(sub)
        if sub.refuted:
            return sub, ((cyl.pattern(), f"p({arg}) = {v} fails"),) + sub_refutes
    if failed is not None:
        results.append(failed[0])
    return conjoin(results), refutes


def f_witnesses(phi: Formula, ctx: CheckCtx) -> list[int]:
    """Known F-realisers: classical witnesses through the zeros view, plus the database."""
    from .translate import translate_PF

    found = [w.code for w in ctx.witness_db.witnesses(phi)]
    for code, _ in classical_witnesses(phi, ctx):
        try:
            code = translate_PF(code, phi)
        except ValueError:
            continue
        if code not in found:
            found.append(code)
    return found


@lru_cache(maxsize=50_000)
def _f(p: int, phi: Formula, ctx: CheckCtx) -> Checked:
    if certified_false(phi, ctx):
        return refuted("the sentence is false"), ((FULL.pattern(), "false sentence"),)
    if isinstance(phi, ATOMS):
        return (REALISED, ()) if holds(phi) else (refuted("false atom"), ())
    if isinstance(phi, And):
        # the clause asks for no witness set; require every region to behave
        left = _each(p, 0, phi.left, ctx)
        if left[0].refuted:
            return left
        right = _each(p, 1, phi.right, ctx)
        return conjoin([left[0], right[0]]), left[1] + right[1]
    if isinstance(phi, Or):
        index, failed = _constant(p, 0, ctx)
        if failed is not None:
            return failed
        if index not in (0, 1):
            return refuted(f"disjunct index {index}"), ((FULL.pattern(), f"index {index}"),)
        return _each(p, 1, phi.left if index == 0 else phi.right, ctx)
    if isinstance(phi, (Exists, ExistsLt)):
        n, failed = _constant(p, 1, ctx)
        if failed is not None:
            return failed
        if isinstance(phi, ExistsLt) and n >= eval_term(phi.bound):
            return refuted(f"witness {n} out of bounds"), ((FULL.pattern(), f"witness {n}"),)
        return _each(p, 0, instance(phi, n), ctx)
    if isinstance(phi, (Forall, ForallLt)):
        bounded = isinstance(phi, Forall)
        count = ctx.forall_budget if bounded else eval_term(phi.bound)
        over = not bounded and count > MAX_BOUNDED_INSTANCES
        results = [unknown(f"more than {MAX_BOUNDED_INSTANCES} instances")] if over else []
        for n in range(MAX_BOUNDED_INSTANCES if over else count):
            v, refutes = _each(p, n, instance(phi, n), ctx)
            if v.refuted:
                return v, refutes
            results.append(v)
        v = conjoin(results)
        return (v.flagged(BOUNDED) if bounded else v), ()
    if isinstance(phi, Imp):
        if certified_false(phi.left, ctx):
            return REALISED.flagged(VACUOUS), ()
        witnesses = f_witnesses(phi.left, ctx)
        if not witnesses:
            return unknown("no known F-realiser of the antecedent").flagged(WITNESS_RELATIVE), ()
        results = []
        for s in witnesses:
            v, refutes = _each(p, s, phi.right, ctx)
            if v.refuted:
                return v.flagged(WITNESS_RELATIVE), refutes
            results.append(v)
        return conjoin(results).flagged(WITNESS_RELATIVE), ()
    raise TypeError(f"not a formula: {phi!r}")


def check_F(
    p: int,
    phi: Formula,
    family: FamilyKind = FamilyKind.CO_INTERVAL_FREE,
    ctx: CheckCtx | None = None,
    cylinder: Cylinder | None = None,
) -> FResult:
    """Does ``p`` F-realise the sentence ``phi``?

    ``cylinder`` is a hint for positive measure: the report is taken relative
    to it and its measure scales the lower bound.  Refutations there always
    come from the whole space.
    """
    ctx = ctx or CheckCtx()
    if free_vars(phi):
        raise ValueError("check_F needs a sentence")
    if family.co_interval_free:
        verdict, refutes = _f(p, phi, ctx)
        return FResult(verdict, FCertificate(family, refutes, ctx.depth, ctx.fuel))
    cyl = cylinder or FULL
    report = check_O(p, phi, cyl, ctx)
    lo = report.interval.lo * cyl.measure()
    if report.interval.lo > ZERO:
        verdict = Verdict3(Status.REALISED, report.flags, f"lower bound {lo}")
    else:
        full = report if cyl == FULL else check_O(p, phi, FULL, ctx)
        if full.interval.hi == ZERO:
            verdict, report = refuted("measure 0"), full
        else:
            verdict = unknown("no positive lower bound")
    return FResult(verdict, FCertificate(family, (), ctx.depth, ctx.fuel, report, lo))
