"""The oracle relation ``(p,u) ⊩_O φ`` over cylinders, measured exactly.

``check_O`` partitions a cylinder into regions on which every run the
checker needs is constant, and labels each region Yes, No or Unknown.  The
measure of ``C_{p,φ}`` is then bracketed by the Yes and non-No parts.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from ..dyadic import ONE, ZERO, DyadicRational
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
    SentenceClass,
    TruthVerdict,
    classify,
    MAX_BOUNDED_INSTANCES,
    eval_term,
    eval_truth,
    free_vars,
    holds,
    instance,
)
from ..machine.cylinder import FULL, Cylinder, cylinder_run
from ..machine.interp import OutOfFuel, Stuck, Value
from ..machine.prelude import pair_code
from ..realisability.certify import certified_false
from ..realisability.context import CheckCtx
from ..realisability.synth import synth_pi1, synth_sigma1
from ..realisability.verdict import BOUNDED, VACUOUS, WITNESS_RELATIVE
from .report import Exactness, MeasureInterval, MeasureReport, MuStatus, MuVerdict, Region

YES, NO, UNKNOWN = Region.YES, Region.NO, Region.UNKNOWN
Parts = tuple[tuple[Cylinder, Region], ...]
Result = tuple[Parts, frozenset[str]]


def _and(a: Region, b: Region) -> Region:
    if a is NO or b is NO:
        return NO
    if a is YES and b is YES:
        return YES
    return UNKNOWN


def _merge(parts: list[tuple[Cylinder, Region]]) -> Parts:
    """Coalesce sibling regions with equal verdicts; canonical order."""
    table = {c.constraints: v for c, v in parts}
    changed = True
    while changed:
        changed = False
        for key in sorted(table, key=len, reverse=True):
            if key not in table:
                continue
            v = table[key]
            for j, (i, b) in enumerate(key):
                sib = key[:j] + ((i, 1 - b),) + key[j + 1 :]
                if table.get(sib) is v:
                    del table[key], table[sib]
                    table[key[:j] + key[j + 1 :]] = v
                    changed = True
                    break
    return tuple(sorted(((Cylinder(k), v) for k, v in table.items()), key=lambda cv: cv[0].constraints))


def _meet(a: Parts, b: Parts) -> Parts:
    if len(a) == 1 and a[0][1] is YES:
        return b
    out = []
    for ca, va in a:
        if va is NO:
            out.append((ca, NO))
            continue
        for cb, vb in b:
            c = ca.intersect(cb)
            if c is not None:
                out.append((c, _and(va, vb)))
    return _merge(out)


def _at(p: int, arg: int, cyl: Cylinder, ctx: CheckCtx, then: Callable[[int, Cylinder], Result]) -> Result:
    """Run ``p`` on ``arg`` across ``cyl`` and continue with the value on each region."""
    parts: list[tuple[Cylinder, Region]] = []
    flags: frozenset[str] = frozenset()
    for c, out in cylinder_run(p, arg, cyl, ctx.fuel, ctx.depth):
        if isinstance(out, Value):
            sub, f = then(out.value, c)
            parts.extend(sub)
            flags |= f
        elif isinstance(out, Stuck) or (isinstance(out, OutOfFuel) and out.diverged):
            parts.append((c, NO))
        else:
            parts.append((c, UNKNOWN))
    return _merge(parts), flags


@lru_cache(maxsize=200_000)
def _regions(p: int, phi: Formula, cyl: Cylinder, ctx: CheckCtx) -> Result:
    if certified_false(phi, ctx):
        return ((cyl, NO),), frozenset()
    if isinstance(phi, ATOMS):
        return ((cyl, YES if holds(phi) else NO),), frozenset()
    if isinstance(phi, And):
        left, f0 = _at(p, 0, cyl, ctx, lambda v, c: _regions(v, phi.left, c, ctx))
        if all(verdict is NO for _, verdict in left):
            return left, f0
        right, f1 = _at(p, 1, cyl, ctx, lambda v, c: _regions(v, phi.right, c, ctx))
        return _meet(left, right), f0 | f1
    if isinstance(phi, Or):

        def chosen(index: int, c: Cylinder) -> Result:
            if index not in (0, 1):
                return ((c, NO),), frozenset()
            part = phi.left if index == 0 else phi.right
            return _at(p, 1, c, ctx, lambda v, c2: _regions(v, part, c2, ctx))

        return _at(p, 0, cyl, ctx, chosen)
    if isinstance(phi, (Exists, ExistsLt)):
        limit = eval_term(phi.bound) if isinstance(phi, ExistsLt) else None

        def witnessed(n: int, c: Cylinder) -> Result:
            if limit is not None and n >= limit:
                return ((c, NO),), frozenset()
            body = instance(phi, n)
            return _at(p, 0, c, ctx, lambda v, c2: _regions(v, body, c2, ctx))

        return _at(p, 1, cyl, ctx, witnessed)
    if isinstance(phi, (Forall, ForallLt)):
        bounded = isinstance(phi, Forall)
        count = ctx.forall_budget if bounded else eval_term(phi.bound)
        # past the instance limit nothing is claimed
        over = not bounded and count > MAX_BOUNDED_INSTANCES
        parts: Parts = ((cyl, UNKNOWN if over else YES),)
        flags = frozenset([BOUNDED]) if bounded else frozenset()
        for n in range(MAX_BOUNDED_INSTANCES if over else count):
            body = instance(phi, n)
            sub, f = _at(p, n, cyl, ctx, lambda v, c, body=body: _regions(v, body, c, ctx))
            parts = _meet(parts, sub)
            flags |= f
            if all(verdict is NO for _, verdict in parts):
                break
        return parts, flags
    if isinstance(phi, Imp):
        if certified_false(phi.left, ctx):
            return ((cyl, YES),), frozenset([VACUOUS])
        witnesses = mu_witnesses(phi.left, ctx)
        flags = frozenset([WITNESS_RELATIVE])
        if not witnesses:
            return ((cyl, UNKNOWN),), flags
        parts = ((cyl, YES),)
        for s in witnesses:

            def realises(c_out: int, c: Cylinder) -> Result:
                v = check_mu(c_out, phi.right, None, ctx)
                verdict = YES if v.realised else NO if v.refuted else UNKNOWN
                return ((c, verdict),), v.report.flags if v.report else frozenset()

            sub, f = _at(p, s, cyl, ctx, realises)
            parts = _meet(parts, sub)
            flags |= f
        return parts, flags
    raise TypeError(f"not a formula: {phi!r}")


@lru_cache(maxsize=20_000)
def mu_witnesses(phi: Formula, ctx: CheckCtx) -> tuple[int, ...]:
    """Known μ-realisers of ``phi``: the database plus translated synthesized ones that check."""
    from .translate import translate_Pmu

    found = [w.code for w in ctx.witness_db.witnesses(phi)]
    if ctx.auto_witness and not free_vars(phi):
        cls = classify(phi)
        code = None
        if cls in (SentenceClass.DELTA0, SentenceClass.PRETTY_SIGMA1):
            if eval_truth(phi, ctx.truth_budget) is TruthVerdict.TRUE:
                got = synth_sigma1(phi, ctx.fuel)
                code = got if isinstance(got, int) else None
        elif cls is SentenceClass.UNIVERSAL_PI1:
            if eval_truth(phi, ctx.truth_budget) is not TruthVerdict.FALSE:
                code = synth_pi1(phi)
        if code is not None:
            code = translate_Pmu(code, phi)
        elif isinstance(phi, And):
            # pair known realisers of the conjuncts
            left, right = mu_witnesses(phi.left, ctx), mu_witnesses(phi.right, ctx)
            code = pair_code(left[0], right[0]) if left and right else None
        if code is not None and code not in found and check_mu(code, phi, None, ctx).realised:
            found.append(code)
    return tuple(found)


def _interval(report_parts: Parts, cyl: Cylinder, flags: frozenset[str], ctx: CheckCtx) -> MeasureInterval:
    base = len(cyl)
    yes = no = ZERO
    for c, v in report_parts:
        m = DyadicRational.pow2(len(c) - base)
        if v is YES:
            yes = yes + m
        elif v is NO:
            no = no + m
    lo, hi = yes, ONE - no
    if BOUNDED in flags:
        return MeasureInterval(lo, hi, Exactness.BOUNDED_UNIVERSAL, ctx.forall_budget)
    if lo == hi:
        return MeasureInterval(lo, hi, Exactness.EXACT)
    return MeasureInterval(lo, hi, Exactness.LOWER_SOUND)


def check_O(p: int, phi: Formula, cyl: Cylinder = FULL, ctx: CheckCtx | None = None) -> MeasureReport:
    """Partition ``cyl`` by whether ``(p,u) ⊩_O φ`` holds."""
    ctx = ctx or CheckCtx()
    if free_vars(phi):
        raise ValueError("check_O needs a sentence")
    parts, flags = _regions(p, phi, cyl, ctx)
    return MeasureReport(cyl, parts, _interval(parts, cyl, flags, ctx), flags, ctx.echo())


def measure_C(p: int, phi: Formula, ctx: CheckCtx | None = None) -> MeasureInterval:
    return check_O(p, phi, FULL, ctx).interval


@lru_cache(maxsize=100_000)
def _check_mu(p: int, phi: Formula, r: DyadicRational | None, ctx: CheckCtx) -> MuVerdict:
    report = check_O(p, phi, FULL, ctx)
    iv = report.interval
    if r is None:
        if iv.lo > ZERO:
            return MuVerdict(MuStatus.REALISED, iv.lo, report)
        if iv.hi == ZERO:
            return MuVerdict(MuStatus.REFUTED, None, report)
        return MuVerdict(MuStatus.UNKNOWN, None, report)
    if iv.lo >= r:
        return MuVerdict(MuStatus.REALISED, r, report)
    if iv.hi < r:
        return MuVerdict(MuStatus.REFUTED, None, report)
    return MuVerdict(MuStatus.UNKNOWN, None, report)


def check_mu(p: int, phi: Formula, r: DyadicRational | int | None = None, ctx: CheckCtx | None = None) -> MuVerdict:
    """Does ``p`` μ-realise ``phi`` with probability at least ``r``?

    With ``r`` omitted the question is "with some positive probability":
    the verdict is MuRealised(lo) when the lower bound is positive.
    """
    ctx = ctx or CheckCtx()
    if r is not None:
        r = DyadicRational.of(r)
        if not (ZERO < r <= ONE):
            raise ValueError("r must lie in (0, 1]")
    return _check_mu(p, phi, r, ctx)
