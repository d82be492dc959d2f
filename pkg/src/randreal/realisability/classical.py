"""Fuel-bounded checker for classical (oracle-free) Kleene realisability."""

from __future__ import annotations

from dataclasses import dataclass

from ..formula import (
    And,
    Bot,
    Eq,
    Exists,
    ExistsLt,
    Forall,
    ForallLt,
    Formula,
    HaltOut,
    Imp,
    Or,
    SentenceClass,
    StepHalt,
    TruthVerdict,
    classify,
    MAX_BOUNDED_INSTANCES,
    eval_term,
    eval_truth,
    free_vars,
    holds,
    instance,
)
from ..machine.interp import OutOfFuel, Stuck, Value, ZERO_READ, apply
from ..machine.prelude import pair_code
from .certify import certified_false
from .context import CheckCtx, Provenance
from .synth import synth_pi1, synth_sigma1
from .verdict import (
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


def _run(r: int, arg: int, ctx: CheckCtx) -> int | Verdict3:
    out = apply(r, arg, ZERO_READ, ctx.fuel)
    if isinstance(out, Value):
        return out.value
    if isinstance(out, Stuck):
        return refuted(f"realiser stuck on {arg}: {out.reason}")
    if isinstance(out, OutOfFuel) and out.diverged:
        return refuted(f"realiser diverges on {arg}")
    return unknown(f"out of fuel on input {arg}")


def classical_witnesses(phi: Formula, ctx: CheckCtx) -> list[tuple[int, Provenance]]:
    """Known realisers of ``phi``: the database plus verified synthesized ones."""
    found = [(w.code, w.provenance) for w in ctx.witness_db.witnesses(phi)]
    if ctx.auto_witness and not free_vars(phi):
        code = _synthesized(phi, ctx)
        if code is not None and all(c != code for c, _ in found):
            found.append((code, Provenance.SYNTHESIZED))
    return found


def _synthesized(phi: Formula, ctx: CheckCtx) -> int | None:
    cls = classify(phi)
    if cls in (SentenceClass.DELTA0, SentenceClass.PRETTY_SIGMA1):
        if eval_truth(phi, ctx.truth_budget) is not TruthVerdict.TRUE:
            return None
        code = synth_sigma1(phi, ctx.fuel)
        return code if isinstance(code, int) else None
    if cls is SentenceClass.UNIVERSAL_PI1:
        if eval_truth(phi, ctx.truth_budget) is TruthVerdict.FALSE:
            return None
        code = synth_pi1(phi)
        return code if check_classical(code, phi, ctx).realised else None
    if isinstance(phi, And):
        left, right = classical_witnesses(phi.left, ctx), classical_witnesses(phi.right, ctx)
        if left and right:
            code = pair_code(left[0][0], right[0][0])
            return code if check_classical(code, phi, ctx).realised else None
    return None


def check_classical(r: int, phi: Formula, ctx: CheckCtx | None = None) -> Verdict3:
    """Does ``r`` realise the sentence ``phi``?  Oracle reads see zeros.

    Realised and Refuted are sound up to the flags they carry: ``bounded``
    means only ``forall_budget`` instances of some unbounded ``∀`` were
    checked, ``witness-relative`` means some implication was checked only on
    known antecedent realisers.
    """
    ctx = ctx or CheckCtx()
    if free_vars(phi):
        raise ValueError("check_classical needs a sentence")
    return _check(r, phi, ctx)


def _check(r: int, phi: Formula, ctx: CheckCtx) -> Verdict3:
    if isinstance(phi, Bot):
        return refuted("nothing realises bot")
    if certified_false(phi, ctx):
        return refuted("the sentence is false")
    if isinstance(phi, (Eq, StepHalt, HaltOut)):
        return REALISED if holds(phi) else refuted("false atom")
    if isinstance(phi, And):
        parts = []
        for i, part in enumerate((phi.left, phi.right)):
            sub = _run(r, i, ctx)
            parts.append(sub if isinstance(sub, Verdict3) else _check(sub, part, ctx))
            if parts[-1].refuted:
                break
        return conjoin(parts)
    if isinstance(phi, Or):
        index = _run(r, 0, ctx)
        if isinstance(index, Verdict3):
            return index
        if index not in (0, 1):
            return refuted(f"disjunct index {index} is neither 0 nor 1")
        sub = _run(r, 1, ctx)
        if isinstance(sub, Verdict3):
            return sub
        return _check(sub, phi.left if index == 0 else phi.right, ctx)
    if isinstance(phi, (Exists, ExistsLt)):
        n = _run(r, 1, ctx)
        if isinstance(n, Verdict3):
            return n
        if isinstance(phi, ExistsLt) and n >= eval_term(phi.bound):
            return refuted(f"witness {n} is not below the bound")
        sub = _run(r, 0, ctx)
        if isinstance(sub, Verdict3):
            return sub
        return _check(sub, instance(phi, n), ctx)
    if isinstance(phi, (Forall, ForallLt)):
        bounded = isinstance(phi, Forall)
        count = ctx.forall_budget if bounded else eval_term(phi.bound)
        over = not bounded and count > MAX_BOUNDED_INSTANCES
        results = [unknown(f"more than {MAX_BOUNDED_INSTANCES} instances")] if over else []
        for n in range(MAX_BOUNDED_INSTANCES if over else count):
            sub = _run(r, n, ctx)
            results.append(sub if isinstance(sub, Verdict3) else _check(sub, instance(phi, n), ctx))
            if results[-1].refuted:
                break
        v = conjoin(results)
        return v.flagged(BOUNDED) if bounded and not v.refuted else v
    if isinstance(phi, Imp):
        if certified_false(phi.left, ctx):
            return REALISED.flagged(VACUOUS)
        witnesses = classical_witnesses(phi.left, ctx)
        if not witnesses:
            return unknown("no known realiser of the antecedent")
        results = []
        for s, _ in witnesses:
            sub = _run(r, s, ctx)
            results.append(sub if isinstance(sub, Verdict3) else _check(sub, phi.right, ctx))
            if results[-1].refuted:
                break
        return conjoin(results).flagged(WITNESS_RELATIVE)
    raise TypeError(f"not a formula: {phi!r}")


@dataclass(frozen=True)
class TruthReport:
    formula: Formula
    truth: TruthVerdict
    synthesized: bool
    verdict: Verdict3 | None
    agree: bool | None  # None when truth was not decided


def truth_iff_realised(phi: Formula, ctx: CheckCtx | None = None) -> TruthReport:
    """Compare truth with synthesis-plus-check on a pretty Σ₁ or universal Π₁ sentence."""
    ctx = ctx or CheckCtx()
    truth = eval_truth(phi, ctx.truth_budget)
    cls = classify(phi)
    if cls is SentenceClass.OTHER:
        raise ValueError("truth_iff_realised needs a pretty Σ₁ or universal Π₁ sentence")
    if cls is SentenceClass.UNIVERSAL_PI1:
        code: int | OutOfFuel = synth_pi1(phi)
    else:
        code = synth_sigma1(phi, ctx.fuel)
    if not isinstance(code, int):
        realised = False
        verdict = None
    else:
        verdict = check_classical(code, phi, ctx)
        realised = verdict.status is Status.REALISED
    if truth is TruthVerdict.UNKNOWN:
        agree = None
    else:
        agree = (truth is TruthVerdict.TRUE) == realised
    return TruthReport(phi, truth, isinstance(code, int), verdict, agree)
