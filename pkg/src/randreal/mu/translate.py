"""Translations between classical realisers and μ-realisers for the translation class."""

from __future__ import annotations

from dataclasses import dataclass

from ..formula import ClassError, Formula, SentenceClass, TruthVerdict, classify, eval_truth
from ..machine.interp import OutOfFuel
from ..realisability.classical import check_classical
from ..realisability.context import CheckCtx
from ..realisability.synth import synth_pi1, synth_sigma1
from .wrap import ZEROS_VIEW, wrap


def _require_class(phi: Formula) -> SentenceClass:
    cls = classify(phi)
    if cls is SentenceClass.OTHER:
        raise ClassError("translation needs a pretty Σ₁ or universal Π₁ sentence")
    return cls


def translate_Pmu(p: int, phi: Formula) -> int:
    """From a classical realiser of ``phi`` to a program μ-realising it with probability 1.

    The result runs ``p`` on the all-zeros view, recursively for every
    sub-realiser, so its behaviour does not depend on the oracle at all.
    """
    _require_class(phi)
    return wrap(p, phi, ZEROS_VIEW)


def translate_Pmu_inv(p: int, phi: Formula, ctx: CheckCtx | None = None) -> int | OutOfFuel:
    """From a μ-realiser of ``phi`` to a classical realiser.

    Realisability and truth coincide on the translation class, so a
    classical realiser is re-synthesized from ``phi``; ``p`` is returned
    unchanged when it already checks classically.
    """
    ctx = ctx or CheckCtx()
    cls = _require_class(phi)
    if check_classical(p, phi, ctx).realised:
        return p
    if cls is SentenceClass.UNIVERSAL_PI1:
        return synth_pi1(phi)
    return synth_sigma1(phi, ctx.fuel)


@dataclass(frozen=True)
class Certification:
    formula: Formula
    certified: bool
    ctx: CheckCtx
    reason: str


def vacuous_negation(phi: Formula, ctx: CheckCtx | None = None) -> Certification:
    """Certify that ``phi`` has no μ-realiser, so that every program μ-realises ``phi → ⊥``.

    Only a false sentence of the translation class can be certified, and only
    once its falsity is established.
    """
    ctx = ctx or CheckCtx()
    if classify(phi) is SentenceClass.OTHER:
        return Certification(phi, False, ctx, "outside the translation class")
    truth = eval_truth(phi, ctx.truth_budget)
    if truth is not TruthVerdict.FALSE:
        return Certification(phi, False, ctx, f"truth is {truth.value}")
    return Certification(phi, True, ctx.with_db(ctx.witness_db.certify(phi)), "false sentence")
