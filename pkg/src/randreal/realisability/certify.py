"""Certificates that a sentence has no realiser at all.

A false pretty Σ₁ or universal Π₁ sentence has no realiser for any oracle;
this extends to conjunctions with such a conjunct and disjunctions of two
such disjuncts.  Nothing else is certified.
"""

from __future__ import annotations

from functools import lru_cache

from ..formula import And, Bot, Formula, Or, SentenceClass, TruthVerdict, classify, eval_truth, free_vars
from .context import CheckCtx


@lru_cache(maxsize=100_000)
def _false_in_class(phi: Formula, truth_budget: int) -> bool:
    if free_vars(phi) or classify(phi) is SentenceClass.OTHER:
        return False
    return eval_truth(phi, truth_budget) is TruthVerdict.FALSE


@lru_cache(maxsize=100_000)
def _true_in_class(phi: Formula, truth_budget: int) -> bool:
    if free_vars(phi) or classify(phi) is SentenceClass.OTHER:
        return False
    return eval_truth(phi, truth_budget) is TruthVerdict.TRUE


def certified_false(phi: Formula, ctx: CheckCtx) -> bool:
    """``phi`` provably has no (oracle) realiser."""
    if isinstance(phi, Bot) or ctx.witness_db.is_certified(phi):
        return True
    if isinstance(phi, And):
        return certified_false(phi.left, ctx) or certified_false(phi.right, ctx)
    if isinstance(phi, Or):
        return certified_false(phi.left, ctx) and certified_false(phi.right, ctx)
    return _false_in_class(phi, ctx.truth_budget)


def certified_true(phi: Formula, ctx: CheckCtx) -> bool:
    """``phi`` is in the translation class and decided true."""
    return _true_in_class(phi, ctx.truth_budget)
