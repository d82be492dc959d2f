"""Translations between classical realisers and F-realisers for co-interval-free F."""

from __future__ import annotations

from ..formula import (
    ATOMS,
    And,
    ClassError,
    Exists,
    ExistsLt,
    Forall,
    ForallLt,
    Formula,
    Imp,
    Or,
    SentenceClass,
    classify,
    eval_term,
    holds,
    instance,
    is_delta0,
)
from ..machine.prelude import ANY, const_code, pair_code
from ..mu.wrap import ZEROS_VIEW, wrap
from ..realisability.compile import delta0_realiser
from ..realisability.synth import synth_pi1, table_code
from .search import Exhausted, bounded_exhaustive_search


class SearchExhausted(RuntimeError):
    """A bounded exhaustive search found no halting string; carries where it gave up."""

    def __init__(self, formula: Formula, arg: int, max_k: int):
        super().__init__(f"search on input {arg} exhausted at k={max_k}")
        self.formula = formula
        self.arg = arg
        self.max_k = max_k


def translate_PF(p: int, phi: Formula) -> int:
    """From a classical realiser to an F-realiser: run ``p`` on the all-zeros view.

    The result behaves the same on every oracle, so it works on the whole
    space, which belongs to every family.
    """
    return wrap(p, phi, ZEROS_VIEW)


def _search(p: int, arg: int, phi: Formula, max_k: int) -> int:
    found = bounded_exhaustive_search(p, arg, max_k)
    if isinstance(found, Exhausted):
        raise SearchExhausted(phi, arg, max_k)
    return found.value


def translate_PF_inv(p: int, phi: Formula, max_k: int = 100_000) -> int:
    """From an F-realiser to a classical realiser, reading every oracle-dependent value by search.

    An unbounded ``∀`` would need the search inside the program; for a Δ₀
    body the classical realiser is re-synthesized instead.
    """
    if isinstance(phi, ATOMS):
        return p
    if isinstance(phi, And):
        return pair_code(
            translate_PF_inv(_search(p, 0, phi.left, max_k), phi.left, max_k),
            translate_PF_inv(_search(p, 1, phi.right, max_k), phi.right, max_k),
        )
    if isinstance(phi, Or):
        i = _search(p, 0, phi, max_k)
        if i not in (0, 1):
            raise ValueError(f"disjunct index {i} is neither 0 nor 1")
        part = phi.left if i == 0 else phi.right
        return pair_code(i, translate_PF_inv(_search(p, 1, part, max_k), part, max_k))
    if isinstance(phi, (Exists, ExistsLt)):
        n = _search(p, 1, phi, max_k)
        body = instance(phi, n)
        return pair_code(translate_PF_inv(_search(p, 0, body, max_k), body, max_k), n)
    if isinstance(phi, ForallLt):
        parts = []
        for n in range(eval_term(phi.bound)):
            body = instance(phi, n)
            parts.append(translate_PF_inv(_search(p, n, body, max_k), body, max_k))
        return table_code(parts)
    if isinstance(phi, Forall):
        if classify(phi) is SentenceClass.UNIVERSAL_PI1:
            return synth_pi1(phi)
        raise ClassError("inverse translation of an unbounded ∀ needs a universal Π₁ sentence")
    if isinstance(phi, Imp):
        if not is_delta0(phi.left):
            raise ClassError("inverse translation handles implications with a Δ₀ antecedent only")
        if not holds(phi.left):
            return ANY
        # feed the F-version of the canonical antecedent realiser
        s = translate_PF(delta0_realiser(phi.left), phi.left)
        return const_code(translate_PF_inv(_search(p, s, phi.right, max_k), phi.right, max_k))
    raise TypeError(f"not a formula: {phi!r}")
