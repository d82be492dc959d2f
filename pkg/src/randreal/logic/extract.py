"""Realiser extraction from Hilbert derivations.

Every node gets a *core*: a code that does not depend on the values of the
free variables of its conclusion.  Cores of axioms are fixed combinators;
MP applies the major core to the minor one.  The realiser of the universal
closure of the conclusion then ignores each closure argument in turn.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..formula import ATOMS, Formula, closure, eval_term, free_vars, term_vars
from ..machine import named as N
from ..machine.codec import encode
from ..machine.cylinder import smn
from ..machine.prelude import PAIR, const_code, n_const, n_pair, n_smn
from ..machine.terms import Num
from ..mu.check import check_mu
from ..mu.report import MuVerdict
from ..mu.wrap import EVEN_VIEW, ODD_VIEW, View, wrapper_code
from ..realisability.compile import closure_code, pinned
from ..realisability.context import CheckCtx
from .proofs import Axiom, AxiomSchema, ExistsGen, ForallGen, MP, ProofTree, check_proof

ANY_CODE = encode(Num(0))


class ExtractError(ValueError):
    """The derivation uses a rule instance outside what extraction supports."""


def _half(phi: Formula, name: str, view: View) -> N.NTerm:
    # run a component realiser on one half of the oracle
    if isinstance(phi, ATOMS):
        return N.var(name)
    return N.pin(N.num(wrapper_code(phi, view)), N.var(name))


def _axiom_core(ax: Axiom) -> int:
    s = ax.schema
    r, p, q, x = N.var("r"), N.var("p"), N.var("q"), N.var("s")
    if s is AxiomSchema.THEN1:
        return closure_code(["r"], n_const(r))
    if s is AxiomSchema.THEN2:
        body = N.run(N.run(r, x), N.run(p, x))
        return closure_code(["r"], pinned(["r", "p"], pinned(["r", "p", "s"], body)))
    if s is AxiomSchema.AND1:
        return closure_code(["r"], n_smn(r, N.num(0)))
    if s is AxiomSchema.AND2:
        return closure_code(["r"], n_smn(r, N.num(1)))
    if s is AxiomSchema.AND3:
        phi, chi = ax.formulas
        body = n_pair(_half(phi, "p", EVEN_VIEW), _half(chi, "r", ODD_VIEW))
        return closure_code(["p"], pinned(["p", "r"], body))
    if s is AxiomSchema.OR1:
        return closure_code(["r"], N.pin(N.num(PAIR), N.num(0), r))
    if s is AxiomSchema.OR2:
        return closure_code(["r"], N.pin(N.num(PAIR), N.num(1), r))
    if s is AxiomSchema.OR3:
        payload = n_smn(r, N.num(1))
        body = N.ifz(N.run(r, N.num(0)), N.run(p, payload), N.run(q, payload))
        return closure_code(["p"], pinned(["p", "q"], pinned(["p", "q", "r"], body)))
    if s is AxiomSchema.FALSE:
        return ANY_CODE
    if s in (AxiomSchema.PRED1, AxiomSchema.PRED2):
        if term_vars(ax.term):
            raise ExtractError(f"{s.value} needs a closed term")
        t = N.num(eval_term(ax.term))
        if s is AxiomSchema.PRED1:
            return closure_code(["r"], n_smn(r, t))
        return closure_code(["r"], n_pair(r, t))
    raise ExtractError(f"unsupported schema {s.value}")


def core(t: ProofTree) -> int:
    """Uniform realiser of the conclusion of ``t``, whatever its free variables stand for."""
    if isinstance(t, Axiom):
        return _axiom_core(t)
    if isinstance(t, MP):
        return smn(core(t.major), core(t.minor))
    if isinstance(t, ForallGen):
        # s ↦ the program answering the premise's output for every instance
        return closure_code(["s"], n_const(N.run(N.num(core(t.premise)), N.var("s"))))
    if isinstance(t, ExistsGen):
        return closure_code(["s"], N.run(N.num(core(t.premise)), n_smn(N.var("s"), N.num(0))))
    raise TypeError(f"not a proof: {t!r}")


@dataclass(frozen=True)
class Extraction:
    conclusion: Formula
    sentence: Formula  # universal closure of the conclusion
    code: int


def extract(t: ProofTree) -> Extraction:
    """Check ``t`` and extract a μ-realiser of the closure of its conclusion."""
    conclusion = check_proof(t)
    code = core(t)
    for _ in free_vars(conclusion):
        code = const_code(code)
    return Extraction(conclusion, closure(conclusion), code)


def verify(e: Extraction, ctx: CheckCtx | None = None) -> MuVerdict:
    """Post-hoc check of an extracted realiser; implications are checked on known antecedent realisers."""
    return check_mu(e.code, e.sentence, None, ctx)
