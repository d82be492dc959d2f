"""Derived rules and a small corpus of Hilbert derivations."""

from __future__ import annotations

from ..formula import And, Bot, Eq, Exists, Formula, Imp, Numeral, Or, Plus, Var, Zero, numeral
from .proofs import Axiom, AxiomSchema as S, ExistsGen, ForallGen, MP, ProofTree, check_proof


def identity(phi: Formula) -> ProofTree:
    """The five-node derivation of ``φ → φ``."""
    step = MP(Axiom(S.THEN1, (phi, Imp(phi, phi))), Axiom(S.THEN2, (phi, Imp(phi, phi), phi)))
    return MP(Axiom(S.THEN1, (phi, phi)), step)


def compose(xy: ProofTree, yz: ProofTree) -> ProofTree:
    """From ``X → Y`` and ``Y → Z`` derive ``X → Z``."""
    a, b = check_proof(xy), check_proof(yz)
    x, y, z = a.left, a.right, b.right
    lifted = MP(yz, Axiom(S.THEN1, (b, x)))
    return MP(xy, MP(lifted, Axiom(S.THEN2, (x, y, z))))


def and_commute(phi: Formula, chi: Formula) -> ProofTree:
    """``φ ∧ χ → χ ∧ φ``."""
    a = And(phi, chi)
    b = And(chi, phi)
    to_pair = compose(Axiom(S.AND2, (phi, chi)), Axiom(S.AND3, (chi, phi)))  # A → (φ → B)
    return MP(Axiom(S.AND1, (phi, chi)), MP(to_pair, Axiom(S.THEN2, (a, phi, b))))


def ex_falso_chain(phi: Formula, chi: Formula) -> ProofTree:
    """``⊥ → (χ → φ)``."""
    return compose(Axiom(S.FALSE, (phi,)), Axiom(S.THEN1, (phi, chi)))


def or_idempotent(phi: Formula) -> ProofTree:
    """``φ ∨ φ → φ``."""
    return MP(identity(phi), MP(identity(phi), Axiom(S.OR3, (phi, phi, phi))))


def corpus() -> dict[str, ProofTree]:
    top = Eq(Zero(), Zero())
    one = Eq(numeral(1), numeral(1))
    x = Var("x")
    two = Exists("x", Eq(x, numeral(2)))
    return {
        "identity": identity(top),
        "identity-exists": identity(two),
        "and-commute": and_commute(top, one),
        "and-commute-exists": and_commute(two, top),
        "ex-falso": Axiom(S.FALSE, (Eq(Zero(), numeral(1)),)),
        "ex-falso-chain": ex_falso_chain(Eq(Zero(), numeral(1)), top),
        "pred1": Axiom(S.PRED1, (Eq(Plus(x, Zero()), x),), "x", Numeral(3)),
        "pred2": Axiom(S.PRED2, (Eq(x, numeral(2)),), "x", Numeral(2)),
        "forall-gen": ForallGen(Axiom(S.THEN1, (top, Eq(x, x))), "x"),
        "exists-gen": ExistsGen(Axiom(S.AND2, (Eq(x, numeral(2)), top)), "x"),
        "and-pair": Axiom(S.AND3, (two, one)),
        "or-intro": Axiom(S.OR2, (Eq(Zero(), numeral(1)), top)),
        "or-idempotent": or_idempotent(top),
        "then1-open": Axiom(S.THEN1, (Eq(x, x), Bot())),
        "and-first": Axiom(S.AND1, (top, Or(top, one))),
    }
