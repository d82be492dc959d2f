"""Hilbert-style intuitionistic derivations and their checker."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

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
    StepHalt,
    Term,
    formula_from_sexpr,
    free_vars,
    print_formula,
    print_term,
    subst_term,
    term_vars,
)
from ..formula import _term as term_from_sexpr
from ..sexpr import Atom, SExpr, SExprError, SList, read_one


class AxiomSchema(enum.Enum):
    THEN1 = "THEN1"
    THEN2 = "THEN2"
    AND1 = "AND1"
    AND2 = "AND2"
    AND3 = "AND3"
    OR1 = "OR1"
    OR2 = "OR2"
    OR3 = "OR3"
    FALSE = "FALSE"
    PRED1 = "PRED1"
    PRED2 = "PRED2"


# number of formula parameters; PRED schemas take (x, φ, t) instead
ARITY = {
    AxiomSchema.THEN1: 2, AxiomSchema.THEN2: 3, AxiomSchema.AND1: 2, AxiomSchema.AND2: 2,
    AxiomSchema.AND3: 2, AxiomSchema.OR1: 2, AxiomSchema.OR2: 2, AxiomSchema.OR3: 3, AxiomSchema.FALSE: 1,
}


class ProofError(ValueError):
    def __init__(self, node: "ProofTree", rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.node = node
        self.rule = rule
        self.message = message


@dataclass(frozen=True)
class Axiom:
    schema: AxiomSchema
    formulas: tuple[Formula, ...] = ()
    var: str | None = None  # PRED schemas only
    term: Term | None = None  # PRED schemas only


@dataclass(frozen=True)
class MP:
    """From a proof of ``φ`` (``minor``) and of ``φ → ψ`` (``major``) infer ``ψ``."""

    minor: "ProofTree"
    major: "ProofTree"


@dataclass(frozen=True)
class ForallGen:
    """From ``ψ → φ`` infer ``ψ → ∀x φ`` when ``x`` is not free in ``ψ``."""

    premise: "ProofTree"
    var: str


@dataclass(frozen=True)
class ExistsGen:
    """From ``φ → ψ`` infer ``(∃x φ) → ψ`` when ``x`` is not free in ``ψ``."""

    premise: "ProofTree"
    var: str


ProofTree = Union[Axiom, MP, ForallGen, ExistsGen]


def _bound_vars_above_free(phi: Formula, x: str, bound: frozenset[str] = frozenset()) -> frozenset[str]:
    """Variables bound at some free occurrence of ``x`` in ``phi``."""
    if isinstance(phi, Bot):
        return frozenset()
    if isinstance(phi, Eq):
        hit = x in term_vars(phi.left) | term_vars(phi.right)
        return bound if hit else frozenset()
    if isinstance(phi, (StepHalt, HaltOut)):
        return bound if x in free_vars(phi) else frozenset()
    if isinstance(phi, (And, Or, Imp)):
        return _bound_vars_above_free(phi.left, x, bound) | _bound_vars_above_free(phi.right, x, bound)
    if isinstance(phi, (Exists, Forall, ExistsLt, ForallLt)):
        out = frozenset()
        if isinstance(phi, (ExistsLt, ForallLt)) and x in term_vars(phi.bound):
            out = bound
        if phi.var == x:
            return out
        return out | _bound_vars_above_free(phi.body, x, bound | {phi.var})
    raise TypeError(f"not a formula: {phi!r}")


def free_for(t: Term, x: str, phi: Formula) -> bool:
    """No variable of ``t`` gets captured when ``t`` replaces the free ``x`` in ``phi``."""
    return not (term_vars(t) & _bound_vars_above_free(phi, x))


def subst(phi: Formula, x: str, t: Term) -> Formula:
    """Replace the free ``x`` by ``t``; callers check :func:`free_for` first."""
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Eq):
        return Eq(subst_term(phi.left, x, t), subst_term(phi.right, x, t))
    if isinstance(phi, StepHalt):
        return StepHalt(phi.table, subst_term(phi.prog, x, t), subst_term(phi.steps, x, t))
    if isinstance(phi, HaltOut):
        return HaltOut(phi.table, subst_term(phi.prog, x, t), subst_term(phi.steps, x, t), subst_term(phi.out, x, t))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(subst(phi.left, x, t), subst(phi.right, x, t))
    if isinstance(phi, (Exists, Forall)):
        return phi if phi.var == x else type(phi)(phi.var, subst(phi.body, x, t))
    if isinstance(phi, (ExistsLt, ForallLt)):
        body = phi.body if phi.var == x else subst(phi.body, x, t)
        return type(phi)(phi.var, subst_term(phi.bound, x, t), body)
    raise TypeError(f"not a formula: {phi!r}")


def axiom_formula(ax: Axiom) -> Formula:
    s = ax.schema
    if s in (AxiomSchema.PRED1, AxiomSchema.PRED2):
        if len(ax.formulas) != 1 or ax.var is None or ax.term is None:
            raise ProofError(ax, s.value, "needs a variable, a formula and a term")
        phi = ax.formulas[0]
        if not free_for(ax.term, ax.var, phi):
            raise ProofError(ax, s.value, f"term is not free for {ax.var} in the formula")
        inst = subst(phi, ax.var, ax.term)
        if s is AxiomSchema.PRED1:
            return Imp(Forall(ax.var, phi), inst)
        return Imp(inst, Exists(ax.var, phi))
    if len(ax.formulas) != ARITY[s]:
        raise ProofError(ax, s.value, f"takes {ARITY[s]} formula(s), got {len(ax.formulas)}")
    f = ax.formulas
    if s is AxiomSchema.THEN1:
        return Imp(f[0], Imp(f[1], f[0]))
    if s is AxiomSchema.THEN2:
        phi, chi, psi = f
        return Imp(Imp(phi, Imp(chi, psi)), Imp(Imp(phi, chi), Imp(phi, psi)))
    if s is AxiomSchema.AND1:
        return Imp(And(f[0], f[1]), f[0])
    if s is AxiomSchema.AND2:
        return Imp(And(f[0], f[1]), f[1])
    if s is AxiomSchema.AND3:
        return Imp(f[0], Imp(f[1], And(f[0], f[1])))
    if s is AxiomSchema.OR1:
        return Imp(f[0], Or(f[0], f[1]))
    if s is AxiomSchema.OR2:
        return Imp(f[1], Or(f[0], f[1]))
    if s is AxiomSchema.OR3:
        phi, chi, psi = f
        return Imp(Imp(phi, psi), Imp(Imp(chi, psi), Imp(Or(phi, chi), psi)))
    if s is AxiomSchema.FALSE:
        return Imp(Bot(), f[0])
    raise ProofError(ax, s.value, "unknown schema")


def check_proof(t: ProofTree) -> Formula:
    """Conclusion of a well-formed derivation; raises :class:`ProofError` naming the bad node.

    A conclusion with free variables stands for its universal closure.
    """
    if isinstance(t, Axiom):
        return axiom_formula(t)
    if isinstance(t, MP):
        minor = check_proof(t.minor)
        major = check_proof(t.major)
        if not isinstance(major, Imp):
            raise ProofError(t, "MP", "major premise is not an implication")
        if major.left != minor:
            raise ProofError(t, "MP", "minor premise does not match the antecedent")
        return major.right
    if isinstance(t, ForallGen):
        prem = check_proof(t.premise)
        if not isinstance(prem, Imp):
            raise ProofError(t, "ForallGen", "premise is not an implication")
        if t.var in free_vars(prem.left):
            raise ProofError(t, "ForallGen", f"{t.var} is free in the antecedent")
        return Imp(prem.left, Forall(t.var, prem.right))
    if isinstance(t, ExistsGen):
        prem = check_proof(t.premise)
        if not isinstance(prem, Imp):
            raise ProofError(t, "ExistsGen", "premise is not an implication")
        if t.var in free_vars(prem.right):
            raise ProofError(t, "ExistsGen", f"{t.var} is free in the consequent")
        return Imp(Exists(t.var, prem.left), prem.right)
    raise TypeError(f"not a proof: {t!r}")


# ---------------------------------------------------------------- syntax


def print_proof(t: ProofTree) -> str:
    if isinstance(t, Axiom):
        if t.schema in (AxiomSchema.PRED1, AxiomSchema.PRED2):
            return f"(axiom {t.schema.value} {t.var} {print_formula(t.formulas[0])} {print_term(t.term)})"
        return "(axiom " + " ".join([t.schema.value, *map(print_formula, t.formulas)]) + ")"
    if isinstance(t, MP):
        return f"(mp {print_proof(t.minor)} {print_proof(t.major)})"
    if isinstance(t, ForallGen):
        return f"(forall-gen {print_proof(t.premise)} {t.var})"
    if isinstance(t, ExistsGen):
        return f"(exists-gen {print_proof(t.premise)} {t.var})"
    raise TypeError(f"not a proof: {t!r}")


def _proof(expr: SExpr) -> ProofTree:
    if not isinstance(expr, SList) or not expr.items or not isinstance(expr.items[0], Atom):
        raise SExprError("expected a proof form", expr.offset)
    tag = expr.items[0].text
    args = expr.items[1:]
    if tag == "axiom":
        if not args or not isinstance(args[0], Atom):
            raise SExprError("axiom needs a schema name", expr.offset)
        try:
            schema = AxiomSchema(args[0].text.upper().replace("-", ""))
        except ValueError:
            raise SExprError(f"unknown axiom schema {args[0].text!r}", args[0].offset) from None
        rest = args[1:]
        if schema in (AxiomSchema.PRED1, AxiomSchema.PRED2):
            if len(rest) != 3 or not isinstance(rest[0], Atom):
                raise SExprError(f"{schema.value} takes a variable, a formula and a term", expr.offset)
            return Axiom(schema, (formula_from_sexpr(rest[1]),), rest[0].text, term_from_sexpr(rest[2]))
        return Axiom(schema, tuple(formula_from_sexpr(a) for a in rest))
    if tag == "mp" and len(args) == 2:
        return MP(_proof(args[0]), _proof(args[1]))
    if tag in ("forall-gen", "exists-gen") and len(args) == 2 and isinstance(args[1], Atom):
        cls = ForallGen if tag == "forall-gen" else ExistsGen
        return cls(_proof(args[0]), args[1].text)
    raise SExprError(f"bad proof form {tag!r}", expr.offset)


def parse_proof(text: str) -> ProofTree:
    return _proof(read_one(text))
