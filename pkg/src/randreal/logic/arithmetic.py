"""Arithmetic on top of the calculus: HA⁻, Δ₀ induction and two counterexamples."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from ..formula import (
    And,
    ClassError,
    Eq,
    Forall,
    ForallLt,
    Formula,
    Imp,
    Not,
    Or,
    Plus,
    Succ,
    Term,
    Times,
    TruthVerdict,
    Var,
    Zero,
    eval_truth,
    free_vars,
    halts,
    is_delta0,
    numeral,
)
from ..machine import named as N
from ..machine.codec import encode
from ..machine.prelude import ANY, const_code, pair_code
from ..machine.tables import get_table
from ..mu.translate import translate_Pmu
from ..realisability.context import CheckCtx, Provenance
from ..realisability.synth import synth_pi1, synth_sigma1
from .proofs import subst

x, y = Var("x"), Var("y")  # shorthand for the axiom list


class HAAxiom(enum.Enum):
    SUCC_NONZERO = "succ-nonzero"
    SUCC_INJECTIVE = "succ-injective"
    PLUS_ZERO = "plus-zero"
    PLUS_SUCC = "plus-succ"
    TIMES_ZERO = "times-zero"
    TIMES_SUCC = "times-succ"

    @property
    def formula(self) -> Formula:
        return _HA_FORMULAS[self]


_HA_FORMULAS = {
    HAAxiom.SUCC_NONZERO: Forall("x", Not(Eq(Succ(x), Zero()))),
    HAAxiom.SUCC_INJECTIVE: Forall("x", Forall("y", Imp(Eq(Succ(x), Succ(y)), Eq(x, y)))),
    HAAxiom.PLUS_ZERO: Forall("x", Eq(Plus(x, Zero()), x)),
    HAAxiom.PLUS_SUCC: Forall("x", Forall("y", Eq(Plus(x, Succ(y)), Succ(Plus(x, y))))),
    HAAxiom.TIMES_ZERO: Forall("x", Eq(Times(x, Zero()), Zero())),
    HAAxiom.TIMES_SUCC: Forall("x", Forall("y", Eq(Times(x, Succ(y)), Plus(Times(x, y), x)))),
}


@dataclass(frozen=True)
class Induction:
    """The instance ``φ(0) ∧ ∀x(φ(x) → φ(Sx)) → ∀x φ(x)`` for a Δ₀ ``φ`` with only ``var`` free."""

    body: Formula
    var: str = "x"

    def __post_init__(self) -> None:
        if not is_delta0(self.body):
            raise ClassError("induction is restricted to Δ₀ formulas")
        if free_vars(self.body) - {self.var}:
            raise ValueError("the induction formula may only have the induction variable free")

    @property
    def conclusion(self) -> Formula:
        return Forall(self.var, self.body)

    @property
    def formula(self) -> Formula:
        v = Var(self.var)
        base = subst(self.body, self.var, Zero())
        step = Forall(self.var, Imp(self.body, subst(self.body, self.var, Succ(v))))
        return Imp(And(base, step), self.conclusion)


def ha_minus_realiser(a: HAAxiom) -> int:
    """The universal Π₁ axiom's classical realiser through the μ translation."""
    return translate_Pmu(synth_pi1(a.formula), a.formula)


def delta0_induction_realiser(phi: Formula | Induction, var: str = "x") -> int:
    """Ignore the antecedent and hand out a μ-realiser of ``∀x φ``.

    When ``∀x φ`` is false so is the antecedent, and every program realises
    the instance vacuously.
    """
    inst = phi if isinstance(phi, Induction) else Induction(phi, var)
    goal = inst.conclusion
    return const_code(translate_Pmu(synth_pi1(goal), goal))


# ---------------------------------------------------------------- counterexamples


def halting_formula(table: str, prog: Term) -> Formula:
    """``∃l StepHalt(table, prog, l)``."""
    return halts(table, prog)


def lem_body(table: str, prog: Term) -> Formula:
    h = halting_formula(table, prog)
    return Or(h, Not(h))


def induction_formula(n: int, table: str = "mixed") -> Formula:
    """``∀i<n (H(i) ∨ ¬H(i))``: excluded middle for halting, up to ``n``."""
    return ForallLt("i", numeral(n), lem_body(table, Var("i")))


def _search_realiser(table: str) -> int:
    """``λi.λj.`` a realiser of ``∃l halt(i,l)`` by unbounded search on the clock."""
    lookup = N.compile_named(get_table(table).lookup_term())
    clocked = N.clock(N.app(N.raw(lookup), N.var("i")), N.var("i"), N.var("%l"))
    search = N.app(N.fix("%s", "%l", N.ifz(clocked, N.app(N.var("%s"), N.succ(N.var("%l"))), N.var("%l"))), N.num(0))
    return encode(N.compile_named(N.lam(["i", "j"], N.ifz(N.var("j"), N.num(ANY), search))))


@lru_cache(maxsize=None)
def induction_realiser(table: str = "mixed") -> int:
    """``λi.`` the disjunct chosen by oracle bit ``i``: halting on 0, not halting on 1.

    Each bit is right for exactly one value, so the realiser works for the
    first ``n`` programs with probability ``2^-n``.
    """
    search = _search_realiser(table)
    left = encode(N.compile_named(N.lam(["i", "x"], N.ifz(N.var("x"), N.num(0), N.pin(N.num(search), N.var("i"))))))
    body = N.ifz(N.oracle(N.var("i")), N.pin(N.num(left), N.var("i")), N.num(pair_code(1, ANY)))
    return encode(N.compile_named(N.lam("i", body)))


@dataclass(frozen=True)
class InductionCounterexample:
    n: int
    formula: Formula  # φ(n)
    realiser: int  # p_n
    step: Formula  # φ(n) → φ(n+1)
    step_realiser: int

    def step_ctx(self, ctx: CheckCtx | None = None) -> CheckCtx:
        """Context that knows ``p_n`` as a μ-realiser of ``φ(n)``."""
        ctx = ctx or CheckCtx()
        return ctx.with_witness(self.formula, self.realiser, Provenance.DERIVED)


def induction_counterexample(n: int, table: str = "mixed") -> InductionCounterexample:
    """``φ(n)`` with its realiser, and the step ``φ(n) → φ(n+1)`` realised by ignoring the premise."""
    if n < 0:
        raise ValueError("n must be a natural number")
    p = induction_realiser(table)
    phi, nxt = induction_formula(n, table), induction_formula(n + 1, table)
    return InductionCounterexample(n, phi, p, Imp(phi, nxt), const_code(p))


def lem_instance(k: int | None = None, table: str = "enum") -> Formula:
    """``H(k) ∨ ¬H(k)`` for ``p_k(k)``, or the full ``∀x`` sentence when ``k`` is None."""
    if k is None:
        return Forall("x", lem_body(table, Var("x")))
    return lem_body(table, numeral(k))


def lem_realiser(k: int, table: str = "enum", fuel: int = 10_000) -> int | None:
    """Realiser of one instance, or None when ``fuel`` cannot settle the halting question."""
    h = halting_formula(table, numeral(k))
    truth = eval_truth(h, halt_fuel=fuel)
    if truth is TruthVerdict.TRUE:
        code = synth_sigma1(h, fuel)
        return pair_code(0, translate_Pmu(code, h)) if isinstance(code, int) else None
    if truth is TruthVerdict.FALSE:
        return pair_code(1, ANY)
    return None
