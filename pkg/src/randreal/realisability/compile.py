"""Compile Δ₀ formulas to RML.

Two compilations of a Δ₀ formula over named free variables:
``truth_expr`` evaluates to 1 or 0 according to truth, and
``realiser_expr`` evaluates to the code of a realiser, assuming the formula
is true at the current assignment.  Formula variables become RML variables
of the same name; generated helpers use names starting with ``%``.

Realiser conventions: a pair realiser answers its first component on input
0 and its second on input 1; ``∃x`` puts the realiser of the body at 0 and
the witness at 1; a bounded ``∀x<t`` realiser maps each ``n<t`` to a realiser
of the instance; bounded ``∃x<t`` is realised like ``∃x``.
"""

from __future__ import annotations

from functools import lru_cache

from ..formula import (
    And,
    Bot,
    Eq,
    ExistsLt,
    ForallLt,
    Formula,
    HaltOut,
    Imp,
    Numeral,
    Or,
    Plus,
    StepHalt,
    Succ,
    Term,
    Times,
    Var,
    Zero,
    free_vars,
    is_delta0,
    substitute,
    eval_term,
    holds,
)
from ..machine import named as N
from ..machine.codec import encode
from ..machine.prelude import ANY, const_code, n_add, n_const, n_eq, n_lt, n_mul, n_not, n_pair, pair_code
from ..machine.tables import get_table


def term_expr(t: Term) -> N.NTerm:
    if isinstance(t, Zero):
        return N.num(0)
    if isinstance(t, Numeral):
        return N.num(t.value)
    if isinstance(t, Var):
        return N.var(t.name)
    if isinstance(t, Succ):
        return N.succ(term_expr(t.arg))
    if isinstance(t, Plus):
        return n_add(term_expr(t.left), term_expr(t.right))
    if isinstance(t, Times):
        return n_mul(term_expr(t.left), term_expr(t.right))
    raise TypeError(f"not a term: {t!r}")


def _clocked(table: str, prog: Term, steps: Term) -> N.NTerm:
    """``Clock`` of ``p_k(k)``: answers output+1 if it halts within the step bound, else 0."""
    lookup = N.compile_named(get_table(table).lookup_term())
    k = term_expr(prog)
    return N.let("%k", k, N.clock(N.app(N.raw(lookup), N.var("%k")), N.var("%k"), term_expr(steps)))


def _search(var: str, bound: Term, body: N.NTerm, hit: N.NTerm, miss: N.NTerm) -> N.NTerm:
    """Loop ``var`` from 0 below ``bound``; answer ``hit`` at the first ``var`` where ``body`` is 0, else ``miss``."""
    loop = N.fix(
        "%f",
        var,
        N.ifz(n_lt(N.var(var), N.var("%b")), miss, N.ifz(body, hit, N.app(N.var("%f"), N.succ(N.var(var))))),
    )
    return N.let("%b", term_expr(bound), N.app(loop, N.num(0)))


def truth_expr(phi: Formula) -> N.NTerm:
    """Named RML expression answering 1 if ``phi`` holds at the current assignment, else 0."""
    if isinstance(phi, Bot):
        return N.num(0)
    if isinstance(phi, Eq):
        return n_eq(term_expr(phi.left), term_expr(phi.right))
    if isinstance(phi, StepHalt):
        return N.ifz(_clocked(phi.table, phi.prog, phi.steps), N.num(0), N.num(1))
    if isinstance(phi, HaltOut):
        return n_eq(_clocked(phi.table, phi.prog, phi.steps), N.succ(term_expr(phi.out)))
    if isinstance(phi, And):
        return N.ifz(truth_expr(phi.left), N.num(0), truth_expr(phi.right))
    if isinstance(phi, Or):
        return N.ifz(truth_expr(phi.left), truth_expr(phi.right), N.num(1))
    if isinstance(phi, Imp):
        return N.ifz(truth_expr(phi.left), N.num(1), truth_expr(phi.right))
    if isinstance(phi, ExistsLt):
        # stop at the first true instance
        return _search(phi.var, phi.bound, n_not(truth_expr(phi.body)), N.num(1), N.num(0))
    if isinstance(phi, ForallLt):
        # stop at the first false instance
        return _search(phi.var, phi.bound, truth_expr(phi.body), N.num(0), N.num(1))
    raise TypeError(f"not a Δ₀ formula: {phi!r}")


def closure_code(params: list[str], body: N.NTerm) -> int:
    """Code of the closed term ``λparams. body``."""
    return encode(N.compile_named(N.lam(params, body)))


def pinned(params: list[str], body: N.NTerm) -> N.NTerm:
    """Expression for the code of ``λparams[-1]. body`` with the other params bound to their current values."""
    code = closure_code(params, body)
    return N.pin(N.num(code), *(N.var(p) for p in params[:-1]))


def _env(phi: Formula, extra: str | None = None) -> list[str]:
    names = sorted(free_vars(phi) - ({extra} if extra else set()))
    return names + ([extra] if extra else [])


def realiser_expr(phi: Formula) -> N.NTerm:
    """Named RML expression evaluating to a realiser code of ``phi`` when it is true."""
    if isinstance(phi, (Bot, Eq, StepHalt, HaltOut)):
        return N.num(ANY)
    if isinstance(phi, And):
        return n_pair(realiser_expr(phi.left), realiser_expr(phi.right))
    if isinstance(phi, Or):
        return N.ifz(
            truth_expr(phi.left),
            n_pair(N.num(1), realiser_expr(phi.right)),
            n_pair(N.num(0), realiser_expr(phi.left)),
        )
    if isinstance(phi, Imp):
        # true implication: a false antecedent has no realiser, else answer the consequent's realiser
        return N.ifz(truth_expr(phi.left), N.num(ANY), n_const(realiser_expr(phi.right)))
    if isinstance(phi, ExistsLt):
        witness = _search(phi.var, phi.bound, n_not(truth_expr(phi.body)), N.var(phi.var), N.num(0))
        return N.let(phi.var, witness, n_pair(realiser_expr(phi.body), N.var(phi.var)))
    if isinstance(phi, ForallLt):
        return pinned(_env(phi.body, phi.var), realiser_expr(phi.body))
    raise TypeError(f"not a Δ₀ formula: {phi!r}")


@lru_cache(maxsize=50_000)
def delta0_realiser(phi: Formula) -> int:
    """Realiser code of a true closed Δ₀ sentence, built at meta level."""
    if free_vars(phi) or not is_delta0(phi):
        raise ValueError("delta0_realiser needs a closed Δ₀ sentence")
    if isinstance(phi, (Bot, Eq, StepHalt, HaltOut)):
        return ANY
    if isinstance(phi, And):
        return pair_code(delta0_realiser(phi.left), delta0_realiser(phi.right))
    if isinstance(phi, Or):
        if holds(phi.left):
            return pair_code(0, delta0_realiser(phi.left))
        return pair_code(1, delta0_realiser(phi.right))
    if isinstance(phi, Imp):
        if not holds(phi.left):
            return ANY
        return const_code(delta0_realiser(phi.right))
    if isinstance(phi, ExistsLt):
        for n in range(eval_term(phi.bound)):
            inst = substitute(phi.body, phi.var, n)
            if holds(inst):
                return pair_code(delta0_realiser(inst), n)
        return ANY
    if isinstance(phi, ForallLt):
        return closure_code([phi.var], realiser_expr(phi.body))
    raise TypeError(f"not a Δ₀ formula: {phi!r}")

