"""First-order arithmetic: terms, formulas, s-expression syntax, classification and truth.

The signature is ``0, S, +, ×, =`` plus two decidable atoms about programs of
a named table: ``(halt T k l)`` says ``p_k(k)`` halts within ``l`` steps and
``(halt-out T k l n)`` says it does so with output ``n``.  Both run the
machine on the all-zeros oracle, so they are Δ₀.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .sexpr import Atom, SExpr, SExprError, read_one

# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Numeral:
    """Compact stand-in for ``S^value(0)``; ``value`` is at least 1 (``0`` is :class:`Zero`)."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("use Zero() for the numeral 0")


Term = Union[Zero, Succ, Var, Plus, Times, Numeral]


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are naturals")
    return Zero() if n == 0 else Numeral(n)


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Succ):
        return term_vars(t.arg)
    if isinstance(t, (Plus, Times)):
        return term_vars(t.left) | term_vars(t.right)
    return frozenset()


def eval_term(t: Term, env: Mapping[str, int] | None = None) -> int:
    env = env or {}
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Numeral):
        return t.value
    if isinstance(t, Succ):
        return eval_term(t.arg, env) + 1
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariableError(t.name) from None
    if isinstance(t, Plus):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Times):
        return eval_term(t.left, env) * eval_term(t.right, env)
    raise TypeError(f"not a term: {t!r}")


def subst_term(t: Term, x: str, value: Term) -> Term:
    if isinstance(t, Var):
        return value if t.name == x else t
    if isinstance(t, Succ):
        return Succ(subst_term(t.arg, x, value))
    if isinstance(t, Plus):
        return Plus(subst_term(t.left, x, value), subst_term(t.right, x, value))
    if isinstance(t, Times):
        return Times(subst_term(t.left, x, value), subst_term(t.right, x, value))
    return t


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


def _check_bound(var: str, bound: Term) -> None:
    if var in term_vars(bound):
        raise ValueError(f"bound of a bounded quantifier mentions its own variable {var!r}")


@dataclass(frozen=True)
class ExistsLt:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self) -> None:
        _check_bound(self.var, self.bound)


@dataclass(frozen=True)
class ForallLt:
    var: str
    bound: Term
    body: "Formula"

    def __post_init__(self) -> None:
        _check_bound(self.var, self.bound)


@dataclass(frozen=True)
class StepHalt:
    """``p_prog(prog)`` of table ``table`` halts within ``steps`` steps."""

    table: str
    prog: Term
    steps: Term


@dataclass(frozen=True)
class HaltOut:
    """``p_prog(prog)`` halts within ``steps`` steps with output ``out``."""

    table: str
    prog: Term
    steps: Term
    out: Term


Formula = Union[Bot, Eq, And, Or, Imp, Exists, Forall, ExistsLt, ForallLt, StepHalt, HaltOut]
ATOMS = (Bot, Eq, StepHalt, HaltOut)
QUANTIFIERS = (Exists, Forall, ExistsLt, ForallLt)


def Not(phi: Formula) -> Formula:
    return Imp(phi, Bot())


def is_negation(phi: Formula) -> bool:
    return isinstance(phi, Imp) and isinstance(phi.right, Bot)


def halts(table: str, prog: Term, var: str = "l") -> Formula:
    """``∃l StepHalt(table, prog, l)``: the program halts at all."""
    return Exists(var, StepHalt(table, prog, Var(var)))


class UnboundVariableError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class ClassError(ValueError):
    """A formula is outside the syntactic class an operation requires."""


def free_vars(phi: Formula) -> frozenset[str]:
    if isinstance(phi, Bot):
        return frozenset()
    if isinstance(phi, Eq):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, StepHalt):
        return term_vars(phi.prog) | term_vars(phi.steps)
    if isinstance(phi, HaltOut):
        return term_vars(phi.prog) | term_vars(phi.steps) | term_vars(phi.out)
    if isinstance(phi, (And, Or, Imp)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - {phi.var}
    if isinstance(phi, (ExistsLt, ForallLt)):
        return term_vars(phi.bound) | (free_vars(phi.body) - {phi.var})
    raise TypeError(f"not a formula: {phi!r}")


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def substitute_term(phi: Formula, x: str, value: Term) -> Formula:
    """Replace free ``x`` by a closed term (always capture-free)."""
    if term_vars(value):
        raise ValueError("only closed terms are substituted")
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Eq):
        return Eq(subst_term(phi.left, x, value), subst_term(phi.right, x, value))
    if isinstance(phi, StepHalt):
        return StepHalt(phi.table, subst_term(phi.prog, x, value), subst_term(phi.steps, x, value))
    if isinstance(phi, HaltOut):
        return HaltOut(
            phi.table,
            subst_term(phi.prog, x, value),
            subst_term(phi.steps, x, value),
            subst_term(phi.out, x, value),
        )
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(substitute_term(phi.left, x, value), substitute_term(phi.right, x, value))
    if isinstance(phi, (Exists, Forall)):
        if phi.var == x:
            return phi
        return type(phi)(phi.var, substitute_term(phi.body, x, value))
    if isinstance(phi, (ExistsLt, ForallLt)):
        bound = subst_term(phi.bound, x, value)
        body = phi.body if phi.var == x else substitute_term(phi.body, x, value)
        return type(phi)(phi.var, bound, body)
    raise TypeError(f"not a formula: {phi!r}")


def substitute(phi: Formula, x: str, n: int) -> Formula:
    """Replace every free occurrence of ``x`` by the numeral ``n``."""
    return substitute_term(phi, x, numeral(n))


def instance(phi: Formula, n: int) -> Formula:
    """Body of a quantified formula with its variable set to ``n``."""
    if not isinstance(phi, QUANTIFIERS):
        raise TypeError("instance() needs a quantified formula")
    return substitute(phi.body, phi.var, n)


def closure(phi: Formula) -> Formula:
    """Universal closure over the free variables in sorted order (outermost first)."""
    for x in sorted(free_vars(phi), reverse=True):
        phi = Forall(x, phi)
    return phi


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, (And, Or, Imp)):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)
    elif isinstance(phi, QUANTIFIERS):
        yield from subformulas(phi.body)


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


# ---------------------------------------------------------------- classification


class SentenceClass(enum.Enum):
    DELTA0 = "Delta0"
    PRETTY_SIGMA1 = "PrettySigma1"
    UNIVERSAL_PI1 = "UniversalPi1"
    OTHER = "Other"


def is_delta0(phi: Formula) -> bool:
    """No unbounded quantifier occurs (works on open formulas too)."""
    return not any(isinstance(s, (Exists, Forall)) for s in subformulas(phi))


def _strip(phi: Formula, allowed: tuple[type, ...]) -> Formula:
    while isinstance(phi, allowed):
        phi = phi.body
    return phi


def pretty_sigma1_shape(phi: Formula) -> bool:
    return is_delta0(_strip(phi, (Exists, ExistsLt, ForallLt)))


def universal_pi1_shape(phi: Formula) -> bool:
    return is_delta0(_strip(phi, (Forall,)))


def _require_sentence(phi: Formula) -> None:
    fv = free_vars(phi)
    if fv:
        raise UnboundVariableError(sorted(fv)[0])


def is_pretty_sigma1(phi: Formula) -> bool:
    _require_sentence(phi)
    return pretty_sigma1_shape(phi)


def is_universal_pi1(phi: Formula) -> bool:
    _require_sentence(phi)
    return universal_pi1_shape(phi)


def classify(phi: Formula) -> SentenceClass:
    """Most specific syntactic class of a sentence."""
    _require_sentence(phi)
    if is_delta0(phi):
        return SentenceClass.DELTA0
    if pretty_sigma1_shape(phi):
        return SentenceClass.PRETTY_SIGMA1
    if universal_pi1_shape(phi):
        return SentenceClass.UNIVERSAL_PI1
    return SentenceClass.OTHER


def in_translation_class(phi: Formula) -> bool:
    """Pretty Σ₁ or universal Π₁ (the sentences where realisability is truth)."""
    return classify(phi) is not SentenceClass.OTHER


# ---------------------------------------------------------------- truth


class TruthVerdict(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"


DEFAULT_HALT_FUEL = 10_000
# bounded quantifiers over more instances are only searched this far
MAX_BOUNDED_INSTANCES = 4096


def _atom_halt(table: str, k: int, steps: int) -> tuple[bool, int | None]:
    from .machine.tables import get_table, halts_within

    return halts_within(get_table(table), k, steps)


def _certain_halting(table: str, k: int, fuel: int) -> tuple[bool | None, int | None]:
    """Settle whether ``p_k(k)`` halts at all: True/False when certain, None otherwise."""
    from .machine.interp import OutOfFuel, Value, apply
    from .machine.tables import get_table

    out = apply(get_table(table).code(k), k, lambda i: 0, fuel)
    if isinstance(out, Value):
        return True, out.value
    if isinstance(out, OutOfFuel) and out.diverged:
        return False, None
    return None, None


def _and3(a: bool | None, b: bool | None) -> bool | None:
    if a is False or b is False:
        return False
    if a is True and b is True:
        return True
    return None


def _or3(a: bool | None, b: bool | None) -> bool | None:
    if a is True or b is True:
        return True
    if a is False and b is False:
        return False
    return None


def _eval(phi: Formula, env: dict[str, int], budget: int, halt_fuel: int) -> bool | None:
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Eq):
        return eval_term(phi.left, env) == eval_term(phi.right, env)
    if isinstance(phi, StepHalt):
        return _atom_halt(phi.table, eval_term(phi.prog, env), eval_term(phi.steps, env))[0]
    if isinstance(phi, HaltOut):
        ok, out = _atom_halt(phi.table, eval_term(phi.prog, env), eval_term(phi.steps, env))
        return ok and out == eval_term(phi.out, env)
    if isinstance(phi, And):
        left = _eval(phi.left, env, budget, halt_fuel)
        if left is False:
            return False
        return _and3(left, _eval(phi.right, env, budget, halt_fuel))
    if isinstance(phi, Or):
        left = _eval(phi.left, env, budget, halt_fuel)
        if left is True:
            return True
        return _or3(left, _eval(phi.right, env, budget, halt_fuel))
    if isinstance(phi, Imp):
        left = _eval(phi.left, env, budget, halt_fuel)
        if left is False:
            return True
        right = _eval(phi.right, env, budget, halt_fuel)
        if right is True:
            return True
        if left is True and right is False:
            return False
        return None
    if isinstance(phi, (ExistsLt, ForallLt)):
        bound = eval_term(phi.bound, env)
        want = isinstance(phi, ExistsLt)
        unknown = bound > MAX_BOUNDED_INSTANCES
        for n in range(min(bound, MAX_BOUNDED_INSTANCES)):
            v = _eval(phi.body, {**env, phi.var: n}, budget, halt_fuel)
            if v is want:
                return want
            if v is None:
                unknown = True
        return None if unknown else (not want)
    if isinstance(phi, Exists):
        shortcut = _halting_shortcut(phi, env, halt_fuel)
        if shortcut is not None:
            return shortcut
        for n in range(budget):
            if _eval(phi.body, {**env, phi.var: n}, budget, halt_fuel) is True:
                return True
        return None
    if isinstance(phi, Forall):
        for n in range(budget):
            if _eval(phi.body, {**env, phi.var: n}, budget, halt_fuel) is False:
                return False
        return None
    raise TypeError(f"not a formula: {phi!r}")


def _halting_shortcut(phi: Exists, env: dict[str, int], halt_fuel: int) -> bool | None:
    """``∃l halt(T,k,l)`` and ``∃l halt-out(T,k,l,n)`` are settled by one long run.

    The atoms are monotone in ``l``; a run that reaches ``Diverge`` certifies
    that no ``l`` works.
    """
    body = phi.body
    if not isinstance(body, (StepHalt, HaltOut)) or body.steps != Var(phi.var):
        return None
    if phi.var in term_vars(body.prog) or (isinstance(body, HaltOut) and phi.var in term_vars(body.out)):
        return None
    status, out = _certain_halting(body.table, eval_term(body.prog, env), halt_fuel)
    if status is None:
        return None
    if isinstance(body, HaltOut) and status:
        return out == eval_term(body.out, env)
    return status


def eval_truth(phi: Formula, budget: int = 64, halt_fuel: int = DEFAULT_HALT_FUEL) -> TruthVerdict:
    """Sound three-valued truth in the standard model.

    Δ₀ sentences are decided exactly.  Unbounded ``∃`` searches for a witness
    below ``budget``, unbounded ``∀`` for a counterexample below ``budget``.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    _require_sentence(phi)
    v = _eval(phi, {}, budget, halt_fuel)
    if v is True:
        return TruthVerdict.TRUE
    if v is False:
        return TruthVerdict.FALSE
    return TruthVerdict.UNKNOWN


def holds(phi: Formula, env: Mapping[str, int] | None = None, budget: int = 64) -> bool | None:
    """Three-valued truth of a possibly open formula under ``env``."""
    return _eval(phi, dict(env or {}), budget, DEFAULT_HALT_FUEL)


# ---------------------------------------------------------------- syntax

_KEYWORDS = {"s", "+", "*", "=", "bot", "and", "or", "imp", "not", "exists", "forall",
             "exists-lt", "forall-lt", "halt", "halt-out"}


def print_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Numeral):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"(s {print_term(t.arg)})"
    if isinstance(t, Plus):
        return f"(+ {print_term(t.left)} {print_term(t.right)})"
    if isinstance(t, Times):
        return f"(* {print_term(t.left)} {print_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def print_formula(phi: Formula) -> str:
    if isinstance(phi, Bot):
        return "bot"
    if isinstance(phi, Eq):
        return f"(= {print_term(phi.left)} {print_term(phi.right)})"
    if isinstance(phi, StepHalt):
        return f"(halt {phi.table} {print_term(phi.prog)} {print_term(phi.steps)})"
    if isinstance(phi, HaltOut):
        return f"(halt-out {phi.table} {print_term(phi.prog)} {print_term(phi.steps)} {print_term(phi.out)})"
    if isinstance(phi, (And, Or, Imp)):
        op = {And: "and", Or: "or", Imp: "imp"}[type(phi)]
        return f"({op} {print_formula(phi.left)} {print_formula(phi.right)})"
    if isinstance(phi, (Exists, Forall)):
        op = "exists" if isinstance(phi, Exists) else "forall"
        return f"({op} {phi.var} {print_formula(phi.body)})"
    if isinstance(phi, (ExistsLt, ForallLt)):
        op = "exists-lt" if isinstance(phi, ExistsLt) else "forall-lt"
        return f"({op} {phi.var} {print_term(phi.bound)} {print_formula(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")


def _is_name(text: str) -> bool:
    return bool(text) and not text[0].isdigit() and text not in _KEYWORDS and all(
        c.isalnum() or c in "_'" for c in text
    )


def _term(expr: SExpr) -> Term:
    if isinstance(expr, Atom):
        if expr.text.isdigit():
            return numeral(int(expr.text))
        if _is_name(expr.text):
            return Var(expr.text)
        raise SExprError(f"bad term {expr.text!r}", expr.offset)
    if not expr.items or not isinstance(expr.items[0], Atom):
        raise SExprError("expected a term", expr.offset)
    op = expr.items[0].text
    args = expr.items[1:]
    if op == "s" and len(args) == 1:
        return Succ(_term(args[0]))
    if op in ("+", "*") and len(args) == 2:
        cls = Plus if op == "+" else Times
        return cls(_term(args[0]), _term(args[1]))
    raise SExprError(f"bad term form {op!r}", expr.offset)


def _name(expr: SExpr) -> str:
    if not isinstance(expr, Atom) or not _is_name(expr.text):
        raise SExprError("expected a variable name", expr.offset)
    return expr.text


def _table(expr: SExpr) -> str:
    if not isinstance(expr, Atom) or not expr.text or expr.text[0].isdigit():
        raise SExprError("expected a program-table name", expr.offset)
    return expr.text


def _formula(expr: SExpr) -> Formula:
    if isinstance(expr, Atom):
        if expr.text == "bot":
            return Bot()
        raise SExprError(f"unexpected atom {expr.text!r}", expr.offset)
    if not expr.items or not isinstance(expr.items[0], Atom):
        raise SExprError("expected a formula", expr.offset)
    op = expr.items[0].text
    args = expr.items[1:]

    def need(k: int) -> None:
        if len(args) != k:
            raise SExprError(f"{op} takes {k} argument(s)", expr.offset)

    if op == "=":
        need(2)
        return Eq(_term(args[0]), _term(args[1]))
    if op in ("and", "or", "imp"):
        need(2)
        cls = {"and": And, "or": Or, "imp": Imp}[op]
        return cls(_formula(args[0]), _formula(args[1]))
    if op == "not":
        need(1)
        return Not(_formula(args[0]))
    if op in ("exists", "forall"):
        need(2)
        cls = Exists if op == "exists" else Forall
        return cls(_name(args[0]), _formula(args[1]))
    if op in ("exists-lt", "forall-lt"):
        need(3)
        cls = ExistsLt if op == "exists-lt" else ForallLt
        var, bound = _name(args[0]), _term(args[1])
        if var in term_vars(bound):
            raise SExprError("bound mentions the bound variable", args[1].offset)
        return cls(var, bound, _formula(args[2]))
    if op == "halt":
        need(3)
        return StepHalt(_table(args[0]), _term(args[1]), _term(args[2]))
    if op == "halt-out":
        need(4)
        return HaltOut(_table(args[0]), _term(args[1]), _term(args[2]), _term(args[3]))
    raise SExprError(f"unknown formula form {op!r}", expr.offset)


def formula_from_sexpr(expr: SExpr) -> Formula:
    return _formula(expr)


def parse_formula(text: str, closed: bool = False) -> Formula:
    """Parse the s-expression syntax; with ``closed`` the result must be a sentence."""
    phi = _formula(read_one(text))
    if closed:
        _require_sentence(phi)
    return phi
