"""Abstract syntax of RML, the oracle-machine program language.

Terms use de Bruijn indices; ``Lam`` and ``Fix`` each bind one variable.
Besides the base constructors the language has three extension forms:
``Pin`` (build the code of a partial application at run time), ``Clock``
(run a code for a bounded number of steps on the all-zeros oracle) and
``WithZeros`` (evaluate under the all-zeros oracle view).
"""

from __future__ import annotations

from dataclasses import dataclass


class Term:
    __slots__ = ()
    OP: int = -1


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int
    OP = 0x00


@dataclass(frozen=True, slots=True)
class Lam(Term):
    body: Term
    OP = 0x01


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term
    OP = 0x02


@dataclass(frozen=True, slots=True)
class Num(Term):
    value: int
    OP = 0x03


@dataclass(frozen=True, slots=True)
class Succ(Term):
    expr: Term
    OP = 0x04


@dataclass(frozen=True, slots=True)
class Pred(Term):
    expr: Term
    OP = 0x05


@dataclass(frozen=True, slots=True)
class IfZ(Term):
    cond: Term
    then: Term
    orelse: Term
    OP = 0x06


@dataclass(frozen=True, slots=True)
class Fix(Term):
    body: Term
    OP = 0x07


@dataclass(frozen=True, slots=True)
class OracleBit(Term):
    index: Term
    OP = 0x08


@dataclass(frozen=True, slots=True)
class Run(Term):
    code: Term
    arg: Term
    OP = 0x09


@dataclass(frozen=True, slots=True)
class WithPrefix(Term):
    bits: tuple[int, ...]
    expr: Term
    OP = 0x0A


@dataclass(frozen=True, slots=True)
class WithEven(Term):
    expr: Term
    OP = 0x0B


@dataclass(frozen=True, slots=True)
class WithOdd(Term):
    expr: Term
    OP = 0x0C


@dataclass(frozen=True, slots=True)
class Diverge(Term):
    OP = 0x0D


@dataclass(frozen=True, slots=True)
class Pin(Term):
    """``Pin(c, n)`` evaluates to ``encode(App(decode(c), Num(n)))``."""

    code: Term
    arg: Term
    OP = 0x0E


@dataclass(frozen=True, slots=True)
class Clock(Term):
    """``Clock(c, a, l)`` is ``v + 1`` if code ``c`` on ``a`` halts with ``v`` within ``l`` steps, else ``0``."""

    code: Term
    arg: Term
    limit: Term
    OP = 0x0F


@dataclass(frozen=True, slots=True)
class WithZeros(Term):
    expr: Term
    OP = 0x10


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Var, Num, Diverge)):
        return ()
    if isinstance(t, (Lam, Fix)):
        return (t.body,)
    if isinstance(t, OracleBit):
        return (t.index,)
    if isinstance(t, (Succ, Pred, WithEven, WithOdd, WithZeros, WithPrefix)):
        return (t.expr,)
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, (Run, Pin)):
        return (t.code, t.arg)
    if isinstance(t, IfZ):
        return (t.cond, t.then, t.orelse)
    if isinstance(t, Clock):
        return (t.code, t.arg, t.limit)
    raise TypeError(f"not an RML term: {t!r}")


def is_closed(t: Term, depth: int = 0) -> bool:
    """True when every ``Var`` index is bound by an enclosing ``Lam``/``Fix``."""
    stack = [(t, depth)]
    while stack:
        node, d = stack.pop()
        if isinstance(node, Var):
            if node.index >= d:
                return False
            continue
        inner = d + 1 if isinstance(node, (Lam, Fix)) else d
        stack.extend((c, inner) for c in children(node))
    return True
