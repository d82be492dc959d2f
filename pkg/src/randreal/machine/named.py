"""A named-variable front end for building RML terms.

Generated programs (synthesized realisers, wrappers, combinators) are much
easier to write with names; ``compile_named`` converts to de Bruijn form.
Named terms are plain tuples tagged by their first element.
"""

from __future__ import annotations

from typing import Sequence

from .terms import (
    App,
    Clock,
    Diverge,
    Fix,
    IfZ,
    Lam,
    Num,
    OracleBit,
    Pin,
    Pred,
    Run,
    Succ,
    Term,
    Var,
    WithEven,
    WithOdd,
    WithPrefix,
    WithZeros,
)

NTerm = tuple


def var(name: str) -> NTerm:
    return ("var", name)


def lam(names: str | Sequence[str], body: NTerm) -> NTerm:
    if isinstance(names, str):
        names = [names]
    for name in reversed(list(names)):
        body = ("lam", name, body)
    return body


def app(fn: NTerm, *args: NTerm) -> NTerm:
    for a in args:
        fn = ("app", fn, a)
    return fn


def num(n: int) -> NTerm:
    return ("num", n)


def succ(e: NTerm) -> NTerm:
    return ("succ", e)


def pred(e: NTerm) -> NTerm:
    return ("pred", e)


def ifz(c: NTerm, t: NTerm, e: NTerm) -> NTerm:
    return ("ifz", c, t, e)


def fix(self_name: str, arg: str, body: NTerm) -> NTerm:
    """Recursive one-argument function; ``self_name`` refers to itself inside ``body``."""
    return ("fix", self_name, arg, body)


def oracle(e: NTerm) -> NTerm:
    return ("oracle", e)


def run(c: NTerm, a: NTerm) -> NTerm:
    return ("run", c, a)


def pin(c: NTerm, *args: NTerm) -> NTerm:
    for a in args:
        c = ("pin", c, a)
    return c


def clock(c: NTerm, a: NTerm, limit: NTerm) -> NTerm:
    return ("clock", c, a, limit)


def with_prefix(bits: Sequence[int], e: NTerm) -> NTerm:
    return ("prefix", tuple(bits), e)


def with_even(e: NTerm) -> NTerm:
    return ("even", e)


def with_odd(e: NTerm) -> NTerm:
    return ("odd", e)


def with_zeros(e: NTerm) -> NTerm:
    return ("zeros", e)


def let(name: str, value: NTerm, body: NTerm) -> NTerm:
    return app(lam(name, body), value)


def raw(t: Term) -> NTerm:
    """Embed an already closed de Bruijn term."""
    return ("raw", t)


DIVERGE: NTerm = ("diverge",)


def compile_named(t: NTerm, scope: Sequence[str] = ()) -> Term:
    """Translate to de Bruijn form; ``scope`` lists enclosing binders, outermost first."""
    tag = t[0]
    if tag == "var":
        name = t[1]
        for depth, bound in enumerate(reversed(scope)):
            if bound == name:
                return Var(depth)
        raise NameError(f"unbound variable {name!r} in generated program")
    if tag == "lam":
        return Lam(compile_named(t[2], [*scope, t[1]]))
    if tag == "app":
        return App(compile_named(t[1], scope), compile_named(t[2], scope))
    if tag == "num":
        return Num(t[1])
    if tag == "succ":
        return Succ(compile_named(t[1], scope))
    if tag == "pred":
        return Pred(compile_named(t[1], scope))
    if tag == "ifz":
        return IfZ(compile_named(t[1], scope), compile_named(t[2], scope), compile_named(t[3], scope))
    if tag == "fix":
        return Fix(Lam(compile_named(t[3], [*scope, t[1], t[2]])))
    if tag == "oracle":
        return OracleBit(compile_named(t[1], scope))
    if tag == "run":
        return Run(compile_named(t[1], scope), compile_named(t[2], scope))
    if tag == "pin":
        return Pin(compile_named(t[1], scope), compile_named(t[2], scope))
    if tag == "clock":
        return Clock(compile_named(t[1], scope), compile_named(t[2], scope), compile_named(t[3], scope))
    if tag == "prefix":
        return WithPrefix(t[1], compile_named(t[2], scope))
    if tag == "even":
        return WithEven(compile_named(t[1], scope))
    if tag == "odd":
        return WithOdd(compile_named(t[1], scope))
    if tag == "zeros":
        return WithZeros(compile_named(t[1], scope))
    if tag == "raw":
        return t[1]
    if tag == "diverge":
        return Diverge()
    raise ValueError(f"unknown named-term tag {tag!r}")
