"""Textual s-expression form of RML terms, mirroring the constructors."""

from __future__ import annotations

from ..sexpr import Atom, SExpr, SExprError, read_one
from .codec import decode, encode
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

_UNARY = {"lam": Lam, "fix": Fix, "succ": Succ, "pred": Pred, "oracle": OracleBit,
          "with-even": WithEven, "with-odd": WithOdd, "with-zeros": WithZeros}
_BINARY = {"app": App, "run": Run, "pin": Pin}
_NAMES = {cls: name for name, cls in {**_UNARY, **_BINARY}.items()}


def print_term(t: Term) -> str:
    parts: list[str] = []
    stack: list[object] = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            parts.append(node)
            continue
        if isinstance(node, Var):
            parts.append(f"(var {node.index})")
        elif isinstance(node, Num):
            parts.append(f"(num {node.value})")
        elif isinstance(node, Diverge):
            parts.append("diverge")
        elif isinstance(node, WithPrefix):
            bits = "".join(map(str, node.bits))
            parts.append(f'(with-prefix "{bits}" ')
            stack.extend([")", node.expr])
        elif isinstance(node, IfZ):
            parts.append("(ifz ")
            stack.extend([")", node.orelse, " ", node.then, " ", node.cond])
        elif isinstance(node, Clock):
            parts.append("(clock ")
            stack.extend([")", node.limit, " ", node.arg, " ", node.code])
        elif isinstance(node, (App, Run, Pin)):
            first, second = (node.fn, node.arg) if isinstance(node, App) else (node.code, node.arg)
            parts.append(f"({_NAMES[type(node)]} ")
            stack.extend([")", second, " ", first])
        else:
            child = node.index if isinstance(node, OracleBit) else node.body if isinstance(node, (Lam, Fix)) else node.expr
            parts.append(f"({_NAMES[type(node)]} ")
            stack.extend([")", child])
    return "".join(parts)


def _nat(expr: SExpr) -> int:
    if not isinstance(expr, Atom) or not expr.text.isdigit():
        raise SExprError("expected a natural number", expr.offset)
    return int(expr.text)


def _from_sexpr(expr: SExpr) -> Term:
    if isinstance(expr, Atom):
        if expr.text == "diverge":
            return Diverge()
        raise SExprError(f"unexpected atom {expr.text!r}", expr.offset)
    if not expr.items or not isinstance(expr.items[0], Atom):
        raise SExprError("expected a constructor", expr.offset)
    name = expr.items[0].text
    args = expr.items[1:]

    def need(k: int) -> None:
        if len(args) != k:
            raise SExprError(f"{name} takes {k} argument(s)", expr.offset)

    if name == "var":
        need(1)
        return Var(_nat(args[0]))
    if name == "num":
        need(1)
        return Num(_nat(args[0]))
    if name in _UNARY:
        need(1)
        return _UNARY[name](_from_sexpr(args[0]))
    if name in _BINARY:
        need(2)
        return _BINARY[name](_from_sexpr(args[0]), _from_sexpr(args[1]))
    if name == "ifz":
        need(3)
        return IfZ(*(_from_sexpr(a) for a in args))
    if name == "clock":
        need(3)
        return Clock(*(_from_sexpr(a) for a in args))
    if name == "with-prefix":
        need(2)
        bits_atom = args[0]
        if not isinstance(bits_atom, Atom) or any(c not in "01" for c in bits_atom.text):
            raise SExprError("prefix must be a bit string", bits_atom.offset)
        return WithPrefix(tuple(int(c) for c in bits_atom.text), _from_sexpr(args[1]))
    if name == "code":
        need(1)
        return decode(_nat(args[0]))
    raise SExprError(f"unknown constructor {name!r}", expr.offset)


def parse_term(text: str) -> Term:
    return _from_sexpr(read_one(text))


def parse_code(text: str) -> int:
    """A realiser file holds either a decimal code or an RML s-expression."""
    stripped = text.strip()
    if stripped.isdigit():
        return int(stripped)
    return encode(parse_term(stripped))
