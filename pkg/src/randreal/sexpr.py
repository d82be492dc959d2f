"""Minimal s-expression reader shared by the formula, program, proof and report parsers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class SExprError(ValueError):
    """Syntax error carrying the character offset where parsing failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    text: str
    offset: int
    quoted: bool = False


@dataclass(frozen=True)
class SList:
    items: tuple["SExpr", ...]
    offset: int


SExpr = Union[Atom, SList]

_DELIMS = set("()\"")


def _skip_ws(text: str, i: int) -> int:
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        else:
            break
    return i


def _read(text: str, i: int) -> tuple[SExpr, int]:
    i = _skip_ws(text, i)
    if i >= len(text):
        raise SExprError("unexpected end of input", i)
    c = text[i]
    if c == "(":
        start = i
        i += 1
        items: list[SExpr] = []
        while True:
            i = _skip_ws(text, i)
            if i >= len(text):
                raise SExprError("unbalanced parenthesis", i)
            if text[i] == ")":
                return SList(tuple(items), start), i + 1
            item, i = _read(text, i)
            items.append(item)
    if c == ")":
        raise SExprError("unexpected ')'", i)
    if c == '"':
        end = text.find('"', i + 1)
        if end < 0:
            raise SExprError("unterminated string", len(text))
        return Atom(text[i + 1 : end], i, quoted=True), end + 1
    start = i
    while i < len(text) and not text[i].isspace() and text[i] not in _DELIMS and text[i] != ";":
        i += 1
    return Atom(text[start:i], start), i


def read_one(text: str) -> SExpr:
    """Parse exactly one s-expression; trailing non-whitespace is an error."""
    expr, i = _read(text, 0)
    i = _skip_ws(text, i)
    if i != len(text):
        raise SExprError("trailing input", i)
    return expr


def read_all(text: str) -> list[SExpr]:
    out: list[SExpr] = []
    i = _skip_ws(text, 0)
    while i < len(text):
        expr, i = _read(text, i)
        out.append(expr)
        i = _skip_ws(text, i)
    return out


def head(expr: SExpr) -> str | None:
    if isinstance(expr, SList) and expr.items and isinstance(expr.items[0], Atom):
        return expr.items[0].text
    return None
