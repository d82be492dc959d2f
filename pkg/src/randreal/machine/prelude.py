"""Closed RML combinators shared by synthesizers, translators and extractors."""

from __future__ import annotations

from functools import lru_cache

from . import named as N
from .codec import encode
from .interp import pin
from .terms import Lam, Num, Term

# realiser used wherever "any program" will do
ANY: int = encode(Lam(Num(0)))

# PAIR a b: the program answering a on input 0 and b otherwise
PAIR_TERM: Term = N.compile_named(N.lam(["a", "b", "i"], N.ifz(N.var("i"), N.var("a"), N.var("b"))))
PAIR: int = encode(PAIR_TERM)

# K a: the program answering a on every input
K_TERM: Term = N.compile_named(N.lam(["a", "x"], N.var("a")))
K: int = encode(K_TERM)

# SMN p n: the program running p(n) on its input under the same oracle
SMN_TERM: Term = N.compile_named(
    N.lam(["p", "n", "y"], N.run(N.run(N.var("p"), N.var("n")), N.var("y")))
)
SMN: int = encode(SMN_TERM)


def pair_code(a: int, b: int) -> int:
    return pin(pin(PAIR, a), b)


def const_code(v: int) -> int:
    return pin(K, v)


def smn_code(p: int, n: int) -> int:
    """Run-time flavour of s-m-n, extensionally equal to :func:`smn`."""
    return pin(pin(SMN, p), n)


def n_pair(a: N.NTerm, b: N.NTerm) -> N.NTerm:
    """Named expression computing ``pair_code(a, b)`` at run time."""
    return N.pin(N.num(PAIR), a, b)


def n_const(v: N.NTerm) -> N.NTerm:
    return N.pin(N.num(K), v)


def n_smn(p: N.NTerm, n: N.NTerm) -> N.NTerm:
    return N.pin(N.num(SMN), p, n)


ADD_TERM = N.compile_named(
    N.fix("f", "a", N.lam("b", N.ifz(N.var("b"), N.var("a"), N.succ(N.app(N.var("f"), N.var("a"), N.pred(N.var("b")))))))
)
MUL_TERM = N.compile_named(
    N.fix(
        "f",
        "a",
        N.lam("b", N.ifz(N.var("b"), N.num(0), N.app(N.raw(ADD_TERM), N.app(N.var("f"), N.var("a"), N.pred(N.var("b"))), N.var("a")))),
    )
)
EQ_TERM = N.compile_named(
    N.fix(
        "f",
        "a",
        N.lam(
            "b",
            N.ifz(
                N.var("a"),
                N.ifz(N.var("b"), N.num(1), N.num(0)),
                N.ifz(N.var("b"), N.num(0), N.app(N.var("f"), N.pred(N.var("a")), N.pred(N.var("b")))),
            ),
        ),
    )
)
LT_TERM = N.compile_named(
    N.fix(
        "f",
        "a",
        N.lam(
            "b",
            N.ifz(N.var("b"), N.num(0), N.ifz(N.var("a"), N.num(1), N.app(N.var("f"), N.pred(N.var("a")), N.pred(N.var("b"))))),
        ),
    )
)


def n_add(a: N.NTerm, b: N.NTerm) -> N.NTerm:
    return N.app(N.raw(ADD_TERM), a, b)


def n_mul(a: N.NTerm, b: N.NTerm) -> N.NTerm:
    return N.app(N.raw(MUL_TERM), a, b)


def n_eq(a: N.NTerm, b: N.NTerm) -> N.NTerm:
    return N.app(N.raw(EQ_TERM), a, b)


def n_lt(a: N.NTerm, b: N.NTerm) -> N.NTerm:
    return N.app(N.raw(LT_TERM), a, b)


def n_not(a: N.NTerm) -> N.NTerm:
    return N.ifz(a, N.num(1), N.num(0))


@lru_cache(maxsize=None)
def constant_program(v: int) -> int:
    """Code of ``λx. v``, built statically."""
    return encode(Lam(Num(v)))
