"""The diagonal sentence that is μ-realised but not realised.

``∀k ∃n ∀l (¬halt(k,l) ∨ ¬halt-out(k,l,n))``: no program ``p_k(k)`` of the
table outputs ``n``.  No program can compute such an ``n`` from ``k``, but
guessing ``n`` from fresh oracle bits is wrong only when the guess hits the
actual output.  The guess for ``k`` reads the ``k+1`` bits starting at
offset ``k(k+1)/2``, so different ``k`` use disjoint bits and the success
probability is ``∏(1 − 2^-(k+1))``.
"""

from __future__ import annotations

from functools import lru_cache

from ..dyadic import ONE, DyadicRational
from ..formula import Exists, Forall, ForallLt, Formula, HaltOut, Not, Or, StepHalt, Var, numeral
from ..machine import named as N
from ..machine.codec import encode
from ..machine.prelude import ANY, n_add, pair_code
from ..machine.tables import get_table


def diagonal_body(table: str = "enum", k: str = "k") -> Formula:
    return Exists(
        "n",
        Forall(
            "l",
            Or(Not(StepHalt(table, Var(k), Var("l"))), Not(HaltOut(table, Var(k), Var("l"), Var("n")))),
        ),
    )


def diagonal_sentence(K: int | None = None, table: str = "enum") -> Formula:
    """The full sentence (``K`` None) or its truncation to ``k < K``."""
    body = diagonal_body(table)
    if K is None:
        return Forall("k", body)
    return ForallLt("k", numeral(K), body)


def _triangle() -> N.NTerm:
    return N.fix("%t", "%n", N.ifz(N.var("%n"), N.num(0), n_add(N.var("%n"), N.app(N.var("%t"), N.pred(N.var("%n"))))))


def guess_term() -> N.NTerm:
    """``λk.`` the natural coding bits ``u(o)…u(o+k)`` LSB-first under a leading 1, ``o = k(k+1)/2``."""
    loop = N.fix(
        "%g",
        "%m",
        N.lam(
            "%acc",
            N.ifz(
                N.var("%m"),
                N.var("%acc"),
                N.app(
                    N.var("%g"),
                    N.pred(N.var("%m")),
                    n_add(n_add(N.var("%acc"), N.var("%acc")), N.oracle(n_add(N.var("%o"), N.pred(N.var("%m"))))),
                ),
            ),
        ),
    )
    return N.lam("k", N.let("%o", N.app(_triangle(), N.var("k")), N.app(loop, N.succ(N.var("k")), N.num(1))))


def guess_value(k: int, bits: dict[int, int]) -> int:
    """Meta-level reference for :func:`guess_term` given the oracle bits."""
    off = k * (k + 1) // 2
    return (1 << (k + 1)) + sum(bits.get(off + j, 0) << j for j in range(k + 1))


@lru_cache(maxsize=None)
def diagonal_realiser(table: str = "enum") -> int:
    """``λk. Q(k)`` with ``Q(k)(1)`` the guessed non-output and ``Q(k)(0)`` realising the ``∀l`` part."""
    lookup = N.compile_named(get_table(table).lookup_term())
    # for each l: not halted within l steps, or halted with an output other than n
    p_prime = N.lam(
        ["k", "l"],
        N.ifz(
            N.clock(N.app(N.raw(lookup), N.var("k")), N.var("k"), N.var("l")),
            N.num(pair_code(0, ANY)),
            N.num(pair_code(1, ANY)),
        ),
    )
    p_code = encode(N.compile_named(p_prime))
    q = N.lam(["k", "i"], N.ifz(N.var("i"), N.pin(N.num(p_code), N.var("k")), N.app(guess_term(), N.var("k"))))
    q_code = encode(N.compile_named(q))
    return encode(N.compile_named(N.lam("k", N.pin(N.num(q_code), N.var("k")))))


def diagonal_bound(K: int) -> DyadicRational:
    """``∏_{k<K} (1 − 2^-(k+1))``."""
    value = ONE
    for k in range(K):
        value = value * (ONE - DyadicRational.pow2(k + 1))
    return value
