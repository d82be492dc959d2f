"""Small oracle programs with known exact measures, shared by demos and tests."""

from __future__ import annotations

from dataclasses import dataclass

from ..dyadic import DyadicRational
from ..formula import And, Bot, Eq, Exists, ForallLt, Formula, Or, Var, Zero, numeral
from ..machine import named as N
from ..machine.codec import encode
from ..machine.prelude import ANY, n_add


@dataclass(frozen=True)
class Fixture:
    name: str
    code: int
    formula: Formula
    measure: DyadicRational  # exact measure of C_{p,φ}


TRUE_OR = Or(Eq(Zero(), Zero()), Eq(Zero(), numeral(1)))  # only index 0 works


def _any_one(bits: list[int]) -> N.NTerm:
    """1 when some listed oracle bit is 1, else 0."""
    expr: N.NTerm = N.num(0)
    for i in reversed(bits):
        expr = N.ifz(N.oracle(N.num(i)), expr, N.num(1))
    return expr


def _number(bits: list[int]) -> N.NTerm:
    """The listed oracle bits read as a binary number, LSB first."""
    expr: N.NTerm = N.num(0)
    for i in reversed(bits):
        expr = n_add(n_add(expr, expr), N.oracle(N.num(i)))
    return expr


def _or_realiser(bits: list[int]) -> N.NTerm:
    return N.lam("%x", N.ifz(N.var("%x"), _any_one(bits), N.num(ANY)))


def _code(t: N.NTerm) -> int:
    return encode(N.compile_named(t))


def pushup_fixtures() -> list[Fixture]:
    out = []
    for bits in ([0], [0, 1], [0, 1, 2], [3]):
        out.append(Fixture(f"or-{''.join(map(str, bits))}", _code(_or_realiser(bits)), TRUE_OR, DyadicRational.pow2(len(bits))))
    for target, width in ((1, 1), (2, 2), (5, 3)):
        p = N.lam("%x", N.ifz(N.var("%x"), N.num(ANY), _number(list(range(width)))))
        phi = Exists("x", Eq(Var("x"), numeral(target)))
        out.append(Fixture(f"exists-{target}", _code(p), phi, DyadicRational.pow2(width)))
    # two conjuncts on disjoint bits
    left, right = _code(_or_realiser([0])), _code(_or_realiser([1]))
    pair = N.lam("%x", N.ifz(N.var("%x"), N.num(left), N.num(right)))
    out.append(Fixture("and-01", _code(pair), And(TRUE_OR, TRUE_OR), DyadicRational.pow2(2)))
    # one bit per instance i
    inst = N.lam("i", N.lam("%x", N.ifz(N.var("%x"), N.oracle(N.var("i")), N.num(ANY))))
    inst_code = _code(inst)
    per_i = N.lam("i", N.pin(N.num(inst_code), N.var("i")))
    body = Or(Eq(Var("i"), Var("i")), Bot())
    for n in (2, 3):
        out.append(Fixture(f"forall-lt-{n}", _code(per_i), ForallLt("i", numeral(n), body), DyadicRational.pow2(n)))
    return out


def or_pair_demo() -> Fixture:
    """``p(0) = u(0)``: realises ``0=0 ∨ 0=1`` exactly when the first bit is 0."""
    return pushup_fixtures()[0]

