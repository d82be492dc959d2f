"""Realisers with positive probability for every true sentence.

The realiser data of a true sentence is written on the oracle: each natural
is written MSB-first with every bit doubled (``0 → 00``, ``1 → 11``) and
terminated by the marker ``01``.  A *reader* program parses its fields from
a given offset; sub-realisers are readers pinned to the offset of their own
fields, so they read the same tape further on.  The reader works on the
whole cylinder fixed by the tape.

Fields per case: a disjunction writes its index, then the chosen side; an
existential writes its witness, then the body; a conjunction and a bounded
``∀`` concatenate their parts; an implication writes 1 when its
consequent holds and 0 when the realiser may be arbitrary.  An implication
answers a reader for the consequent running on its own tape.  A closed
unbounded ``∀`` over a Δ₀ body gets the oracle-independent translation of
its classical realiser and writes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..formula import (
    ATOMS,
    And,
    ClassError,
    Exists,
    ExistsLt,
    Forall,
    ForallLt,
    Formula,
    Imp,
    Or,
    SentenceClass,
    TruthVerdict,
    classify,
    eval_term,
    eval_truth,
    free_vars,
    holds,
)
from ..machine import named as N
from ..machine.cylinder import Cylinder
from ..machine.prelude import ANY, n_add, n_lt
from ..mu.translate import translate_Pmu
from ..realisability.compile import closure_code, term_expr
from ..realisability.synth import synth_pi1


class Undecided(ValueError):
    """The sentence is not known to be true."""


def encode_nat(n: int) -> tuple[int, ...]:
    if n < 0:
        raise ValueError("naturals only")
    bits = []
    for d in bin(n)[2:]:
        bits += [int(d), int(d)]
    return tuple(bits) + (0, 1)


def decode_nat(bits, offset: int = 0) -> tuple[int, int]:
    """Value and the offset after the marker; ``10`` counts as a marker too."""
    value, i = 0, offset
    while True:
        a, b = bits[i], bits[i + 1]
        i += 2
        if a != b:
            return value, i
        value = 2 * value + a


def _two(e: N.NTerm) -> N.NTerm:
    return n_add(e, N.num(2))


def _fields_loop(done: N.NTerm) -> N.NTerm:
    """``λ%p.λ%acc.`` the field at ``%p``; ``done`` sees ``%acc`` and ``%p`` past the marker."""
    p, acc = N.var("%p"), N.var("%acc")
    again = lambda bit: N.app(N.var("%r"), _two(p), n_add(n_add(acc, acc), N.num(bit)))  # noqa: E731
    body = N.ifz(
        N.oracle(p),
        N.ifz(N.oracle(N.succ(p)), again(0), done),
        N.ifz(N.oracle(N.succ(p)), done, again(1)),
    )
    return N.fix("%r", "%p", N.lam("%acc", body))


_NAT = N.compile_named(_fields_loop(N.var("%acc")))
_END = N.compile_named(_fields_loop(_two(N.var("%p"))))


def nat_at(off: N.NTerm) -> N.NTerm:
    return N.app(N.raw(_NAT), off, N.num(0))


def end_of(off: N.NTerm) -> N.NTerm:
    return N.app(N.raw(_END), off, N.num(0))


def _env(phi: Formula) -> list[str]:
    return sorted(free_vars(phi))


def sub_reader(phi: Formula, off: N.NTerm) -> N.NTerm:
    """Expression for the code of the reader of ``phi`` starting at ``off``."""
    if isinstance(phi, ATOMS):
        return N.num(ANY)
    if isinstance(phi, Forall):
        return N.num(_closed_forall(phi))
    return N.pin(N.num(reader_code(phi)), *(N.var(v) for v in _env(phi)), off)


def _closed_forall(phi: Forall) -> int:
    if free_vars(phi) or classify(phi) is not SentenceClass.UNIVERSAL_PI1:
        raise ClassError("an unbounded ∀ must be a closed universal Π₁ sentence here")
    return translate_Pmu(synth_pi1(phi), phi)


def skip(phi: Formula, off: N.NTerm) -> N.NTerm:
    """Expression for the offset just past the fields of ``phi`` at ``off``."""
    if isinstance(phi, (*ATOMS, Forall)):
        return off
    if isinstance(phi, And):
        return N.let("%q", skip(phi.left, off), skip(phi.right, N.var("%q")))
    if isinstance(phi, Or):
        after = N.ifz(N.var("%i"), skip(phi.left, N.var("%q")), skip(phi.right, N.var("%q")))
        return N.let("%i", nat_at(off), N.let("%q", end_of(off), after))
    if isinstance(phi, (Exists, ExistsLt)):
        return N.let(phi.var, nat_at(off), N.let("%q", end_of(off), skip(phi.body, N.var("%q"))))
    if isinstance(phi, ForallLt):
        return N.app(_skip_instances(phi), N.num(0), off)
    if isinstance(phi, Imp):
        return end_of(off)
    raise TypeError(f"not a formula: {phi!r}")


def _skip_instances(phi: ForallLt, upto: N.NTerm | None = None) -> N.NTerm:
    """``λj.λoff.`` skip the fields of instances ``j, …`` below ``upto`` (the bound by default)."""
    j = N.var(phi.var)
    limit = upto if upto is not None else term_expr(phi.bound)
    step = N.app(N.var("%k"), N.succ(j), skip(phi.body, N.var("%o2")))
    return N.fix("%k", phi.var, N.lam("%o2", N.ifz(n_lt(j, limit), N.var("%o2"), step)))


@lru_cache(maxsize=10_000)
def reader_code(phi: Formula) -> int:
    """``λv₁…vₖ.λ%o.λ%x.`` the realiser of ``phi`` whose fields start at ``%o``."""
    off, x = N.var("%o"), N.var("%x")
    if isinstance(phi, And):
        body = N.ifz(x, sub_reader(phi.left, off), sub_reader(phi.right, skip(phi.left, off)))
    elif isinstance(phi, Or):
        chosen = N.ifz(N.var("%i"), sub_reader(phi.left, N.var("%q")), sub_reader(phi.right, N.var("%q")))
        body = N.let("%i", nat_at(off), N.ifz(x, N.var("%i"), N.let("%q", end_of(off), chosen)))
    elif isinstance(phi, (Exists, ExistsLt)):
        inner = N.ifz(x, N.let("%q", end_of(off), sub_reader(phi.body, N.var("%q"))), N.var(phi.var))
        body = N.let(phi.var, nat_at(off), inner)
    elif isinstance(phi, ForallLt):
        # instance x starts after the fields of instances 0 … x-1
        start = N.app(_skip_instances(phi, x), N.num(0), off)
        body = N.let(phi.var, x, sub_reader(phi.body, start))
    elif isinstance(phi, Imp):
        # the consequent's reader runs on a tape of its own
        body = N.ifz(nat_at(off), N.num(ANY), sub_reader(phi.right, N.num(0)))
    else:
        raise TypeError(f"no reader for {phi!r}")
    return closure_code([*_env(phi), "%o", "%x"], body)


def reader(phi: Formula) -> int:
    """The reader of the sentence ``phi``, starting at offset 0."""
    if free_vars(phi):
        raise ValueError("reader needs a sentence")
    if isinstance(phi, ATOMS):
        return ANY
    if isinstance(phi, Forall):
        return _closed_forall(phi)
    from ..machine.interp import pin

    return pin(reader_code(phi), 0)


def fields(phi: Formula, env: dict[str, int] | None = None, search: int = 4096) -> list[int]:
    """The naturals written for ``phi`` at ``env``, assuming it is true there."""
    env = env or {}

    def true(psi: Formula, extra: dict[str, int] | None = None) -> bool:
        return holds(psi, {**env, **(extra or {})}) is True

    if isinstance(phi, (*ATOMS, Forall)):
        return []
    if isinstance(phi, And):
        return fields(phi.left, env, search) + fields(phi.right, env, search)
    if isinstance(phi, Or):
        i = 0 if true(phi.left) else 1
        return [i] + fields(phi.left if i == 0 else phi.right, env, search)
    if isinstance(phi, (Exists, ExistsLt)):
        limit = eval_term(phi.bound, env) if isinstance(phi, ExistsLt) else search
        for n in range(limit):
            if true(phi.body, {phi.var: n}):
                return [n] + fields(phi.body, {**env, phi.var: n}, search)
        raise Undecided(f"no witness for {phi.var} below {limit}")
    if isinstance(phi, ForallLt):
        out: list[int] = []
        for n in range(eval_term(phi.bound, env)):
            out += fields(phi.body, {**env, phi.var: n}, search)
        return out
    if isinstance(phi, Imp):
        return [1 if true(phi.right) else 0]
    raise TypeError(f"not a formula: {phi!r}")


@dataclass(frozen=True)
class PositiveEncoding:
    formula: Formula
    reader: int
    fields: tuple[int, ...]
    tape: tuple[int, ...]

    @property
    def cylinder(self) -> Cylinder:
        return Cylinder.prefix(self.tape)


def encode_for_positive_measure(phi: Formula, budget: int = 64, search: int = 4096) -> PositiveEncoding:
    """A reader and the oracle prefix it needs; refuses sentences not known to be true."""
    if free_vars(phi):
        raise ValueError("encode_for_positive_measure needs a sentence")
    truth = eval_truth(phi, budget)
    if truth is not TruthVerdict.TRUE:
        raise Undecided(f"truth is {truth.value}")
    data = fields(phi, None, search)
    tape = tuple(b for n in data for b in encode_nat(n))
    return PositiveEncoding(phi, reader(phi), tuple(data), tape)
