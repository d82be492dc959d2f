"""Realiser synthesis for pretty Σ₁ sentences (by search) and universal Π₁ sentences (lazily)."""

from __future__ import annotations

from functools import lru_cache

from ..formula import (
    ClassError,
    Exists,
    ExistsLt,
    Forall,
    ForallLt,
    Formula,
    TruthVerdict,
    eval_term,
    eval_truth,
    holds,
    instance,
    is_delta0,
    is_pretty_sigma1,
    is_universal_pi1,
)
from ..machine import named as N
from ..machine.codec import encode
from ..machine.interp import OutOfFuel
from ..machine.prelude import ANY, pair_code
from ..machine.tables import ProgramTable
from .compile import closure_code, delta0_realiser, realiser_expr


class _Exhausted(Exception):
    pass


class _Work:
    def __init__(self, fuel: int):
        self.left = fuel
        self.used = 0

    def spend(self) -> None:
        if self.left <= 0:
            raise _Exhausted
        self.left -= 1
        self.used += 1


def table_code(codes: list[int]) -> int:
    """Code of the program answering ``codes[n]`` on input ``n`` (0 beyond the end)."""
    return encode(N.compile_named(ProgramTable("%table", tuple(codes)).lookup_term()))


def _find(phi: Formula, width: int, work: _Work) -> int | None:
    """Realiser of a closed pretty Σ₁ sentence with every unbounded witness below ``width``."""
    work.spend()
    if is_delta0(phi):
        return delta0_realiser(phi) if holds(phi) else None
    if isinstance(phi, Exists):
        for n in range(width):
            r = _find(instance(phi, n), width, work)
            if r is not None:
                return pair_code(r, n)
        return None
    if isinstance(phi, ExistsLt):
        for n in range(eval_term(phi.bound)):
            r = _find(instance(phi, n), width, work)
            if r is not None:
                return pair_code(r, n)
        return None
    if isinstance(phi, ForallLt):
        codes = []
        for n in range(eval_term(phi.bound)):
            r = _find(instance(phi, n), width, work)
            if r is None:
                return None
            codes.append(r)
        return table_code(codes)
    raise ClassError(f"not pretty Σ₁: {phi!r}")


def synth_sigma1(phi: Formula, fuel: int = 10_000) -> int | OutOfFuel:
    """Search for a realiser of a pretty Σ₁ sentence.

    Witness searches are dovetailed by iterative deepening of a common width
    bound; smaller witnesses are always tried first.  ``fuel`` bounds the
    number of search nodes.  A false sentence never yields a code.
    """
    if not is_pretty_sigma1(phi):
        raise ClassError("synth_sigma1 needs a pretty Σ₁ sentence")
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if is_delta0(phi):
        return delta0_realiser(phi) if holds(phi) else OutOfFuel(fuel)
    if eval_truth(phi, 16) is TruthVerdict.FALSE:
        # no witness exists; searching would only burn the budget
        return OutOfFuel(fuel)
    work = _Work(fuel)
    width = 1
    try:
        while True:
            r = _find(phi, width, work)
            if r is not None:
                return r
            width *= 2
    except _Exhausted:
        return OutOfFuel(work.used)


def _universal_prefix(phi: Formula) -> tuple[list[str], Formula]:
    names = []
    while isinstance(phi, Forall):
        names.append(phi.var)
        phi = phi.body
    return names, phi


@lru_cache(maxsize=10_000)
def synth_pi1(phi: Formula) -> int:
    """Realiser of a universal Π₁ sentence built without search.

    ``∀x₁…∀xₘ ψ`` becomes a curried program: applied to ``n₁`` it answers a
    program expecting ``n₂`` and so on; the last layer answers the compiled
    realiser of ``ψ(n₁,…,nₘ)``.  Correct on true sentences; on false ones the
    behaviour at false instances is unspecified.
    """
    if not is_universal_pi1(phi):
        raise ClassError("synth_pi1 needs a universal Π₁ sentence")
    names, matrix = _universal_prefix(phi)
    if not names:
        return delta0_realiser(phi) if holds(phi) else ANY
    return _layer(names, 0, matrix)


def _layer(names: list[str], j: int, matrix: Formula) -> int:
    """Code of ``λx_{j+1}. S_{j+1}`` with ``x_1..x_j`` as leading parameters."""
    params = names[: j + 1]
    if j + 1 == len(names):
        body = realiser_expr(matrix)
    else:
        body = N.pin(N.num(_layer(names, j + 1, matrix)), *(N.var(x) for x in params))
    return closure_code(params, body)
