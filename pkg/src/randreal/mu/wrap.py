"""Formula-directed realiser wrappers that run a program under a fixed oracle view.

``wrap(φ, c, view)`` produces a program that behaves like ``c`` with every
oracle read redirected through ``view``, recursively for the sub-realisers
``c`` hands out, following the clause structure of ``φ``.  With the
all-zeros view this turns a classical realiser into one that works for
every oracle; with a prefix view it hard-codes an initial oracle segment;
with the even/odd views it runs on one half of a join.

Each compound subformula gets a closed wrapper ``λv₁…vₖ.λc.λx. body``;
atoms are wrapped by the identity.  Only the zeros view takes the free
variables ``v₁…vₖ`` as parameters, so the other views apply to open
formulas uniformly.
"""

from __future__ import annotations

import enum
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
    free_vars,
    is_delta0,
)
from ..machine import named as N
from ..machine.interp import pin
from ..realisability.compile import closure_code, realiser_expr


class ViewKind(enum.Enum):
    ZEROS = "zeros"
    PREFIX = "prefix"
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class View:
    kind: ViewKind
    bits: tuple[int, ...] = ()

    def apply(self, e: N.NTerm) -> N.NTerm:
        if self.kind is ViewKind.ZEROS:
            return N.with_zeros(e)
        if self.kind is ViewKind.PREFIX:
            return N.with_prefix(self.bits, e)
        if self.kind is ViewKind.EVEN:
            return N.with_even(e)
        return N.with_odd(e)


ZEROS_VIEW = View(ViewKind.ZEROS)
EVEN_VIEW = View(ViewKind.EVEN)
ODD_VIEW = View(ViewKind.ODD)


def prefix_view(bits) -> View:
    return View(ViewKind.PREFIX, tuple(int(b) for b in bits))


def _env(phi: Formula, view: View) -> list[str]:
    # only the zeros view consults variable values (through the Δ₀ antecedent realiser)
    return sorted(free_vars(phi)) if view.kind is ViewKind.ZEROS else []


def wrap_expr(phi: Formula, e: N.NTerm, view: View) -> N.NTerm:
    """Expression for the wrapped code of the realiser ``e`` of ``phi`` (free variables in scope)."""
    if isinstance(phi, ATOMS):
        return e
    return N.pin(N.num(wrapper_code(phi, view)), *(N.var(v) for v in _env(phi, view)), e)


@lru_cache(maxsize=20_000)
def wrapper_code(phi: Formula, view: View) -> int:
    c, x = N.var("%c"), N.var("%x")

    def out(arg: N.NTerm) -> N.NTerm:
        return view.apply(N.run(c, arg))

    if isinstance(phi, And):
        body = N.ifz(x, wrap_expr(phi.left, out(N.num(0)), view), wrap_expr(phi.right, out(N.num(1)), view))
    elif isinstance(phi, Or):
        chosen = N.ifz(
            N.var("%i"),
            wrap_expr(phi.left, out(N.num(1)), view),
            wrap_expr(phi.right, out(N.num(1)), view),
        )
        body = N.ifz(x, out(N.num(0)), N.let("%i", out(N.num(0)), chosen))
    elif isinstance(phi, (Exists, ExistsLt)):
        body = N.ifz(x, N.let(phi.var, out(N.num(1)), wrap_expr(phi.body, out(N.num(0)), view)), out(N.num(1)))
    elif isinstance(phi, (Forall, ForallLt)):
        body = N.let(phi.var, x, wrap_expr(phi.body, out(N.var(phi.var)), view))
    elif isinstance(phi, Imp):
        if view.kind is ViewKind.ZEROS:
            # the argument is only a μ-realiser, so feed the classical realiser of the Δ₀ antecedent instead
            if not is_delta0(phi.left):
                raise ClassError("the zeros wrapper handles implications with a Δ₀ antecedent only")
            body = wrap_expr(phi.right, out(realiser_expr(phi.left)), view)
        else:
            # outputs are used with fresh oracles, so they need no wrapping
            body = out(x)
    else:
        raise TypeError(f"not a compound formula: {phi!r}")
    return closure_code([*_env(phi, view), "%c", "%x"], body)


def wrap(code: int, phi: Formula, view: View) -> int:
    """Wrapped realiser for ``phi``, a sentence unless the view is uniform in variables."""
    if _env(phi, view):
        raise ValueError("the zeros wrapper needs a sentence")
    if isinstance(phi, ATOMS):
        return code
    return pin(wrapper_code(phi, view), code)


def relativise(code: int, phi: Formula, view: View) -> int:
    """Run ``code`` as a realiser of ``phi`` under an oracle view (prefix, even or odd half)."""
    if view.kind is ViewKind.ZEROS:
        raise ValueError("use translate_Pmu for the zeros view")
    return wrap(code, phi, view)
