"""Building μ-realisers of compounds from components and back.

Constructors combine realisers of the parts; extractors read a component
off a region where the compound realiser works, using the exact report.
"""

from __future__ import annotations

from ..dyadic import DyadicRational
from ..formula import Exists, ExistsLt, Formula, Imp, Or
from ..machine.cylinder import Cylinder, cylinder_run, smn
from ..machine.interp import Value
from ..machine.prelude import pair_code
from ..realisability.context import CheckCtx
from .check import check_O
from .pushup import push_up

PAIRING_TARGET = DyadicRational(3, 2)


class ExtractError(RuntimeError):
    """No region with a settled verdict supports the requested extraction."""


def _boosted(code: int, phi: Formula | None, ctx: CheckCtx) -> int:
    if phi is None:
        return code
    if check_O(code, phi, Cylinder(), ctx).interval.lo > PAIRING_TARGET:
        return code
    pushed = push_up(code, phi, PAIRING_TARGET, ctx)
    return pushed.code if pushed.found else code


def cor36_and_pair(
    s: int, q: int, left: Formula | None = None, right: Formula | None = None, ctx: CheckCtx | None = None
) -> int:
    """Pair realisers of the two conjuncts.

    Given the conjuncts, each input is first pushed above 3/4 so the two
    success sets are forced to overlap in measure above 1/2.
    """
    ctx = ctx or CheckCtx()
    return pair_code(_boosted(s, left, ctx), _boosted(q, right, ctx))


def cor36_and_split(p: int) -> tuple[int, int]:
    """Programs running ``p(0)`` and ``p(1)`` under the caller's oracle."""
    return smn(p, 0), smn(p, 1)


def cor36_or_inject(i: int, q: int) -> int:
    if i not in (0, 1):
        raise ValueError("disjunct index must be 0 or 1")
    return pair_code(i, q)


def _value_on(p: int, arg: int, region: Cylinder, ctx: CheckCtx) -> int:
    runs = cylinder_run(p, arg, region, ctx.fuel, ctx.depth)
    if len(runs) == 1 and isinstance(runs[0][1], Value):
        return runs[0][1].value
    raise ExtractError(f"p({arg}) is not constant on a Yes region")


def _first_yes(p: int, phi: Formula, ctx: CheckCtx) -> Cylinder:
    report = check_O(p, phi, Cylinder(), ctx)
    regions = report.yes_regions()
    if not regions:
        raise ExtractError("no region of positive measure is known to work")
    # largest region first, then canonical order
    return min(regions, key=lambda c: (len(c), c.constraints))


def cor36_or_extract(p: int, phi: Or, ctx: CheckCtx | None = None) -> tuple[int, int]:
    """Disjunct index chosen on a positive-measure region, with a realiser of that disjunct."""
    ctx = ctx or CheckCtx()
    region = _first_yes(p, phi, ctx)
    return _value_on(p, 0, region, ctx), smn(p, 1)


def cor36_imp_apply(p: int, s: int, phi: Imp | None = None, ctx: CheckCtx | None = None) -> int:
    """The μ-realiser ``p^u(s)`` of the consequent, for an oracle ``u`` where ``p`` works."""
    ctx = ctx or CheckCtx()
    region = _first_yes(p, phi, ctx) if phi is not None else Cylinder()
    return _value_on(p, s, region, ctx)


def cor36_exists_extract(p: int, phi: Exists | ExistsLt, ctx: CheckCtx | None = None) -> tuple[int, int]:
    """Witness read on a positive-measure region, with a realiser of the instance."""
    ctx = ctx or CheckCtx()
    region = _first_yes(p, phi, ctx)
    return _value_on(p, 1, region, ctx), smn(p, 0)


def cor36_forall_instance(p: int, n: int) -> int:
    return smn(p, n)


__all__ = [
    "ExtractError", "cor36_and_pair", "cor36_and_split", "cor36_exists_extract", "cor36_forall_instance",
    "cor36_imp_apply", "cor36_or_extract", "cor36_or_inject",
]
