"""Bounded exhaustive search over finite oracle strings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from ..machine.cylinder import FULL, cylinder_run
from ..machine.interp import Value


@dataclass(frozen=True)
class Found:
    value: int
    k: int
    s: tuple[int, ...]  # the lexicographically first halting string of length k
    steps: int
    # another string of length k halts with a different (or rejected) value
    interval_sensitive: bool = False

    @property
    def bits(self) -> str:
        return "".join(map(str, self.s))


@dataclass(frozen=True)
class Exhausted:
    max_k: int


SearchResult = Union[Found, Exhausted]


def _halting_leaves(p: int, n: int, max_k: int, max_bits: int) -> list[tuple[int, tuple[int, ...], Value]]:
    """Halting runs of ``p(n)`` as ``(k, s, outcome)`` with ``k`` the least length that finds them.

    A run halting after ``f`` steps with fixed bits below ``m`` is found at
    every ``k >= max(f, m)``; on the string of length ``k`` that fixes those
    bits and is 0 elsewhere, which is the first such string.
    """
    out = []
    for cyl, outcome in cylinder_run(p, n, FULL, max_k, max_bits):
        if not isinstance(outcome, Value):
            continue
        fixed = cyl.as_dict()
        k = max(outcome.fuel_used, max(fixed, default=-1) + 1)
        if k <= max_k:
            out.append((k, tuple(fixed.get(i, 0) for i in range(k)), outcome))
    return out


def bounded_exhaustive_search(
    p: int, n: int, max_k: int = 100_000, guard: Callable[[int], bool] | None = None, max_bits: int = 24
) -> SearchResult:
    """For ``k = 0, 1, …`` run ``p^s(n)`` for ``k`` steps on every string ``s`` of length ``k``.

    The first halting run in (``k``, lexicographic ``s``) order wins.  Reading a
    bit beyond ``|s|`` counts as not halting on ``s``.  ``guard`` optionally
    names the acceptable outputs; a competing string at the winning ``k``
    with another output, or an output outside the guard, sets
    ``interval_sensitive``.

    Rather than rerunning for each ``k`` the run tree is explored once with
    ``max_k`` steps; runs that fix more than ``max_bits`` bits are not
    followed.
    """
    if max_k <= 0:
        raise ValueError("max_k must be positive")
    leaves = _halting_leaves(p, n, max_k, max_bits)
    if not leaves:
        return Exhausted(max_k)
    k = min(leaf[0] for leaf in leaves)
    now = [(s, v) for kk, s, v in leaves if kk == k]
    s, first = min(now, key=lambda h: h[0])
    values = {v.value for _, v in now}
    sensitive = len(values) > 1 or (guard is not None and not all(guard(v) for v in values))
    return Found(first.value, k, s, first.fuel_used, sensitive)
