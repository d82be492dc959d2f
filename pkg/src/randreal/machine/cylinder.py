"""Oracles, cylinders of Cantor space, and symbolic execution over cylinders."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..dyadic import DyadicRational
from .codec import decode, encode
from .interp import (
    OracleUnresolved,
    RunOutcome,
    Suspended,
    resume,
    run_from,
    start,
)
from .terms import App, Lam, Num, Run, Var


class Tail(enum.Enum):
    ZEROS = "zeros"
    ONES = "ones"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class Oracle:
    """A concrete point of Cantor space: a finite prefix followed by a regular tail."""

    prefix: tuple[int, ...] = ()
    tail: Tail = Tail.ZEROS
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.tail is Tail.PERIODIC and not self.period:
            raise ValueError("periodic tail needs a non-empty period")

    def bit(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        if self.tail is Tail.ZEROS:
            return 0
        if self.tail is Tail.ONES:
            return 1
        j = i - len(self.prefix)
        return self.period[j % len(self.period)]

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Oracle":
        return cls(tuple(bits))


ZEROS = Oracle()
ONES = Oracle(tail=Tail.ONES)


@dataclass(frozen=True)
class Cylinder:
    """Finitely many fixed bits; ``constraints`` is sorted by index."""

    constraints: tuple[tuple[int, int], ...] = ()

    @classmethod
    def prefix(cls, bits: Iterable[int]) -> "Cylinder":
        return cls(tuple((i, int(b)) for i, b in enumerate(bits)))

    @classmethod
    def of(cls, mapping: dict[int, int]) -> "Cylinder":
        return cls(tuple(sorted((int(i), int(b)) for i, b in mapping.items())))

    def __len__(self) -> int:
        return len(self.constraints)

    def as_dict(self) -> dict[int, int]:
        return dict(self.constraints)

    def get(self, i: int) -> int | None:
        for j, b in self.constraints:
            if j == i:
                return b
            if j > i:
                return None
        return None

    def extend(self, i: int, b: int) -> "Cylinder":
        cur = self.get(i)
        if cur is not None:
            if cur != b:
                raise ValueError(f"bit {i} already fixed to {cur}")
            return self
        return Cylinder(tuple(sorted(self.constraints + ((i, b),))))

    def measure(self) -> DyadicRational:
        return DyadicRational.pow2(len(self.constraints))

    def contains(self, oracle: Oracle) -> bool:
        return all(oracle.bit(i) == b for i, b in self.constraints)

    def compatible(self, other: "Cylinder") -> bool:
        mine = self.as_dict()
        return all(mine.get(i, b) == b for i, b in other.constraints)

    def intersect(self, other: "Cylinder") -> "Cylinder | None":
        if not self.compatible(other):
            return None
        merged = self.as_dict()
        merged.update(other.as_dict())
        return Cylinder.of(merged)

    def refines(self, other: "Cylinder") -> bool:
        """Every oracle in ``self`` lies in ``other``."""
        mine = self.as_dict()
        return all(mine.get(i) == b for i, b in other.constraints)

    def is_prefix(self) -> bool:
        return all(i == k for k, (i, _) in enumerate(self.constraints))

    def pattern(self) -> str:
        """Bits as a string over ``0``, ``1`` and ``*`` (unconstrained) up to the last fixed index."""
        if not self.constraints:
            return "-"
        top = self.constraints[-1][0]
        cells = ["*"] * (top + 1)
        for i, b in self.constraints:
            cells[i] = str(b)
        return "".join(cells)

    @classmethod
    def from_pattern(cls, text: str) -> "Cylinder":
        if text == "-":
            return cls()
        return cls(tuple((i, int(c)) for i, c in enumerate(text) if c != "*"))

    def sample(self, rng) -> Oracle:
        """A random oracle inside the cylinder (bits past the last constraint are random too)."""
        fixed = self.as_dict()
        top = self.constraints[-1][0] + 1 if self.constraints else 0
        bits = tuple(fixed.get(i, rng.randrange(2)) for i in range(top + 64))
        return Oracle(bits, Tail.PERIODIC, tuple(rng.randrange(2) for _ in range(61)))


FULL = Cylinder()


class _Node:
    __slots__ = ("outcome", "susp", "kids")

    def __init__(self, outcome=None, susp: Suspended | None = None):
        self.outcome = outcome
        self.susp = susp
        self.kids: list[_Node | None] = [None, None]


def _never(i: int):
    return None


def _finish(result) -> _Node:
    if isinstance(result, Suspended):
        return _Node(susp=result)
    return _Node(outcome=result)


class RunTree:
    """Lazily expanded decision tree of one run, branching on physical oracle reads."""

    def __init__(self, code: int, arg: int, fuel: int):
        self.fuel = fuel
        self.root = _finish(run_from(start(decode(code), arg), fuel, _never))

    def child(self, node: _Node, bit: int) -> _Node:
        kid = node.kids[bit]
        if kid is None:
            kid = _finish(resume(node.susp, bit, self.fuel, _never))
            node.kids[bit] = kid
        return kid


_TREES: dict[tuple[int, int, int], RunTree] = {}
_TREE_CAP = 20000


def run_tree(code: int, arg: int, fuel: int) -> RunTree:
    key = (code, arg, fuel)
    tree = _TREES.get(key)
    if tree is None:
        if len(_TREES) >= _TREE_CAP:
            _TREES.clear()
        tree = RunTree(code, arg, fuel)
        _TREES[key] = tree
    return tree


def cylinder_run(
    p: int, arg: int, cyl: Cylinder, fuel: int, depth: int | None = None
) -> list[tuple[Cylinder, RunOutcome]]:
    """Partition ``cyl`` into sub-cylinders on which the run of ``p`` on ``arg`` is constant.

    Branching happens exactly at reads of unconstrained bits.  If a branch would
    push a region past ``depth`` fixed bits, that region is reported with
    ``OracleUnresolved``.  Regions come out in lexicographic order of branch choices.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    tree = run_tree(p, arg, fuel)
    return list(_explore(tree, tree.root, cyl, depth))


def _explore(tree: RunTree, node: _Node, cyl: Cylinder, depth: int | None) -> Iterator[tuple[Cylinder, RunOutcome]]:
    stack = [(node, cyl)]
    while stack:
        node, cyl = stack.pop()
        while node.susp is not None:
            i = node.susp.index
            b = cyl.get(i)
            if b is None:
                break
            node = tree.child(node, b)
        if node.susp is None:
            yield cyl, node.outcome
            continue
        i = node.susp.index
        if depth is not None and len(cyl) >= depth:
            yield cyl, OracleUnresolved(i)
            continue
        # push the 1-branch first so the 0-branch is explored first
        stack.append((tree.child(node, 1), cyl.extend(i, 1)))
        stack.append((tree.child(node, 0), cyl.extend(i, 0)))


def smn(p: int, n: int) -> int:
    """Code of the program that computes ``c = p(n)`` and then runs ``c`` on its input, same oracle."""
    return encode(Lam(Run(App(decode(p), Num(n)), Var(0))))
