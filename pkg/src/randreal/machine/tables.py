"""Program tables: the maps ``k -> p_k`` that halting atoms refer to.

The ``enum`` table is the Gödel enumeration itself.  Curated finite tables
fix a handful of programs with known halting behaviour so that the
diagonal and induction constructions have settled, reproducible measures.
Indices beyond a curated table map to code 0, which decodes to ``Diverge``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import named as N
from .codec import encode
from .interp import Value, apply
from .terms import Diverge, Lam, Num


@dataclass(frozen=True)
class ProgramTable:
    name: str
    entries: tuple[int, ...] | None = None  # None means the identity enumeration

    def code(self, k: int) -> int:
        if self.entries is None:
            return k
        return self.entries[k] if k < len(self.entries) else 0

    def lookup_term(self) -> N.NTerm:
        """Closed named term ``λk. p_k``."""
        if self.entries is None:
            return N.lam("%k", N.var("%k"))
        body: N.NTerm = N.num(0)
        for c in reversed(self.entries):
            body = ("chain", c, body)
        return N.lam("%k", _unchain(body, N.var("%k"), 0))


def _unchain(chain: N.NTerm, key: N.NTerm, depth: int) -> N.NTerm:
    if chain[0] != "chain":
        return chain
    name = f"%k{depth}"
    rest = _unchain(chain[2], N.var(name), depth + 1)
    return N.ifz(key, N.num(chain[1]), N.let(name, N.pred(key), rest))


_REGISTRY: dict[str, ProgramTable] = {}


def register_table(table: ProgramTable) -> ProgramTable:
    _REGISTRY[table.name] = table
    return table


def get_table(name: str) -> ProgramTable:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown program table {name!r}") from None


def table_names() -> list[str]:
    return sorted(_REGISTRY)


def halts_within(table: ProgramTable, k: int, steps: int) -> tuple[bool, int | None]:
    """Does ``p_k(k)`` halt within ``steps`` steps on the all-zeros oracle? Also return its output."""
    if steps <= 0:
        return False, None
    out = apply(table.code(k), k, lambda i: 0, steps)
    if isinstance(out, Value):
        return True, out.value
    return False, None


HALTS = encode(Lam(Num(0)))
LOOPS = encode(Lam(Diverge()))

ENUM = register_table(ProgramTable("enum"))
# p_k answers 2^(k+1): exactly the value whose (k+1)-bit guess block is all zeros
DIAG4 = register_table(ProgramTable("diag4", tuple(encode(Lam(Num(2 ** (k + 1)))) for k in range(4))))
DIAG1_LOOP = register_table(ProgramTable("diag1-loop", (LOOPS,)))
HALTING = register_table(ProgramTable("halting", tuple(encode(Lam(Num(k))) for k in range(8))))
MIXED = register_table(ProgramTable("mixed", tuple(HALTS if k % 2 == 0 else LOOPS for k in range(8))))
