"""Checker configuration and the witness database used by the implication clause."""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field, replace

from ..formula import Formula, formula_from_sexpr, print_formula
from ..sexpr import Atom, SExprError, SList, read_one

DEFAULT_FUEL = 10_000
DEFAULT_FORALL_BUDGET = 8
DEFAULT_DEPTH = 16
DEFAULT_TRUTH_BUDGET = 64


class Provenance(enum.Enum):
    SYNTHESIZED = "synthesized"
    USER = "user-supplied"
    DERIVED = "derived"


@dataclass(frozen=True)
class Witness:
    code: int
    provenance: Provenance


@dataclass(frozen=True)
class WitnessDB:
    """Codes believed to realise formulas, plus formulas certified to have no realiser.

    Immutable: ``extend`` and ``certify`` return a new database.
    """

    entries: tuple[tuple[Formula, Witness], ...] = ()
    non_realisable: frozenset = frozenset()

    def witnesses(self, phi: Formula) -> tuple[Witness, ...]:
        return tuple(w for f, w in self.entries if f == phi)

    def extend(self, phi: Formula, code: int, provenance: Provenance = Provenance.USER) -> "WitnessDB":
        w = Witness(code, provenance)
        if (phi, w) in self.entries:
            return self
        return replace(self, entries=self.entries + ((phi, w),))

    def certify(self, phi: Formula) -> "WitnessDB":
        """Record ``phi`` as having no realiser; callers must hold a certificate."""
        return replace(self, non_realisable=self.non_realisable | {phi})

    def is_certified(self, phi: Formula) -> bool:
        return phi in self.non_realisable

    def to_sexpr(self) -> str:
        lines = [f"(witness {print_formula(f)} {w.code} {w.provenance.value})" for f, w in self.entries]
        lines += [f"(non-realisable {print_formula(f)})" for f in sorted(self.non_realisable, key=print_formula)]
        return "(" + "\n ".join(lines) + ")"

    @classmethod
    def from_sexpr(cls, text: str) -> "WitnessDB":
        expr = read_one(text)
        if not isinstance(expr, SList):
            raise SExprError("witness database must be a list", expr.offset)
        db = cls()
        for item in expr.items:
            if not isinstance(item, SList) or not item.items or not isinstance(item.items[0], Atom):
                raise SExprError("bad witness entry", item.offset)
            tag = item.items[0].text
            if tag == "witness" and len(item.items) == 4:
                code, prov = item.items[2], item.items[3]
                if not isinstance(code, Atom) or not code.text.isdigit():
                    raise SExprError("witness code must be a natural", code.offset)
                if not isinstance(prov, Atom):
                    raise SExprError("bad provenance", prov.offset)
                try:
                    provenance = Provenance(prov.text)
                except ValueError:
                    raise SExprError(f"unknown provenance {prov.text!r}", prov.offset) from None
                db = db.extend(formula_from_sexpr(item.items[1]), int(code.text), provenance)
            elif tag == "non-realisable" and len(item.items) == 2:
                db = db.certify(formula_from_sexpr(item.items[1]))
            else:
                raise SExprError(f"bad witness entry {tag!r}", item.offset)
        return db

    def digest(self) -> str:
        return hashlib.sha256(self.to_sexpr().encode()).hexdigest()[:12]


@dataclass(frozen=True)
class CheckCtx:
    """Resource bounds shared by every checker.

    ``forall_budget`` bounds the instances tried for an unbounded ``∀``;
    ``depth`` bounds the number of fixed oracle bits in a region;
    ``truth_budget`` bounds witness search in truth evaluation;
    ``auto_witness`` lets the implication clause synthesize antecedent realisers.
    """

    fuel: int = DEFAULT_FUEL
    forall_budget: int = DEFAULT_FORALL_BUDGET
    depth: int = DEFAULT_DEPTH
    truth_budget: int = DEFAULT_TRUTH_BUDGET
    witness_db: WitnessDB = field(default_factory=WitnessDB)
    auto_witness: bool = True

    def __post_init__(self) -> None:
        for name in ("fuel", "forall_budget", "depth", "truth_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_witness(self, phi: Formula, code: int, provenance: Provenance = Provenance.USER) -> "CheckCtx":
        return replace(self, witness_db=self.witness_db.extend(phi, code, provenance))

    def with_db(self, db: WitnessDB) -> "CheckCtx":
        return replace(self, witness_db=db)

    def echo(self) -> str:
        return (
            f"fuel={self.fuel} depth={self.depth} forall_budget={self.forall_budget} "
            f"truth_budget={self.truth_budget} witness_db={self.witness_db.digest()}"
        )
