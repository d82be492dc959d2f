"""The RML oracle machine: terms, Gödel numbering, interpreter and cylinder execution."""

from __future__ import annotations

from .codec import code_size, decode, encode, enumerate_program
from .interp import OracleUnresolved, OutOfFuel, RunOutcome, Stuck, Value, apply, pin
from .terms import (
    App,
    Clock,
    Diverge,
    Fix,
    IfZ,
    Lam,
    Num,
    OracleBit,
    Pin,
    Pred,
    Run,
    Succ,
    Term,
    Var,
    WithEven,
    WithOdd,
    WithPrefix,
    WithZeros,
)

__all__ = [
    "App", "Clock", "Diverge", "Fix", "IfZ", "Lam", "Num", "OracleBit", "Pin", "Pred", "Run",
    "Succ", "Term", "Var", "WithEven", "WithOdd", "WithPrefix", "WithZeros",
    "OracleUnresolved", "OutOfFuel", "RunOutcome", "Stuck", "Value",
    "apply", "code_size", "decode", "encode", "enumerate_program", "pin",
]
