"""Fuel-metered call-by-value interpreter for RML.

The evaluator is a CEK-style machine whose states are immutable, so a run
that reaches an unresolved oracle bit can be suspended and resumed once per
bit value.  Fuel accounting: every node evaluation costs one step, every
oracle read one more, a decode inside ``Run`` costs ``1 + code_size``, a
``Pin`` costs ``1 + code_size(result)``, and a ``Clock`` costs the steps of
its sub-run plus ``1 + code_size`` of the clocked code.  Fuel is global for a
top-level application and shared with nested ``Run``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .codec import HEADER, code_size, decode, leb128
from .terms import (
    App,
    Diverge,
    Lam,
    Num,
    Term,
)


@dataclass(frozen=True)
class Value:
    value: int
    fuel_used: int
    read_log: frozenset[int] = frozenset()


@dataclass(frozen=True)
class OutOfFuel:
    fuel_used: int
    # set when evaluation reached ``Diverge``: no amount of fuel would help
    diverged: bool = False


@dataclass(frozen=True)
class Stuck:
    reason: str
    fuel_used: int = 0
    read_log: frozenset[int] = frozenset()


@dataclass(frozen=True)
class OracleUnresolved:
    index: int


RunOutcome = Union[Value, OutOfFuel, Stuck, OracleUnresolved]


class Closure:
    __slots__ = ("body", "env")

    def __init__(self, body: Term, env):
        self.body = body
        self.env = env

    def __repr__(self) -> str:
        return f"Closure({self.body!r})"


# continuation frame tags
_APP1, _APP2, _APPLYTO, _SUCC, _PRED, _IFZ, _ORACLE, _RUN1, _RUN2, _VIEW, _PIN1, _PIN2, _CLK1, _CLK2, _CLK3 = range(15)

# view transformers: prefix bits, even half, odd half, all zeros
_VP, _VE, _VO, _VZ = range(4)


@dataclass(frozen=True)
class Suspended:
    """A run paused on an oracle read of physical index ``index``."""

    index: int
    kont: object
    view: object
    used: int
    log: tuple[int, ...]


ReadFn = Callable[[int], Optional[int]]


def pin(code: int, arg: int) -> int:
    """Code of ``App(decode(code), Num(arg))``, computed on the byte stream."""
    if isinstance(decode(code), Diverge):
        body = bytes([Diverge.OP])
    else:
        body = code.to_bytes(code_size(code), "big")[1:]
    data = bytes([HEADER, App.OP]) + body + bytes([Num.OP]) + leb128(arg)
    return int.from_bytes(data, "big")


def _lookup(env, index: int):
    while index:
        env = env[1]
        index -= 1
    return env[0]


def _exec(mode: int, x, env, kont, view, used: int, log: tuple[int, ...], fuel: int, read: ReadFn):
    """Drive the machine until it halts, gets stuck, runs out of fuel or needs a bit.

    ``mode`` 0 evaluates term ``x`` in ``env``; mode 1 returns value ``x`` to ``kont``.
    """
    while True:
        if mode == 0:
            if used >= fuel:
                return OutOfFuel(fuel)
            used += 1
            op = x.OP
            if op == 0x00:
                x = _lookup(env, x.index)
                mode = 1
            elif op == 0x03:
                x = x.value
                mode = 1
            elif op == 0x02:
                kont = (_APP1, x.arg, env, kont)
                x = x.fn
            elif op == 0x01:
                x = Closure(x.body, env)
                mode = 1
            elif op == 0x06:
                kont = (_IFZ, x.then, x.orelse, env, kont)
                x = x.cond
            elif op == 0x04:
                kont = (_SUCC, kont)
                x = x.expr
            elif op == 0x05:
                kont = (_PRED, kont)
                x = x.expr
            elif op == 0x07:
                body = x.body
                if not isinstance(body, Lam):
                    return Stuck("fixpoint body must be a lambda", used, frozenset(log))
                clo = Closure(body.body, None)
                clo.env = (clo, env)
                x = clo
                mode = 1
            elif op == 0x09:
                kont = (_RUN1, x.arg, env, kont)
                x = x.code
            elif op == 0x08:
                kont = (_ORACLE, kont)
                x = x.index
            elif op == 0x0E:
                kont = (_PIN1, x.arg, env, kont)
                x = x.code
            elif op == 0x0F:
                kont = (_CLK1, x.arg, x.limit, env, kont)
                x = x.code
            elif op == 0x0A:
                kont = (_VIEW, view, kont)
                view = ((_VP, x.bits), view)
                x = x.expr
            elif op == 0x0B:
                kont = (_VIEW, view, kont)
                view = ((_VE, None), view)
                x = x.expr
            elif op == 0x0C:
                kont = (_VIEW, view, kont)
                view = ((_VO, None), view)
                x = x.expr
            elif op == 0x10:
                kont = (_VIEW, view, kont)
                view = ((_VZ, None), view)
                x = x.expr
            elif op == 0x0D:
                return OutOfFuel(fuel, diverged=True)
            else:
                return Stuck(f"unknown opcode {op}", used, frozenset(log))
            continue

        # mode 1: deliver value x to the continuation
        if kont is None:
            if isinstance(x, int):
                return Value(x, used, frozenset(log))
            return Stuck("result is not a natural", used, frozenset(log))
        tag = kont[0]
        if tag == _APP1:
            _, arg, aenv, rest = kont
            kont = (_APP2, x, rest)
            x, env, mode = arg, aenv, 0
        elif tag == _APP2 or tag == _APPLYTO:
            if tag == _APP2:
                fn, arg = kont[1], x
            else:
                fn, arg = x, kont[1]
            kont = kont[2]
            if not isinstance(fn, Closure):
                return Stuck("application of a non-function", used, frozenset(log))
            x, env, mode = fn.body, (arg, fn.env), 0
        elif tag == _IFZ:
            if not isinstance(x, int):
                return Stuck("conditional on a non-natural", used, frozenset(log))
            _, then, orelse, cenv, kont = kont
            x, env, mode = (then if x == 0 else orelse), cenv, 0
        elif tag == _SUCC:
            if not isinstance(x, int):
                return Stuck("successor of a non-natural", used, frozenset(log))
            x, kont = x + 1, kont[1]
        elif tag == _PRED:
            if not isinstance(x, int):
                return Stuck("predecessor of a non-natural", used, frozenset(log))
            x, kont = (x - 1 if x else 0), kont[1]
        elif tag == _VIEW:
            view, kont = kont[1], kont[2]
        elif tag == _ORACLE:
            if not isinstance(x, int):
                return Stuck("oracle index is not a natural", used, frozenset(log))
            if used >= fuel:
                return OutOfFuel(fuel)
            used += 1
            kont = kont[1]
            i = x
            bit = None
            v = view
            while v is not None:
                kind, bits = v[0]
                if kind == _VP:
                    if i < len(bits):
                        bit = bits[i]
                        break
                    i -= len(bits)
                elif kind == _VE:
                    i = 2 * i
                elif kind == _VO:
                    i = 2 * i + 1
                else:
                    bit = 0
                    break
                v = v[1]
            if bit is None:
                bit = read(i)
                if bit is None:
                    return Suspended(i, kont, view, used, log)
                log = log + (i,)
            x = bit
        elif tag == _RUN1:
            if not isinstance(x, int):
                return Stuck("run of a non-natural code", used, frozenset(log))
            _, arg, aenv, rest = kont
            kont = (_RUN2, x, rest)
            x, env, mode = arg, aenv, 0
        elif tag == _RUN2:
            if not isinstance(x, int):
                return Stuck("run on a non-natural argument", used, frozenset(log))
            code = kont[1]
            cost = 1 + code_size(code)
            if used + cost > fuel:
                return OutOfFuel(fuel)
            used += cost
            kont = (_APPLYTO, x, kont[2])
            x, env, mode = decode(code), None, 0
        elif tag == _PIN1:
            if not isinstance(x, int):
                return Stuck("pin of a non-natural code", used, frozenset(log))
            _, arg, aenv, rest = kont
            kont = (_PIN2, x, rest)
            x, env, mode = arg, aenv, 0
        elif tag == _PIN2:
            if not isinstance(x, int):
                return Stuck("pin with a non-natural argument", used, frozenset(log))
            result = pin(kont[1], x)
            cost = 1 + code_size(result)
            if used + cost > fuel:
                return OutOfFuel(fuel)
            used += cost
            x, kont = result, kont[2]
        elif tag == _CLK1:
            if not isinstance(x, int):
                return Stuck("clock of a non-natural code", used, frozenset(log))
            _, arg, limit, aenv, rest = kont
            kont = (_CLK2, x, limit, aenv, rest)
            x, env, mode = arg, aenv, 0
        elif tag == _CLK2:
            if not isinstance(x, int):
                return Stuck("clock on a non-natural argument", used, frozenset(log))
            _, code, limit, aenv, rest = kont
            kont = (_CLK3, code, x, rest)
            x, env, mode = limit, aenv, 0
        elif tag == _CLK3:
            if not isinstance(x, int):
                return Stuck("clock with a non-natural limit", used, frozenset(log))
            _, code, arg, rest = kont
            overhead = 1 + code_size(code)
            remaining = fuel - used - overhead
            if remaining < 0:
                return OutOfFuel(fuel)
            sub_fuel = min(x, remaining)
            sub = apply(code, arg, ZERO_READ, sub_fuel) if sub_fuel > 0 else OutOfFuel(0)
            if isinstance(sub, Value):
                used += overhead + sub.fuel_used
                x = sub.value + 1
            elif isinstance(sub, OutOfFuel) and not sub.diverged and sub_fuel < x:
                # the outer budget, not the clock limit, was exhausted
                return OutOfFuel(fuel)
            else:
                used += overhead + (sub.fuel_used if isinstance(sub, (OutOfFuel, Stuck)) else 0)
                if used > fuel:
                    return OutOfFuel(fuel)
                x = 0
            kont = rest
        else:
            return Stuck(f"bad continuation {tag}", used, frozenset(log))


def ZERO_READ(i: int) -> int:
    return 0


def start(term: Term, arg: int):
    """Initial machine registers for evaluating ``App(term, Num(arg))``."""
    return (0, App(term, Num(arg)), None, None, None, 0, ())


def run_from(state, fuel: int, read: ReadFn):
    mode, x, env, kont, view, used, log = state
    return _exec(mode, x, env, kont, view, used, log, fuel, read)


def resume(susp: Suspended, bit: int, fuel: int, read: ReadFn):
    return _exec(1, bit, None, susp.kont, susp.view, susp.used, susp.log + (susp.index,), fuel, read)


def eval_term(term: Term, arg: int, read: ReadFn, fuel: int) -> RunOutcome:
    result = run_from(start(term, arg), fuel, read)
    if isinstance(result, Suspended):
        return OracleUnresolved(result.index)
    return result


def apply(p: int, arg: int, oracle: "Callable[[int], int] | object", fuel: int) -> RunOutcome:
    """Run code ``p`` on ``arg`` with the given oracle and step budget.

    ``oracle`` is either a callable ``i -> bit`` or an object with a ``bit`` method.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    read = oracle.bit if hasattr(oracle, "bit") else oracle
    return eval_term(decode(p), arg, read, fuel)
