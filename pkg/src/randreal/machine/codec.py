"""Bit-exact serialization of closed RML terms and the induced Gödel numbering.

A term is written in preorder, one opcode byte per node.  ``Var`` and ``Num``
carry an unsigned LEB128 payload; ``WithPrefix`` carries the LEB128 bit count
followed by the bits packed LSB-first.  The code of a term is the natural
whose big-endian base-256 digits are ``0x01`` followed by the byte stream.
Every natural decodes to some term: anything malformed becomes ``Diverge``.
"""

from __future__ import annotations

from functools import lru_cache

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
    is_closed,
)

HEADER = 0x01


class EncodeError(ValueError):
    pass


class _Malformed(Exception):
    pass


def leb128(n: int) -> bytes:
    if n < 0:
        raise EncodeError("LEB128 payload must be a natural")
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_leb128(data: bytes, i: int) -> tuple[int, int]:
    value = 0
    shift = 0
    while True:
        if i >= len(data):
            raise _Malformed
        byte = data[i]
        i += 1
        value |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            # reject non-minimal encodings so that the numbering stays injective
            if byte == 0 and shift > 7:
                raise _Malformed
            return value, i


def pack_bits(bits: tuple[int, ...]) -> bytes:
    out = bytearray((len(bits) + 7) // 8)
    for j, b in enumerate(bits):
        if b:
            out[j // 8] |= 1 << (j % 8)
    return bytes(out)


def serialize(t: Term) -> bytes:
    out = bytearray()
    stack: list[Term] = [t]
    while stack:
        node = stack.pop()
        if not isinstance(node, Term):
            raise EncodeError(f"not an RML term: {node!r}")
        out.append(node.OP)
        if isinstance(node, (Var, Num)):
            out += leb128(node.index if isinstance(node, Var) else node.value)
        elif isinstance(node, WithPrefix):
            if any(b not in (0, 1) for b in node.bits):
                raise EncodeError("prefix bits must be 0 or 1")
            out += leb128(len(node.bits))
            out += pack_bits(node.bits)
            stack.append(node.expr)
        elif isinstance(node, (Lam, Fix)):
            stack.append(node.body)
        elif isinstance(node, (Succ, Pred, WithEven, WithOdd, WithZeros)):
            stack.append(node.expr)
        elif isinstance(node, OracleBit):
            stack.append(node.index)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fn)
        elif isinstance(node, (Run, Pin)):
            stack.append(node.arg)
            stack.append(node.code)
        elif isinstance(node, IfZ):
            stack.append(node.orelse)
            stack.append(node.then)
            stack.append(node.cond)
        elif isinstance(node, Clock):
            stack.append(node.limit)
            stack.append(node.arg)
            stack.append(node.code)
    return bytes(out)


def encode(t: Term) -> int:
    """Gödel number of a closed term."""
    if not is_closed(t):
        raise EncodeError("only closed terms are encodable")
    return int.from_bytes(bytes([HEADER]) + serialize(t), "big")


_UNARY = {0x01: Lam, 0x07: Fix, 0x04: Succ, 0x05: Pred, 0x08: OracleBit, 0x0B: WithEven, 0x0C: WithOdd, 0x10: WithZeros}
_BINARY = {0x02: App, 0x09: Run, 0x0E: Pin}


def _parse(data: bytes, i: int, depth: int) -> tuple[Term, int]:
    # explicit work stack so that deeply nested codes do not exhaust recursion
    # each task: ("node", depth) to parse, or ("build", opcode, arity, extra)
    results: list[Term] = []
    tasks: list[tuple] = [("node", depth)]
    while tasks:
        task = tasks.pop()
        if task[0] == "build":
            _, op, arity, extra = task
            args = results[len(results) - arity :]
            del results[len(results) - arity :]
            if op in _UNARY:
                results.append(_UNARY[op](args[0]))
            elif op in _BINARY:
                results.append(_BINARY[op](args[0], args[1]))
            elif op == 0x06:
                results.append(IfZ(args[0], args[1], args[2]))
            elif op == 0x0F:
                results.append(Clock(args[0], args[1], args[2]))
            elif op == 0x0A:
                results.append(WithPrefix(extra, args[0]))
            continue
        d = task[1]
        if i >= len(data):
            raise _Malformed
        op = data[i]
        i += 1
        if op == 0x00:
            idx, i = _read_leb128(data, i)
            if idx >= d:
                raise _Malformed
            results.append(Var(idx))
        elif op == 0x03:
            val, i = _read_leb128(data, i)
            results.append(Num(val))
        elif op == 0x0D:
            results.append(Diverge())
        elif op in _UNARY:
            inner = d + 1 if op in (0x01, 0x07) else d
            tasks.append(("build", op, 1, None))
            tasks.append(("node", inner))
        elif op in _BINARY:
            tasks.append(("build", op, 2, None))
            tasks.append(("node", d))
            tasks.append(("node", d))
        elif op in (0x06, 0x0F):
            tasks.append(("build", op, 3, None))
            tasks.extend([("node", d)] * 3)
        elif op == 0x0A:
            n, i = _read_leb128(data, i)
            nbytes = (n + 7) // 8
            if i + nbytes > len(data):
                raise _Malformed
            raw = data[i : i + nbytes]
            i += nbytes
            bits = tuple((raw[j // 8] >> (j % 8)) & 1 for j in range(n))
            if pack_bits(bits) != raw:
                raise _Malformed
            tasks.append(("build", op, 1, bits))
            tasks.append(("node", d))
        else:
            raise _Malformed
    return results[0], i


@lru_cache(maxsize=65536)
def decode(code: int) -> Term:
    """Total decoding: invalid codes (including 0) denote ``Diverge``."""
    if code <= 0:
        return Diverge()
    data = code.to_bytes((code.bit_length() + 7) // 8, "big")
    if data[0] != HEADER:
        return Diverge()
    try:
        term, end = _parse(data, 1, 0)
    except _Malformed:
        return Diverge()
    if end != len(data):
        return Diverge()
    return term


def code_size(code: int) -> int:
    """Serialized length of a code, counted in base-256 digits."""
    return max(1, (code.bit_length() + 7) // 8)


def enumerate_program(n: int) -> int:
    """The n-th program of the enumeration; the identity on codes."""
    if n < 0:
        raise ValueError("program indices are naturals")
    return n
