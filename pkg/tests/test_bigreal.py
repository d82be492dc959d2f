from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randreal.bigreal import (
    CO_INTERVAL_FREE_FAMILIES,
    Exhausted,
    FamilyKind,
    Found,
    Undecided,
    bounded_exhaustive_search,
    check_F,
    encode_for_positive_measure,
    translate_PF,
    translate_PF_inv,
)
from randreal.bigreal.positive import decode_nat, encode_nat
from randreal.dyadic import DyadicRational
from randreal.formula import Bot, Eq, Zero, holds, numeral, parse_formula
from randreal.machine import Diverge, Lam, Num, OracleBit, Succ, encode
from randreal.machine.prelude import ANY, pair_code
from randreal.mu.fixtures import TRUE_OR, or_pair_demo
from randreal.realisability import CheckCtx, check_classical
from randreal.realisability.compile import delta0_realiser
from suites import delta0_sentences

CTX = CheckCtx()
TOP = Eq(Zero(), Zero())


def test_search_on_a_constant():
    found = bounded_exhaustive_search(encode(Lam(Num(42))), 0)
    assert found == Found(42, 4, (0, 0, 0, 0), 4, False)
    assert found.bits == "0000"
    # three successor steps on top of the constant
    slow = encode(Lam(Succ(Succ(Succ(Num(39))))))
    assert bounded_exhaustive_search(slow, 0) == Found(42, 7, (0,) * 7, 7, False)


def test_search_on_divergence_is_exhausted():
    assert bounded_exhaustive_search(encode(Diverge()), 0, 1000) == Exhausted(1000)


def test_search_flags_interval_sensitivity():
    found = bounded_exhaustive_search(encode(Lam(OracleBit(Num(0)))), 0)
    assert found.value == 0 and found.interval_sensitive


def test_search_rejects_bad_bounds():
    with pytest.raises(ValueError):
        bounded_exhaustive_search(ANY, 0, 0)


@pytest.mark.parametrize("family", list(FamilyKind))
def test_atoms_in_every_family(family):
    assert check_F(ANY, TOP, family, CTX).realised
    assert check_F(ANY, Bot(), family, CTX).refuted


@pytest.mark.parametrize("family", list(FamilyKind))
def test_oracle_insensitive_disjunction(family):
    phi = parse_formula("(or (= 0 1) (= 1 1))")
    assert check_F(delta0_realiser(phi), phi, family, CTX).realised


@pytest.mark.parametrize("family", CO_INTERVAL_FREE_FAMILIES)
def test_oracle_dependent_index_is_not_enough(family):
    # the index is 1 on u(0)=1, where the payload fails
    assert not check_F(or_pair_demo().code, TRUE_OR, family, CTX).realised


def test_translate_atoms_and_disjunction():
    assert translate_PF(123, TOP) == 123 and translate_PF_inv(123, TOP) == 123
    phi = parse_formula("(or (= 0 0) (= 0 1))")
    q = translate_PF(pair_code(0, ANY), phi)
    assert check_F(q, phi, ctx=CTX).realised
    back = translate_PF_inv(q, phi)
    assert check_classical(back, phi, CTX).realised


def test_translate_existential_keeps_the_witness():
    phi = parse_formula("(exists x (= x 2))")
    q = translate_PF(pair_code(ANY, 2), phi)
    assert check_F(q, phi, ctx=CTX).realised
    assert check_classical(translate_PF_inv(q, phi), phi, CTX).realised


def test_nat_encoding_examples():
    assert encode_nat(0) == (0, 0, 0, 1)
    assert encode_nat(2) == (1, 1, 0, 0, 0, 1)
    assert decode_nat(encode_nat(5) + (1,)) == (5, 8)
    with pytest.raises(ValueError):
        encode_nat(-1)


@given(st.lists(st.integers(0, 10**6), max_size=5))
def test_nat_encoding_is_self_delimiting(ns):
    tape = tuple(b for n in ns for b in encode_nat(n))
    off, out = 0, []
    for _ in ns:
        n, off = decode_nat(tape, off)
        out.append(n)
    assert out == ns and off == len(tape)


def test_positive_encoding_examples():
    e = encode_for_positive_measure(parse_formula("(or (= 0 1) (= 1 1))"))
    assert e.fields == (1,) and e.tape == (1, 1, 0, 1)
    assert e.cylinder.measure() == DyadicRational.pow2(4)
    assert encode_for_positive_measure(TOP).tape == ()
    with pytest.raises(Undecided):
        encode_for_positive_measure(Eq(Zero(), numeral(1)))


@given(delta0_sentences)
@settings(max_examples=60, deadline=None)
def test_round_trip_on_delta0(phi):
    if not holds(phi):
        return
    q = translate_PF(delta0_realiser(phi), phi)
    assert check_F(q, phi, ctx=CTX).realised
    assert check_classical(translate_PF_inv(q, phi), phi, CTX).realised
