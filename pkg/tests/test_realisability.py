from __future__ import annotations

import pytest
from hypothesis import given, settings

from randreal.formula import (
    And,
    Bot,
    ClassError,
    Eq,
    Exists,
    ExistsLt,
    Forall,
    ForallLt,
    Plus,
    Succ,
    TruthVerdict,
    Var,
    Zero,
    eval_truth,
    numeral,
    parse_formula,
)
from randreal.machine import OutOfFuel, apply, encode
from randreal.machine import named as N
from randreal.machine.cylinder import smn
from randreal.machine.prelude import ANY, pair_code
from randreal.realisability import (
    BOUNDED,
    CheckCtx,
    Provenance,
    Status,
    WitnessDB,
    check_classical,
    synth_pi1,
    synth_sigma1,
    truth_iff_realised,
)
from randreal.realisability.compile import delta0_realiser
from suites import delta0_sentences

CTX = CheckCtx()
TOP = Eq(Zero(), Zero())
ONE_EQ = Eq(numeral(1), numeral(1))


def test_atoms():
    assert check_classical(12345, TOP, CTX).realised
    assert check_classical(ANY, Bot(), CTX).refuted
    assert check_classical(ANY, Eq(Zero(), numeral(1)), CTX).refuted


def test_conjunction_by_cases_on_input():
    r = encode(N.compile_named(N.lam("i", N.ifz(N.var("i"), N.num(ANY), N.num(ANY)))))
    assert check_classical(r, And(TOP, ONE_EQ), CTX).realised
    assert check_classical(pair_code(ANY, ANY), And(TOP, Eq(Zero(), numeral(1))), CTX).refuted


def test_existential_convention_realiser_then_witness():
    phi = Exists("x", Eq(Var("x"), numeral(2)))
    assert check_classical(pair_code(ANY, 2), phi, CTX).realised
    assert check_classical(pair_code(ANY, 3), phi, CTX).refuted


def test_synth_sigma1_examples():
    phi = Exists("x", Eq(Var("x"), numeral(2)))
    c = synth_sigma1(phi)
    assert apply(c, 1, lambda i: 0, 1000).value == 2
    assert check_classical(smn(c, 0), Eq(numeral(2), numeral(2)), CTX).realised
    assert check_classical(c, phi, CTX).realised
    nested = ForallLt("x", numeral(2), ExistsLt("y", numeral(3), Eq(Var("y"), Succ(Var("x")))))
    assert check_classical(synth_sigma1(nested), nested, CTX).realised


@pytest.mark.parametrize("fuel", [1, 10, 1000])
def test_synth_sigma1_never_realises_a_false_sentence(fuel):
    assert isinstance(synth_sigma1(Eq(Zero(), numeral(1)), fuel), OutOfFuel)
    assert isinstance(synth_sigma1(Exists("x", Eq(Succ(Var("x")), Zero())), fuel), OutOfFuel)


def test_synth_class_errors():
    with pytest.raises(ClassError):
        synth_sigma1(Forall("x", TOP))
    with pytest.raises(ClassError):
        synth_pi1(Exists("x", Forall("y", TOP)))


def test_synth_pi1_instances():
    phi = Forall("x", Eq(Plus(Var("x"), Zero()), Var("x")))
    c = synth_pi1(phi)
    for n in range(16):
        assert check_classical(smn(c, n), Eq(Plus(numeral(n), Zero()), numeral(n)), CTX).realised
    v = check_classical(c, phi, CTX)
    assert v.realised or BOUNDED in v.flags


def test_synth_pi1_on_a_false_sentence_fails_an_instance():
    c = synth_pi1(Forall("x", Eq(Var("x"), Zero())))
    assert not check_classical(smn(c, 1), Eq(numeral(1), Zero()), CTX).realised


def test_implication_uses_witness_database():
    phi = parse_formula("(imp (= 0 0) (= 1 1))")
    assert check_classical(encode(N.compile_named(N.lam("s", N.num(ANY)))), phi, CTX).realised
    vacuous = parse_formula("(imp (= 0 1) bot)")
    assert check_classical(ANY, vacuous, CTX).realised


def test_witness_db_round_trip():
    db = WitnessDB().extend(TOP, 7, Provenance.USER).certify(Eq(Zero(), numeral(1)))
    again = WitnessDB.from_sexpr(db.to_sexpr())
    assert again == db
    assert again.digest() == db.digest()


def test_ctx_rejects_nonpositive_bounds():
    with pytest.raises(ValueError):
        CheckCtx(fuel=0)


def test_truth_iff_realised_small_cases():
    assert truth_iff_realised(TOP, CTX).agree
    assert truth_iff_realised(Eq(Zero(), numeral(1)), CTX).agree


@given(delta0_sentences)
@settings(max_examples=150, deadline=None)
def test_synthesis_adequacy_on_delta0(phi):
    truth = eval_truth(phi)
    code = synth_sigma1(phi, 2000)
    if truth is TruthVerdict.TRUE:
        assert isinstance(code, int)
        assert check_classical(code, phi, CTX).status is Status.REALISED
        assert check_classical(delta0_realiser(phi), phi, CTX).realised
    else:
        assert isinstance(code, OutOfFuel)
