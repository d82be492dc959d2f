from __future__ import annotations

import pytest
from hypothesis import given, settings

from randreal.formula import (
    ClassError,
    Eq,
    Exists,
    Forall,
    ForallLt,
    Plus,
    SentenceClass,
    Succ,
    Times,
    TruthVerdict,
    UnboundVariableError,
    Var,
    Zero,
    classify,
    eval_truth,
    free_vars,
    numeral,
    parse_formula,
    print_formula,
    substitute,
)
from randreal.sexpr import SExprError
from suites import delta0_sentences


def test_parse_atoms_and_quantifiers():
    s0 = Succ(Zero())
    assert parse_formula("(= (s 0) (s 0))") == Eq(s0, s0)
    x, y = Var("x"), Var("y")
    assert parse_formula("(forall x (exists y (= y x)))") == Forall("x", Exists("y", Eq(y, x)))


def test_syntax_error_reports_offset():
    with pytest.raises(SExprError) as err:
        parse_formula("(= 0")
    assert err.value.offset == 4


def test_closed_flag_rejects_free_variables():
    with pytest.raises(UnboundVariableError):
        parse_formula("(= x 0)", closed=True)
    assert parse_formula("(= x 0)") == Eq(Var("x"), Zero())


def test_classify_examples():
    assert classify(Eq(Zero(), Zero())) is SentenceClass.DELTA0
    phi = Exists("x", ForallLt("y", Var("x"), Eq(Var("y"), Var("y"))))
    assert classify(phi) is SentenceClass.PRETTY_SIGMA1
    assert classify(Forall("x", Exists("y", Eq(Var("y"), Var("x"))))) is SentenceClass.OTHER
    assert classify(Forall("x", Eq(Plus(Var("x"), Zero()), Var("x")))) is SentenceClass.UNIVERSAL_PI1


def test_classify_rejects_open_formulas():
    with pytest.raises(ValueError):
        classify(Eq(Var("x"), Zero()))


def test_eval_truth_examples():
    assert eval_truth(Eq(numeral(4), Plus(numeral(2), numeral(2)))) is TruthVerdict.TRUE
    nine = Exists("x", Eq(Times(Var("x"), Var("x")), numeral(9)))
    assert eval_truth(nine, budget=10) is TruthVerdict.TRUE
    assert eval_truth(nine, budget=3) is TruthVerdict.UNKNOWN
    assert eval_truth(Forall("x", Eq(Times(Zero(), Var("x")), Zero())), budget=50) is TruthVerdict.UNKNOWN
    assert eval_truth(Forall("x", Eq(Var("x"), Zero()))) is TruthVerdict.FALSE


def test_substitute_examples():
    x = Var("x")
    assert substitute(Eq(x, Zero()), "x", 0) == Eq(numeral(0), Zero())
    closed = Forall("x", Eq(x, x))
    assert substitute(closed, "x", 3) == closed
    assert substitute(Exists("y", Eq(Var("y"), x)), "x", 2) == Exists("y", Eq(Var("y"), numeral(2)))


def test_class_error_is_a_value_error():
    assert issubclass(ClassError, ValueError)


@given(delta0_sentences)
@settings(max_examples=200, deadline=None)
def test_print_parse_round_trip(phi):
    assert parse_formula(print_formula(phi)) == phi


@given(delta0_sentences)
@settings(max_examples=200, deadline=None)
def test_delta0_truth_is_always_decided(phi):
    assert not free_vars(phi)
    assert classify(phi) is SentenceClass.DELTA0
    assert eval_truth(phi) is not TruthVerdict.UNKNOWN
