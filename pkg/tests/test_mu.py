from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from randreal.dyadic import ONE, ZERO, DyadicRational
from randreal.formula import And, Bot, Eq, Forall, Imp, Plus, Var, Zero, holds, numeral, parse_formula
from randreal.machine import encode
from randreal.machine import named as N
from randreal.machine.cylinder import FULL, Cylinder
from randreal.machine.prelude import ANY, pair_code
from randreal.mu import (
    Exactness,
    MeasureReport,
    MuStatus,
    Region,
    check_mu,
    check_O,
    measure_C,
    translate_Pmu,
    translate_Pmu_inv,
    vacuous_negation,
)
from randreal.mu.cor36 import cor36_and_pair, cor36_forall_instance, cor36_or_extract
from randreal.mu.diagonal import diagonal_bound, diagonal_realiser, diagonal_sentence
from randreal.mu.fixtures import TRUE_OR, or_pair_demo, pushup_fixtures
from randreal.mu.pushup import push_up
from randreal.realisability import CheckCtx, check_classical, synth_pi1, synth_sigma1
from randreal.realisability.compile import delta0_realiser
from suites import delta0_sentences

CTX = CheckCtx()
TOP = Eq(Zero(), Zero())
HALF = DyadicRational(1, 1)


def test_trivial_reports():
    iv = measure_C(ANY, TOP, CTX)
    assert (iv.lo, iv.hi, iv.exactness) == (ONE, ONE, Exactness.EXACT)
    assert measure_C(ANY, Bot(), CTX).hi == ZERO
    assert check_mu(ANY, Bot(), HALF, CTX).status is MuStatus.REFUTED
    assert check_mu(ANY, TOP, ONE, CTX).realised


def test_disjunction_bit_example():
    fx = or_pair_demo()
    report = check_O(fx.code, TRUE_OR, FULL, CTX)
    assert [(c.pattern(), v) for c, v in report.partition] == [("0", Region.YES), ("1", Region.NO)]
    assert report.interval.lo == report.interval.hi == HALF
    assert check_mu(fx.code, TRUE_OR, HALF, CTX).realised
    assert check_mu(fx.code, TRUE_OR, DyadicRational(3, 2), CTX).refuted


def test_check_mu_rejects_bad_r():
    with pytest.raises(ValueError):
        check_mu(ANY, TOP, ZERO, CTX)


def test_report_text_round_trip():
    for fx in pushup_fixtures():
        report = check_O(fx.code, fx.formula, FULL, CTX)
        again = MeasureReport.from_text(report.to_text())
        assert again.partition == report.partition
        assert again.interval == report.interval
        assert again.to_text() == report.to_text()


def test_report_partitions_the_queried_cylinder():
    for fx in pushup_fixtures():
        for cyl in (FULL, Cylinder.prefix((1,)), Cylinder.prefix((0, 1))):
            report = check_O(fx.code, fx.formula, cyl, CTX)
            total = sum((c.measure() for c, _ in report.partition), ZERO)
            assert total == cyl.measure()
            assert all(c.refines(cyl) for c, _ in report.partition)
            yes = report.measure_of(Region.YES)
            assert report.interval.lo == yes


def test_fixture_measures_match_monte_carlo():
    rng = random.Random(3)
    for fx in pushup_fixtures()[:4]:
        iv = measure_C(fx.code, fx.formula, CTX)
        report = check_O(fx.code, fx.formula, FULL, CTX)
        yes = report.yes_regions()
        hits = 0
        samples = 10_000
        for _ in range(samples):
            u = {i: rng.randrange(2) for i in range(8)}
            hits += any(all(u[i] == b for i, b in c.constraints) for c in yes)
        p = float(iv.lo)
        sigma = (p * (1 - p) / samples) ** 0.5
        assert abs(hits / samples - p) <= 3 * sigma + 1e-9


def test_push_up_examples():
    # realises exactly on u(0)=1
    p = encode(N.compile_named(N.lam("%x", N.ifz(N.var("%x"), N.ifz(N.oracle(N.num(0)), N.num(1), N.num(0)), N.num(ANY)))))
    res = push_up(p, TRUE_OR, DyadicRational(3, 2), CTX)
    assert res.found and res.prefix == (1,)
    assert measure_C(res.code, TRUE_OR, CTX).lo == ONE
    assert not push_up(ANY, Bot(), DyadicRational(3, 2), CTX).found
    full = push_up(ANY, TOP, DyadicRational(3, 2), CTX)
    assert full.found and measure_C(full.code, TOP, CTX).lo == ONE


def test_push_up_rejects_bad_targets():
    with pytest.raises(ValueError):
        push_up(ANY, TOP, ONE, CTX)


def test_translate_Pmu_on_atoms_is_identity():
    assert translate_Pmu(123, TOP) == 123
    assert translate_Pmu_inv(123, TOP, CTX) == 123


def test_translate_round_trip_on_conjunction():
    phi = And(TOP, Eq(numeral(1), numeral(1)))
    p = synth_sigma1(phi)
    q = translate_Pmu(p, phi)
    assert measure_C(q, phi, CTX).lo == ONE
    assert check_classical(translate_Pmu_inv(q, phi, CTX), phi, CTX).realised


def test_translate_universal_instances():
    phi = Forall("x", Eq(Plus(Var("x"), Zero()), Var("x")))
    q = translate_Pmu(synth_pi1(phi), phi)
    iv = measure_C(q, phi, CTX)
    assert iv.lo == iv.hi == ONE and iv.exactness is Exactness.BOUNDED_UNIVERSAL
    three = Eq(Plus(numeral(3), Zero()), numeral(3))
    assert measure_C(cor36_forall_instance(q, 3), three, CTX).lo == ONE


def test_vacuous_negation():
    false = Eq(Zero(), numeral(1))
    cert = vacuous_negation(false, CTX)
    assert cert.certified
    assert check_mu(987, Imp(false, Bot()), ONE, cert.ctx).realised
    assert not vacuous_negation(parse_formula("(exists x (= (s x) 0))"), CTX).certified
    assert vacuous_negation(parse_formula("(forall x (= x 0))"), CTX).certified


def test_cor36_examples():
    one = Eq(numeral(1), numeral(1))
    paired = cor36_and_pair(ANY, ANY, TOP, one, CTX)
    assert check_mu(paired, And(TOP, one), None, CTX).realised
    i, q = cor36_or_extract(or_pair_demo().code, TRUE_OR, CTX)
    assert i == 0 and check_mu(q, TOP, ONE, CTX).realised


def test_diagonal_examples():
    assert diagonal_bound(4) == DyadicRational(315, 10)
    one = measure_C(diagonal_realiser("diag1-loop"), diagonal_sentence(1, "diag1-loop"), CTX)
    assert one.lo >= HALF
    four = measure_C(diagonal_realiser("diag4"), diagonal_sentence(4, "diag4"), CTX)
    assert four.lo >= diagonal_bound(4)


@given(delta0_sentences)
@settings(max_examples=100, deadline=None)
def test_probability_one_for_translated_delta0(phi):
    if holds(phi):
        q = translate_Pmu(delta0_realiser(phi), phi)
        assert measure_C(q, phi, CTX).lo == ONE
    else:
        assert measure_C(pair_code(ANY, ANY), phi, CTX).lo == ZERO
