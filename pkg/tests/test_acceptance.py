"""Acceptance criteria 1 to 12, each asserted at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the
terminal summary.  Runnable directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from acceptance_log import record
from randreal.bigreal import (
    CO_INTERVAL_FREE_FAMILIES,
    Exhausted,
    FamilyKind,
    Undecided,
    bounded_exhaustive_search,
    check_F,
    encode_for_positive_measure,
    translate_PF,
    translate_PF_inv,
)
from randreal.dyadic import ONE, ZERO, DyadicRational
from randreal.formula import And, ExistsLt, ForallLt, Imp, Not, Or, Var, classify, SentenceClass, eval_truth, TruthVerdict, holds, instance
from randreal.logic import (
    HAAxiom,
    Induction,
    delta0_induction_realiser,
    extract,
    ha_minus_realiser,
    induction_counterexample,
    lem_instance,
    lem_realiser,
    verify,
)
from randreal.logic.corpus import corpus
from randreal.machine import Value, apply, encode
from randreal.machine import named as N
from randreal.machine.cylinder import FULL, Cylinder, cylinder_run
from randreal.machine.prelude import ANY, n_add, n_mul, pair_code
from randreal.mu import check_mu, check_O, measure_C, translate_Pmu, translate_Pmu_inv
from randreal.mu.cor36 import (
    cor36_and_pair,
    cor36_and_split,
    cor36_exists_extract,
    cor36_forall_instance,
    cor36_imp_apply,
    cor36_or_extract,
    cor36_or_inject,
)
from randreal.mu.diagonal import diagonal_realiser, diagonal_sentence
from randreal.mu.fixtures import TRUE_OR, pushup_fixtures
from randreal.mu.pushup import push_up
from randreal.realisability import CheckCtx, check_classical, synth_pi1, synth_sigma1
from randreal.realisability.compile import delta0_realiser
from suites import F_SUITE, POSITIVE_FALSE, POSITIVE_TRUE, SIGMA_PI

CTX = CheckCtx()


def _classical(phi):
    if classify(phi) is SentenceClass.UNIVERSAL_PI1:
        return synth_pi1(phi)
    return synth_sigma1(phi, CTX.fuel)


# ---------------------------------------------------------------- 1


def _prefix_test(bits: tuple[int, ...]) -> int:
    """``λx.`` 0 when the oracle starts with ``bits``, else 1."""
    expr: N.NTerm = N.num(0)
    for i in reversed(range(len(bits))):
        hit, miss = (expr, N.num(1)) if bits[i] == 0 else (N.num(1), expr)
        expr = N.ifz(N.oracle(N.num(i)), hit, miss)
    body = N.lam("%x", N.ifz(N.var("%x"), expr, N.num(ANY)))
    return encode(N.compile_named(body))


def _reads_ten() -> int:
    """``λx.`` reads oracle bits 0 to 9, then behaves as ``_prefix_test(())``."""
    expr: N.NTerm = N.num(0)
    for i in reversed(range(10)):
        expr = N.ifz(N.oracle(N.num(i)), expr, expr)
    return encode(N.compile_named(N.lam("%x", N.ifz(N.var("%x"), expr, N.num(ANY)))))


def _prefix_measures(regions) -> dict[tuple[int, ...], DyadicRational]:
    """Measure of every ``N_s`` summed over the finer prefix regions of a partition."""
    out: dict[tuple[int, ...], DyadicRational] = {}
    for region in regions:
        assert region.is_prefix()
        bits = tuple(region.get(i) for i in range(len(region)))
        for n in range(len(bits) + 1):
            out[bits[:n]] = out.get(bits[:n], ZERO) + region.measure()
    return out


def test_criterion_1_cylinder_measure():
    start = time.perf_counter()
    regions = [c for c, _ in cylinder_run(_reads_ten(), 0, FULL, CTX.fuel, CTX.depth)]
    assert len(regions) == 1024
    engine = _prefix_measures(regions)
    bad = []
    for n in range(11):
        for bits in itertools.product((0, 1), repeat=n):
            cyl, want = Cylinder.prefix(bits), DyadicRational.pow2(n)
            if cyl.measure() != want or engine.get(bits) != want:
                bad.append(bits)
            elif n <= 5:
                # the set of oracles extending ``bits`` as a realiser's success set
                iv = measure_C(_prefix_test(bits), TRUE_OR, CTX)
                if not (iv.exact and iv.lo == want):
                    bad.append(bits)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    record(1, ok, f"2047 prefixes, {len(bad)} mismatches, {elapsed:.2f}s (limit 1s)")
    assert not bad
    assert elapsed < 1.0


# ---------------------------------------------------------------- 2


def test_criterion_2_truncated_diagonal():
    start = time.perf_counter()
    ctx = CheckCtx(fuel=10_000, depth=16)
    iv = measure_C(diagonal_realiser("diag4"), diagonal_sentence(4, "diag4"), ctx)
    elapsed = time.perf_counter() - start
    bound = DyadicRational(315, 10)
    ok = iv.lo >= bound and elapsed < 60
    record(2, ok, f"lo={iv.lo} (need >= 315/1024), {elapsed:.2f}s")
    assert iv.lo >= bound
    assert elapsed < 60


# ---------------------------------------------------------------- 3


def test_criterion_3_induction_decay():
    start = time.perf_counter()
    rows = []
    for n in range(6):
        c = induction_counterexample(n, "mixed")
        iv = measure_C(c.realiser, c.formula, CTX)
        step = check_mu(c.step_realiser, c.step, None, c.step_ctx(CTX))
        rows.append(iv.exact and iv.lo == DyadicRational.pow2(n) and step.realised)
    elapsed = time.perf_counter() - start
    ok = all(rows) and elapsed < 30
    record(3, ok, f"{sum(rows)}/6 exact 2^-n with MuRealised step, {elapsed:.2f}s")
    assert all(rows)
    assert elapsed < 30


# ---------------------------------------------------------------- 4


def test_criterion_4_classical_mu_round_trip():
    good = 0
    for phi in SIGMA_PI:
        p = _classical(phi)
        q = translate_Pmu(p, phi)
        iv = measure_C(q, phi, CTX)
        back = translate_Pmu_inv(q, phi, CTX)
        if iv.lo == ONE and iv.hi == ONE and isinstance(back, int) and check_classical(back, phi, CTX).realised:
            good += 1
    record(4, good == 20, f"{good}/20 sentences with [1,1] and classical re-check")
    assert len(SIGMA_PI) == 20
    assert good == 20


# ---------------------------------------------------------------- 5


def test_criterion_5_extraction_corpus():
    proofs = corpus()
    good = sum(verify(extract(t), CTX).realised for t in proofs.values())
    ok = len(proofs) >= 10 and good == len(proofs)
    record(5, ok, f"{good}/{len(proofs)} extracted realisers MuRealised")
    assert len(proofs) >= 10
    assert good == len(proofs)


# ---------------------------------------------------------------- 6


INDUCTION_BODIES = [
    "(= (+ x 0) x)",
    "(= x x)",
    "(= (* x 0) 0)",
    "(or (= x 0) (exists-lt y x (= (s y) x)))",
    "(imp (= (s x) 0) bot)",
]


def test_criterion_6_ha_minus_and_induction():
    from randreal.formula import parse_formula

    ctx = CheckCtx(forall_budget=8)
    axioms = [check_mu(ha_minus_realiser(a), a.formula, ONE, ctx).realised for a in HAAxiom]
    inductions = []
    for text in INDUCTION_BODIES:
        ind = Induction(parse_formula(text))
        inductions.append(check_mu(delta0_induction_realiser(ind), ind.formula, ONE, ctx).realised)
    ok = all(axioms) and all(inductions) and len(inductions) == 5
    record(6, ok, f"HA⁻ {sum(axioms)}/{len(axioms)}, induction {sum(inductions)}/5 at r=1, n<8")
    assert all(axioms)
    assert all(inductions)


# ---------------------------------------------------------------- 7


def test_criterion_7_push_up():
    target = DyadicRational(15, 4)
    fixtures = pushup_fixtures()
    good = 0
    for fx in fixtures:
        iv = measure_C(fx.code, fx.formula, CTX)
        assert DyadicRational(1, 3) <= iv.lo <= DyadicRational(1, 1) and iv.exact
        res = push_up(fx.code, fx.formula, target, CTX)
        if res.found and measure_C(res.code, fx.formula, CTX).lo > target:
            good += 1
    record(7, good == 10 and len(fixtures) == 10, f"{good}/{len(fixtures)} fixtures pushed above 15/16")
    assert len(fixtures) == 10
    assert good == 10


# ---------------------------------------------------------------- 8


def _fixture_universe():
    sentences = list(SIGMA_PI) + list(F_SUITE) + list(POSITIVE_TRUE) + list(POSITIVE_FALSE)
    sentences += [a.formula for a in HAAxiom]
    sentences += [induction_counterexample(n, "mixed").formula for n in range(4)]
    sentences += [lem_instance(k, "mixed") for k in range(4)] + [lem_instance(None, "enum")]
    sentences += [fx.formula for fx in pushup_fixtures()]
    sentences = list(dict.fromkeys(sentences))
    codes = {ANY, 0, 1, 2, 3, 42, 255, 1023}
    codes |= {fx.code for fx in pushup_fixtures()}
    for phi in sentences:
        if classify(phi) is not SentenceClass.OTHER and eval_truth(phi) is not TruthVerdict.FALSE:
            p = _classical(phi)
            if isinstance(p, int):
                codes |= {p, translate_Pmu(p, phi)}
    return sentences, sorted(codes)


def test_criterion_8_consistency_sweep():
    sentences, codes = _fixture_universe()
    clashes, realised = [], 0
    for phi in sentences:
        yes = [p for p in codes if check_mu(p, phi, None, CTX).realised]
        no = [q for q in codes if check_mu(q, Not(phi), None, CTX).realised]
        realised += len(yes) + len(no)
        if yes and no:
            clashes.append((phi, yes[0], no[0]))
    record(8, not clashes, f"{len(sentences)} sentences x {len(codes)} codes, {realised} realised verdicts, {len(clashes)} clashes")
    assert not clashes


# ---------------------------------------------------------------- 9


def _random_delta0(rng: random.Random, depth: int = 2):
    from randreal.formula import Bot, Eq, numeral

    def atom():
        a, b = rng.randrange(4), rng.randrange(4)
        return Bot() if rng.random() < 0.1 else Eq(numeral(a), numeral(b))

    if depth == 0 or rng.random() < 0.3:
        return atom()
    kind = rng.randrange(3)
    left, right = _random_delta0(rng, depth - 1), _random_delta0(rng, depth - 1)
    return (And, Or, Imp)[kind](left, right)


def _realiser(phi):
    return translate_Pmu(delta0_realiser(phi), phi) if holds(phi) else ANY


def _measure(p, phi):
    iv = measure_C(p, phi, CTX)
    assert iv.exact, f"inexact measure for {phi}"
    return iv.lo


def _cor36_instance(rng: random.Random) -> list[str]:
    """Check every constructor and extractor on one fuzzed compound; returns violations."""
    bad = []
    a, b = _random_delta0(rng), _random_delta0(rng)
    s, q = _realiser(a), _realiser(b)
    ma, mb = _measure(s, a), _measure(q, b)
    # ∧: pairing multiplies the independent measures, splitting recovers them
    conj = And(a, b)
    paired = cor36_and_pair(s, q)
    if _measure(paired, conj) != ma * mb:
        bad.append(f"and_pair {conj}")
    left, right = cor36_and_split(paired)
    if _measure(left, a) != ma or _measure(right, b) != mb:
        bad.append(f"and_split {conj}")
    # ∨: injection preserves the measure of the chosen side, extraction finds it again
    i = rng.randrange(2)
    disj = Or(a, b)
    injected = cor36_or_inject(i, s if i == 0 else q)
    m = _measure(injected, disj)
    if m != (ma if i == 0 else mb):
        bad.append(f"or_inject {disj}")
    if m > ZERO:
        j, part = cor36_or_extract(injected, disj, CTX)
        if j != i or _measure(part, a if i == 0 else b) == ZERO:
            bad.append(f"or_extract {disj}")
    # →: applying a realiser of the implication to a realiser of the antecedent
    imp = Imp(a, b)
    if holds(imp) and holds(a):
        r = _realiser(imp)
        if _measure(r, imp) != ONE or _measure(cor36_imp_apply(r, s, imp, CTX), b) != ONE:
            bad.append(f"imp_apply {imp}")
    # ∃ below a bound: the witness found is a real witness
    n = rng.randrange(3)
    ex = ExistsLt("x", _num(3), Or(_eq_var(n), b))
    if holds(ex):
        r = _realiser(ex)
        w, body = cor36_exists_extract(r, ex, CTX)
        if _measure(r, ex) != ONE or _measure(body, instance(ex, w)) != ONE:
            bad.append(f"exists_extract {ex}")
    # ∀ below a bound: every instance is realised with probability 1
    fa = ForallLt("x", _num(2), Or(b, a))
    if holds(fa):
        r = _realiser(fa)
        if any(_measure(cor36_forall_instance(r, k), instance(fa, k)) != ONE for k in range(2)):
            bad.append(f"forall_instance {fa}")
    # probability-1 closure
    if ma == ONE and mb == ONE and _measure(cor36_and_pair(s, q), conj) != ONE:
        bad.append(f"closure {conj}")
    return bad


def _num(n):
    from randreal.formula import numeral

    return numeral(n)


def _eq_var(n):
    from randreal.formula import Eq

    return Eq(Var("x"), _num(n))


def test_criterion_9_cor36_suite():
    rng = random.Random(20240601)
    violations = []
    for _ in range(200):
        violations += _cor36_instance(rng)
    # the oracle-dependent side: pairing pushes both inputs above 3/4 first
    fx = pushup_fixtures()
    for f, g in itertools.combinations(fx[:4], 2):
        p = cor36_and_pair(f.code, g.code, f.formula, g.formula, CTX)
        if not measure_C(p, And(f.formula, g.formula), CTX).lo > DyadicRational(1, 1):
            violations.append(f"boosted and_pair {f.name} {g.name}")
    record(9, not violations, f"200 fuzzed compounds + 6 boosted pairs, {len(violations)} violations")
    assert not violations, violations[:5]


# ---------------------------------------------------------------- 10


def _random_program(rng: random.Random, depth: int = 3) -> N.NTerm:
    """A program on input ``%x`` whose value does not depend on the oracle."""
    x = N.var("%x")
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([x, N.num(rng.randrange(6))])
    sub = lambda: _random_program(rng, depth - 1)  # noqa: E731
    kind = rng.randrange(7)
    if kind == 0:
        return N.succ(sub())
    if kind == 1:
        return N.pred(sub())
    if kind == 2:
        return N.ifz(sub(), sub(), sub())
    if kind == 3:
        return n_add(sub(), sub())
    if kind == 4:
        return n_mul(sub(), N.num(rng.randrange(3)))
    # reads a bit but both branches agree
    e = sub()
    return N.ifz(N.oracle(N.num(rng.randrange(4))), e, e) if kind == 5 else N.let("%y", N.oracle(N.num(rng.randrange(3))), e)


def _bes_instance(rng: random.Random) -> str | None:
    p = encode(N.compile_named(N.lam("%x", _random_program(rng))))
    n = rng.randrange(4)
    ref = apply(p, n, lambda i: 0, 10_000)
    assert isinstance(ref, Value)
    found = bounded_exhaustive_search(p, n, 10_000)
    if isinstance(found, Exhausted):
        return f"exhausted {p}"
    extent = max(ref.read_log, default=-1) + 1
    if found.value != ref.value or found.k > ref.fuel_used + extent or found.interval_sensitive:
        return f"mismatch {p} on {n}"
    return None


def test_criterion_10_bes_and_big_set_round_trip():
    rng = random.Random(7)
    bes_bad = [msg for msg in (_bes_instance(rng) for _ in range(200)) if msg]
    trip_bad = []
    for phi in F_SUITE:
        p = _classical(phi)
        assert check_classical(p, phi, CTX).realised
        f = translate_PF(p, phi)
        for fam in CO_INTERVAL_FREE_FAMILIES:
            if not check_F(f, phi, fam, CTX).realised:
                trip_bad.append(f"{fam.value} {phi}")
        back = translate_PF_inv(f, phi)
        if not check_classical(back, phi, CTX).realised:
            trip_bad.append(f"inverse {phi}")
    ok = not bes_bad and not trip_bad and len(F_SUITE) == 20
    record(10, ok, f"BES {200 - len(bes_bad)}/200 agree; F round trip {len(trip_bad)} failures over 20 x 3 families")
    assert not bes_bad, bes_bad[:5]
    assert not trip_bad, trip_bad[:5]


# ---------------------------------------------------------------- 11


def test_criterion_11_positive_measure():
    problems = []
    for phi in POSITIVE_TRUE:
        enc = encode_for_positive_measure(phi)
        res = check_F(enc.reader, phi, FamilyKind.POSITIVE_MEASURE, CTX, enc.cylinder)
        want = DyadicRational.pow2(len(enc.tape))
        if not res.realised or res.certificate.absolute_lo < want:
            problems.append(f"true {phi}")
    candidates = [ANY, 0, 42, pair_code(0, ANY), pair_code(1, ANY), pair_code(ANY, 2)]
    candidates += [encode_for_positive_measure(t).reader for t in POSITIVE_TRUE]
    for phi in POSITIVE_FALSE:
        try:
            encode_for_positive_measure(phi)
            problems.append(f"encoded false {phi}")
        except Undecided:
            pass
        for c in candidates:
            if check_O(c, phi, FULL, CTX).interval.hi != ZERO:
                problems.append(f"hi>0 for {c} on {phi}")
    total = len(POSITIVE_TRUE) + len(POSITIVE_FALSE)
    record(11, not problems and total == 20, f"{total} sentences, {len(candidates)} false candidates each, {len(problems)} problems")
    assert total == 20
    assert not problems, problems[:5]


# ---------------------------------------------------------------- 12


def test_criterion_12_refutation_harness():
    sentences = {"diagonal": diagonal_sentence(None, "enum"), "lem": lem_instance(None, "enum")}
    false_realised = []
    for name, phi in sentences.items():
        for p in range(1 << 10):
            if check_classical(p, phi, CTX).realised:
                false_realised.append((name, "classical", p))
            if name == "lem" and check_mu(p, phi, None, CTX).realised:
                false_realised.append((name, "mu", p))
    # the per-instance realisers do exist
    instances = [lem_realiser(k, "mixed", CTX.fuel) for k in range(4)]
    assert all(check_mu(c, lem_instance(k, "mixed"), None, CTX).realised for k, c in enumerate(instances))
    record(12, not false_realised, f"2 sentences x 1024 candidates, {len(false_realised)} false Realised verdicts")
    assert not false_realised


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
