"""Fixed sentence suites and fuzz strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from randreal.formula import (
    And,
    Bot,
    Eq,
    ExistsLt,
    ForallLt,
    Formula,
    Imp,
    Or,
    Plus,
    Succ,
    Times,
    Var,
    Zero,
    numeral,
    parse_formula,
)


def _parse(lines: str) -> list[Formula]:
    return [parse_formula(line, closed=True) for line in lines.strip().splitlines()]


# true pretty Σ₁ and universal Π₁ sentences
SIGMA_PI = _parse("""
(= 0 0)
(= (+ (s (s 0)) (s (s 0))) (s (s (s (s 0)))))
(and (= 0 0) (= (s 0) (s 0)))
(or (= 0 (s 0)) (= 0 0))
(exists x (= x (s (s 0))))
(exists x (= (* x x) 9))
(exists x (exists y (= (+ x y) 3)))
(exists-lt x 4 (= (s x) 3))
(forall-lt x 3 (exists-lt y 4 (= y (s x))))
(exists x (forall-lt y x (= y y)))
(imp (= 0 (s 0)) bot)
(imp (= 0 0) (= (s 0) (s 0)))
(forall x (= (+ x 0) x))
(forall x (= (* x 0) 0))
(forall x (imp (= (s x) 0) bot))
(forall x (forall y (= (+ x y) (+ y x))))
(forall x (or (= x 0) (exists-lt y x (= (s y) x))))
(forall x (exists-lt y (s x) (= y x)))
(exists x (and (= (+ x x) 4) (= (* x x) 4)))
(exists x (exists-lt y 3 (= (+ x y) 4)))
""")

# Δ₀ and unbounded ∃ sentences, all true, for the big-set round trip
F_SUITE = _parse("""
(= 0 0)
(= (* 2 3) 6)
(and (= 1 1) (= 2 2))
(or (= 0 1) (= 1 1))
(or (= 0 0) (= 0 1))
(exists x (= x 2))
(exists x (= (+ x x) 6))
(exists x (exists y (= (* x y) 6)))
(exists-lt x 5 (= x 3))
(forall-lt x 3 (= (+ x 0) x))
(forall-lt x 2 (or (= x 0) (= x 1)))
(exists x (and (= x 1) (or (= 1 0) (= 0 0))))
(imp (= 0 1) bot)
(exists x (imp (= 0 0) (= x 1)))
(exists x (and (= x 3) (forall-lt y x (= y y))))
(exists-lt x 3 (exists-lt y 3 (= (+ x y) 4)))
(exists x (or (exists-lt y 2 (= y 5)) (= (s x) 4)))
(and (= (s 0) 1) (forall-lt x 2 (exists-lt y 3 (= y (s x)))))
(imp (and (= 0 0) (= 1 1)) (= 2 2))
(exists x (or (= x 9) (= x 4)))
""")

# mixed truth values for the positive-measure encoding
POSITIVE_TRUE = _parse("""
(= 0 0)
(or (= 0 1) (= 1 1))
(exists x (= x 2))
(and (= 1 1) (exists x (= (s x) 3)))
(exists-lt x 4 (= (* x x) 4))
(forall-lt x 2 (or (= x 0) (= x 1)))
(imp (= 0 1) bot)
(imp (= 0 0) (or (= 1 0) (= 1 1)))
(exists x (exists y (= (+ x y) 1)))
(or (exists x (= x 1)) (= 0 1))
""")
POSITIVE_FALSE = _parse("""
(= 0 1)
bot
(and (= 0 0) (= 0 1))
(or (= 0 1) (= 1 2))
(exists-lt x 3 (= x 5))
(forall-lt x 3 (= x 0))
(imp (= 0 0) (= 0 1))
(and (exists-lt x 2 (= x 1)) bot)
(exists-lt x 4 (= (* x x) 5))
(or bot (and (= 1 1) (= 1 0)))
""")

# ---------------------------------------------------------------- fuzzing

_ALL_VARS = ("x", "y")


def terms(scope: tuple[str, ...], small: bool = True) -> st.SearchStrategy:
    leaves = [st.integers(0, 4).map(numeral)] + [st.just(Var(v)) for v in scope]
    base = st.one_of(*leaves)
    if not small:
        return base
    return st.recursive(
        base,
        lambda t: st.one_of(
            t.map(Succ),
            st.builds(Plus, t, t),
            st.builds(Times, t, t),
        ),
        max_leaves=3,
    )


def delta0(scope: tuple[str, ...] = (), depth: int = 3) -> st.SearchStrategy:
    """Δ₀ formulas whose free variables lie in ``scope``."""
    atom = st.one_of(st.just(Bot()), st.builds(Eq, terms(scope), terms(scope)))
    if depth == 0:
        return atom
    sub = delta0(scope, depth - 1)
    fresh = next((v for v in _ALL_VARS if v not in scope), None)
    options = [
        atom,
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Imp, sub, sub),
    ]
    if fresh is not None:
        inner = delta0(scope + (fresh,), depth - 1)
        bound = st.integers(0, 3).map(numeral)
        options += [
            st.builds(lambda b, body: ExistsLt(fresh, b, body), bound, inner),
            st.builds(lambda b, body: ForallLt(fresh, b, body), bound, inner),
        ]
    return st.one_of(*options)


delta0_sentences = delta0()
ZERO_TERM = Zero()
