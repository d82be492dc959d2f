"""Intuitionistic Hilbert calculus, realiser extraction and arithmetic."""

from __future__ import annotations

from .arithmetic import (
    HAAxiom,
    Induction,
    InductionCounterexample,
    delta0_induction_realiser,
    ha_minus_realiser,
    induction_counterexample,
    induction_formula,
    lem_instance,
    lem_realiser,
)
from .extract import ExtractError, Extraction, extract, verify
from .proofs import (
    MP,
    Axiom,
    AxiomSchema,
    ExistsGen,
    ForallGen,
    ProofError,
    ProofTree,
    check_proof,
    parse_proof,
    print_proof,
)
