"""Classical Kleene realisability: checking and synthesis."""

from __future__ import annotations

from .certify import certified_false, certified_true
from .classical import TruthReport, check_classical, classical_witnesses, truth_iff_realised
from .context import CheckCtx, Provenance, Witness, WitnessDB
from .synth import synth_pi1, synth_sigma1
from .verdict import BOUNDED, VACUOUS, WITNESS_RELATIVE, Status, Verdict3

__all__ = [
    "BOUNDED", "VACUOUS", "WITNESS_RELATIVE", "CheckCtx", "Provenance", "Status", "TruthReport",
    "Verdict3", "Witness", "WitnessDB", "certified_false", "certified_true", "check_classical",
    "classical_witnesses", "synth_pi1", "synth_sigma1", "truth_iff_realised",
]
