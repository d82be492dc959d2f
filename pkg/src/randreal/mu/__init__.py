"""μ-realisability: the oracle relation over cylinders, exact measures and constructions."""

from __future__ import annotations

from .check import check_mu, check_O, measure_C, mu_witnesses
from .report import Exactness, MeasureInterval, MeasureReport, MuStatus, MuVerdict, Region
from .translate import Certification, translate_Pmu, translate_Pmu_inv, vacuous_negation
from .wrap import EVEN_VIEW, ODD_VIEW, ZEROS_VIEW, View, ViewKind, prefix_view, relativise, wrap
