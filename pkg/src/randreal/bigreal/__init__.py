"""Realisability relative to families of big oracle sets."""

from __future__ import annotations

from .family import CO_INTERVAL_FREE_FAMILIES, FamilyKind, FCertificate, FResult, check_F
from .positive import PositiveEncoding, Undecided, encode_for_positive_measure, reader
from .search import Exhausted, Found, bounded_exhaustive_search
from .translate import SearchExhausted, translate_PF, translate_PF_inv
