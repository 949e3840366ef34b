"""Squared-cycle Turán toolkit: constructions, containment, spectra and search."""

from __future__ import annotations

from .canon import CanonicalForm, canonical_form, canonize
from .coloring import ColoringCertificate, GoodPartition, chromatic_number
from .detector import SquaredCycleEmbedding, contains_squared_cycle, is_free
from .errors import BudgetExceeded, CheckFailure, NonConvergence, ParameterError
from .graph import Graph, GraphFamilySpec, build, cycle_square, gn, turan
from .matching import Matching, matching_number, max_matching
from .prooflab import LemmaReport, TriPartition, lemma_audit, max_cross_tripartition
from .search import SearchReport, exhaustive_extremal, hillclimb_extremal, theorem_consistency
from .spectral import SpectralResult, spectral_radius

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CanonicalForm", "CheckFailure", "ColoringCertificate", "GoodPartition",
    "Graph", "GraphFamilySpec", "LemmaReport", "Matching", "NonConvergence", "ParameterError",
    "SearchReport", "SpectralResult", "SquaredCycleEmbedding", "TriPartition", "build",
    "canonical_form", "canonize", "chromatic_number", "contains_squared_cycle", "cycle_square",
    "exhaustive_extremal", "gn", "hillclimb_extremal", "is_free", "lemma_audit", "matching_number",
    "max_cross_tripartition", "max_matching", "spectral_radius", "theorem_consistency", "turan",
]
