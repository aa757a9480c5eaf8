"""Exact computations in Weyl-type algebras, skew Laurent series and
pseudo-differential operator rings: normal forms, windowed series
arithmetic, centralizers and bounded Dixmier-class verdicts."""

from .classify import ClassificationReport, DixmierClass, classify, eigen_search, nil_space, torsion_component
from .centralizer import CentralizerWitness, centralize_deg0, centralize_posdeg, centre_probe, check_ccc_pair
from .embed import EmbeddingSpec, casimir, catalogue, embed_element, verify_relations
from .field import FieldEndo, RatFunc
from .parser import elaborate, parse, parse_element, parse_poly, to_text
from .series import TruncatedSeries, commutator, ring_A, ring_B, ring_C, ring_E, ring_R, series_inv, series_mul
from .weyl import WEYL, Polynomial1V, WeylLikeElement, mul, quantum_plane, quantum_weyl

__version__ = "0.1.0"

__all__ = [
    "CentralizerWitness", "ClassificationReport", "DixmierClass", "EmbeddingSpec", "FieldEndo",
    "Polynomial1V", "RatFunc", "TruncatedSeries", "WEYL", "WeylLikeElement", "casimir", "catalogue",
    "centralize_deg0", "centralize_posdeg", "centre_probe", "check_ccc_pair", "classify", "commutator",
    "eigen_search", "elaborate", "embed_element", "mul", "nil_space", "parse", "parse_element",
    "parse_poly", "quantum_plane", "quantum_weyl", "ring_A", "ring_B", "ring_C", "ring_E", "ring_R",
    "series_inv", "series_mul", "to_text", "torsion_component", "verify_relations",
]
